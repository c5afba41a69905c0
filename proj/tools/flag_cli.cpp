// Command-line surface over the library: exact transforms, wavelet analysis
// and synthesis, admissibility checks, Fourier-Bessel conversion, mock
// catalogs, and the void-finding pipeline.
//
// Every command prints a single machine-readable JSON summary line on
// success.  Exit codes: 0 success, 2 bad arguments, 3 input format error,
// 4 numerical-validation failure.

#include "flag/errors.hpp"
#include "flag/flag_transform.hpp"
#include "flag/flaglet_transform.hpp"
#include "flag/fourier_bessel.hpp"
#include "flag/io.hpp"
#include "flag/parallel.hpp"
#include "flag/tiling.hpp"
#include "flag/voidfinder.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>

using namespace flag;
using nlohmann::json;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void print_summary(json j)
{
    std::cout << j.dump() << "\n";
}

double max_abs_diff(std::span<const std::complex<double>> a,
                    std::span<const std::complex<double>> b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("reference has a different payload size");
    double err = 0;
    for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
    return err;
}

void dump_coefficients_json(const std::filesystem::path& path, const FlagCoefficients& c)
{
    json out;
    out["L"] = c.bandlimit.L;
    out["P"] = c.bandlimit.P;
    out["tau"] = c.bandlimit.tau;
    out["layout"] = "p * L^2 + l^2 + l + m";
    json values = json::array();
    for (const auto& v : c.values) values.push_back({v.real(), v.imag()});
    out["values"] = std::move(values);
    std::ofstream f(path);
    f << out.dump() << "\n";
    if (!f) throw io_error("write failed: " + path.string());
}

WaveletFamily family_from_flags(const BandLimit& bl, double lambda, double nu, int j0, int j0p)
{
    return WaveletFamily(bl, lambda, nu, j0, j0p);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact Fourier-Laguerre and flaglet transforms on the ball"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "cap worker threads (0 = all cores)");

    // ---- transform / inverse ----
    std::string in_path, out_path, ref_path, format = "binary";
    auto* transform = app.add_subcommand("transform", "forward transform of a sample container");
    transform->add_option("--input", in_path, "FLAG01 sample file")->required();
    transform->add_option("--output", out_path, "output coefficient file")->required();
    transform->add_option("--format", format, "binary|json")
        ->check(CLI::IsMember({"binary", "json"}));
    transform->add_option("--reference", ref_path, "coefficient file to diff against");

    auto* inverse = app.add_subcommand("inverse", "inverse transform of a coefficient file");
    inverse->add_option("--input", in_path, "FLAG01 coefficient file")->required();
    inverse->add_option("--output", out_path, "output sample file")->required();
    inverse->add_option("--reference", ref_path, "sample file to diff against");

    // ---- wavelets / synthesize ----
    double lambda = 2.0, nu = 2.0;
    int j0 = 0, j0p = 0;
    auto* wavelets = app.add_subcommand("wavelets", "flaglet analysis of a coefficient file");
    wavelets->add_option("--input", in_path)->required();
    wavelets->add_option("--output", out_path, "output directory")->required();
    wavelets->add_option("--lambda", lambda, "angular dilation (> 1)");
    wavelets->add_option("--nu", nu, "radial dilation (> 1)");
    wavelets->add_option("--j0", j0, "lowest angular scale");
    wavelets->add_option("--j0p", j0p, "lowest radial scale");

    auto* synthesize = app.add_subcommand("synthesize", "flaglet synthesis of a coefficient directory");
    synthesize->add_option("--input", in_path, "flaglet directory")->required();
    synthesize->add_option("--output", out_path, "output coefficient file")->required();

    // ---- admissibility ----
    int L = 0, P = 0;
    double tau = 1.0, max_residual = 1e-10;
    std::string export_dir;
    auto* admissibility = app.add_subcommand("admissibility", "build windows and check the identity");
    admissibility->add_option("--L", L)->required();
    admissibility->add_option("--P", P)->required();
    admissibility->add_option("--tau", tau);
    admissibility->add_option("--lambda", lambda);
    admissibility->add_option("--nu", nu);
    admissibility->add_option("--j0", j0);
    admissibility->add_option("--j0p", j0p);
    admissibility->add_option("--max-residual", max_residual, "fail threshold");
    admissibility->add_option("--export", export_dir, "write the windows to this directory");

    // ---- bessel ----
    double kmin = 0.1, kmax = 10.0;
    int nk = 32;
    auto* bessel = app.add_subcommand("bessel", "Fourier-Bessel coefficients of a coefficient file");
    bessel->add_option("--input", in_path)->required();
    bessel->add_option("--output", out_path, "manifest path (payload written alongside)")->required();
    bessel->add_option("--kmin", kmin);
    bessel->add_option("--kmax", kmax);
    bessel->add_option("--nk", nk, "number of log-spaced wavenumbers");

    // ---- mock ----
    std::int64_t n_galaxies = 100000;
    double R = 1.0;
    std::uint64_t seed = 1;
    std::vector<std::string> void_specs;
    auto* mock = app.add_subcommand("mock", "Poisson mock catalog with planted voids");
    mock->add_option("--n", n_galaxies, "expected galaxy count")->required();
    mock->add_option("--R", R, "survey radius");
    mock->add_option("--seed", seed)->required();
    mock->add_option("--output", out_path, "CSV path")->required();
    mock->add_option("--void", void_specs, "r,theta,phi,radius,depth (repeatable)");

    // ---- voids ----
    double threshold = 5.0;
    std::string slice_pgm;
    double slice_phi = 0.0;
    int slice_n = 256;
    auto* voids_cmd = app.add_subcommand("voids", "void candidates from a catalog");
    voids_cmd->add_option("--input", in_path, "catalog CSV")->required();
    voids_cmd->add_option("--output", out_path, "void catalog JSON")->required();
    voids_cmd->add_option("--L", L)->required();
    voids_cmd->add_option("--P", P)->required();
    voids_cmd->add_option("--R", R, "survey radius (tau = R / outermost node)");
    voids_cmd->add_option("--lambda", lambda);
    voids_cmd->add_option("--nu", nu);
    voids_cmd->add_option("--j0", j0);
    voids_cmd->add_option("--j0p", j0p);
    voids_cmd->add_option("--threshold", threshold, "detection threshold in sigma");
    voids_cmd->add_option("--slice-pgm", slice_pgm, "write a meridian slice of delta");
    voids_cmd->add_option("--slice-phi", slice_phi, "meridian plane longitude");
    voids_cmd->add_option("--slice-n", slice_n, "slice raster size");

    // ---- render ----
    int rj = 0, rjp = 0;
    double s = 0.0;
    std::string pgm_path;
    auto* render = app.add_subcommand("render", "translated flaglet sampled on the grid");
    render->add_option("--L", L)->required();
    render->add_option("--P", P)->required();
    render->add_option("--R", R, "ball radius (tau = R / outermost node)");
    render->add_option("--lambda", lambda);
    render->add_option("--nu", nu);
    render->add_option("--j0", j0);
    render->add_option("--j0p", j0p);
    render->add_option("--j", rj, "angular scale")->required();
    render->add_option("--jp", rjp, "radial scale")->required();
    render->add_option("--s", s, "radial translation");
    render->add_option("--output", out_path, "FLAG01 sample file")->required();
    render->add_option("--pgm", pgm_path, "meridian slice raster");
    render->add_option("--slice-n", slice_n, "slice raster size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    set_max_threads(threads);

    try {
        Timer timer;
        if (*transform) {
            auto [bl, samples] = read_samples(in_path);
            auto grid = make_ball_grid(bl);
            auto coeffs = flag_forward(samples, grid);
            if (format == "json")
                dump_coefficients_json(out_path, coeffs);
            else
                write_coefficients(out_path, coeffs);
            json summary{{"command", "transform"}, {"L", bl.L},   {"P", bl.P},
                         {"tau", bl.tau},          {"output", out_path},
                         {"seconds", timer.seconds()}};
            if (!ref_path.empty())
                summary["residual"] = max_abs_diff(coeffs.values, read_coefficients(ref_path).values);
            print_summary(summary);
        } else if (*inverse) {
            auto coeffs = read_coefficients(in_path);
            auto grid = make_ball_grid(coeffs.bandlimit);
            auto samples = flag_inverse(coeffs, grid);
            write_samples(out_path, coeffs.bandlimit, samples);
            json summary{{"command", "inverse"},
                         {"L", coeffs.bandlimit.L},
                         {"P", coeffs.bandlimit.P},
                         {"tau", coeffs.bandlimit.tau},
                         {"output", out_path},
                         {"seconds", timer.seconds()}};
            if (!ref_path.empty())
                summary["residual"] = max_abs_diff(samples, read_samples(ref_path).second);
            print_summary(summary);
        } else if (*wavelets) {
            auto f = read_coefficients(in_path);
            auto fam = family_from_flags(f.bandlimit, lambda, nu, j0, j0p);
            auto win = build_windows(fam);
            auto coeffs = flaglet_analysis(f, win);
            write_flaglet_dir(out_path, coeffs);
            print_summary({{"command", "wavelets"},
                           {"scales", fam.n_scales_j() * fam.n_scales_jp()},
                           {"admissibility_residual", win.admissibility_residual},
                           {"output", out_path},
                           {"seconds", timer.seconds()}});
        } else if (*synthesize) {
            auto coeffs = read_flaglet_dir(in_path);
            auto win = build_windows(coeffs.family);
            auto f = flaglet_synthesis(coeffs, win);
            write_coefficients(out_path, f);
            print_summary({{"command", "synthesize"},
                           {"L", f.bandlimit.L},
                           {"P", f.bandlimit.P},
                           {"output", out_path},
                           {"seconds", timer.seconds()}});
        } else if (*admissibility) {
            auto fam = family_from_flags(BandLimit(L, P, tau), lambda, nu, j0, j0p);
            auto win = build_windows(fam);
            json summary{{"command", "admissibility"},
                         {"L", L},
                         {"P", P},
                         {"J", fam.J},
                         {"Jp", fam.Jp},
                         {"max_residual", win.admissibility_residual},
                         {"seconds", timer.seconds()}};
            if (!export_dir.empty()) {
                write_windows(export_dir, win);
                summary["output"] = export_dir;
            }
            print_summary(summary);
            if (!(win.admissibility_residual < max_residual)) {
                std::cerr << "admissibility residual " << win.admissibility_residual
                          << " exceeds " << max_residual << "\n";
                return 4;
            }
        } else if (*bessel) {
            auto f = read_coefficients(in_path);
            auto ks = log_k_grid(kmin, kmax, nk);
            auto coeffs = flag_to_bessel(f, ks);
            write_bessel(out_path, coeffs, f.bandlimit.P, f.bandlimit.tau);
            print_summary({{"command", "bessel"},
                           {"L", f.bandlimit.L},
                           {"P", f.bandlimit.P},
                           {"nk", nk},
                           {"output", out_path},
                           {"seconds", timer.seconds()}});
        } else if (*mock) {
            std::vector<VoidSpec> parsed;
            for (const auto& spec : void_specs) {
                VoidSpec v;
                if (std::sscanf(spec.c_str(), "%lf,%lf,%lf,%lf,%lf", &v.center.r, &v.center.theta,
                                &v.center.phi, &v.radius, &v.depth) != 5)
                    throw std::invalid_argument("--void expects r,theta,phi,radius,depth");
                parsed.push_back(v);
            }
            auto cat = make_mock(n_galaxies, parsed, R, seed);
            write_catalog_csv(out_path, cat);
            print_summary({{"command", "mock"},
                           {"points", cat.points.size()},
                           {"seed", seed},
                           {"output", out_path},
                           {"seconds", timer.seconds()}});
        } else if (*voids_cmd) {
            const double vt = tau_for_radius(R, P);
            BandLimit bl(L, P, vt);
            auto cat = read_catalog_csv(in_path, R);
            auto grid = make_ball_grid(bl);
            auto field = voxelize(cat, grid);
            auto fam = family_from_flags(bl, lambda, nu, j0, j0p);
            auto voids = find_voids(field, fam, threshold);
            write_void_catalog(out_path, voids, fam, threshold, -1);
            if (!slice_pgm.empty())
                write_meridian_slice_pgm(slice_pgm, grid, field.delta, slice_phi, slice_n);
            print_summary({{"command", "voids"},
                           {"points", cat.points.size()},
                           {"dropped", field.dropped},
                           {"candidates", voids.size()},
                           {"threshold_sigma", threshold},
                           {"output", out_path},
                           {"seconds", timer.seconds()}});
        } else if (*render) {
            const double rt = tau_for_radius(R, P);
            BandLimit bl(L, P, rt);
            auto fam = family_from_flags(bl, lambda, nu, j0, j0p);
            auto win = build_windows(fam);
            auto grid = make_ball_grid(bl);
            auto values = render_flaglet(win, rj, rjp, s, grid);
            std::vector<std::complex<double>> samples(values.begin(), values.end());
            write_samples(out_path, bl, samples, true);
            if (!pgm_path.empty())
                write_meridian_slice_pgm(pgm_path, grid, values, 0.0, slice_n);
            print_summary({{"command", "render"},
                           {"j", rj},
                           {"jp", rjp},
                           {"s", s},
                           {"output", out_path},
                           {"seconds", timer.seconds()}});
        }
    } catch (const io_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const numeric_error& e) {
        std::cerr << "numerical validation failed: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
