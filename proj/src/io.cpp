#include "flag/io.hpp"
#include "flag/errors.hpp"

#include <json.hpp>

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "FLAG01 containers are little-endian; big-endian hosts are not supported");

namespace flag {

namespace {

using nlohmann::json;

constexpr char magic[6] = {'F', 'L', 'A', 'G', '0', '1'};

std::size_t payload_count(const Flag01File& f)
{
    const auto L = f.L, P = f.P;
    switch (f.kind) {
        case Flag01Kind::coeffs_complex:
        case Flag01Kind::coeffs_real: return std::size_t(P) * L * L;
        case Flag01Kind::samples_complex:
        case Flag01Kind::samples_real: return std::size_t(P) * L * (2 * L - 1);
        case Flag01Kind::window: return std::size_t(P) * L;
        case Flag01Kind::bessel: return std::size_t(L) * L * P;
    }
    throw io_error("FLAG01: unknown flags byte");
}

void check_band_limits(std::uint64_t L, std::uint64_t P)
{
    if (L < 1 || P < 1 || L > (1u << 20) || P > (1u << 20))
        throw io_error("FLAG01: implausible band-limits in header");
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json candidate_to_json(const VoidCandidate& c)
{
    json out;
    out["center"] = {{"r", c.center.r}, {"theta", c.center.theta}, {"phi", c.center.phi}};
    out["scale_pair"] = {{"j", c.j}, {"jp", c.jp}};
    out["response"] = c.response;
    out["effective_radius"] = c.effective_radius;
    out["significance"] = c.significance;
    out["children"] = json::array();
    for (const auto& child : c.children) out["children"].push_back(candidate_to_json(child));
    return out;
}

} // namespace

void write_flag01(const std::filesystem::path& path, const Flag01File& file)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path.string());
    out.write(magic, 6);
    out.write(reinterpret_cast<const char*>(&file.L), 8);
    out.write(reinterpret_cast<const char*>(&file.P), 8);
    out.write(reinterpret_cast<const char*>(&file.tau), 8);
    const auto flags = static_cast<std::uint8_t>(file.kind);
    out.write(reinterpret_cast<const char*>(&flags), 1);
    if (file.payload.size() != payload_count(file))
        throw io_error("write_flag01: payload size does not match header");
    out.write(reinterpret_cast<const char*>(file.payload.data()),
              static_cast<std::streamsize>(file.payload.size() * sizeof(std::complex<double>)));
    if (!out) throw io_error("write failed: " + path.string());
}

Flag01File read_flag01(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path.string());
    char m[6];
    in.read(m, 6);
    if (!in || std::memcmp(m, magic, 6) != 0)
        throw io_error("not a FLAG01 file: " + path.string());
    Flag01File file;
    std::uint8_t flags = 0;
    in.read(reinterpret_cast<char*>(&file.L), 8);
    in.read(reinterpret_cast<char*>(&file.P), 8);
    in.read(reinterpret_cast<char*>(&file.tau), 8);
    in.read(reinterpret_cast<char*>(&flags), 1);
    if (!in) throw io_error("truncated FLAG01 header: " + path.string());
    switch (flags) {
        case 0: file.kind = Flag01Kind::coeffs_complex; break;
        case 1: file.kind = Flag01Kind::coeffs_real; break;
        case 2: file.kind = Flag01Kind::samples_complex; break;
        case 3: file.kind = Flag01Kind::samples_real; break;
        case 0x57: file.kind = Flag01Kind::window; break;
        case 0x42: file.kind = Flag01Kind::bessel; break;
        default: throw io_error("FLAG01: unknown flags byte in " + path.string());
    }
    check_band_limits(file.L, file.P);
    if (!(file.tau > 0)) throw io_error("FLAG01: tau must be positive in " + path.string());
    file.payload.resize(payload_count(file));
    in.read(reinterpret_cast<char*>(file.payload.data()),
            static_cast<std::streamsize>(file.payload.size() * sizeof(std::complex<double>)));
    if (!in) throw io_error("truncated FLAG01 payload: " + path.string());
    return file;
}

void write_coefficients(const std::filesystem::path& path, const FlagCoefficients& coeffs,
                        bool real_signal)
{
    Flag01File file;
    file.L = coeffs.bandlimit.L;
    file.P = coeffs.bandlimit.P;
    file.tau = coeffs.bandlimit.tau;
    file.kind = real_signal ? Flag01Kind::coeffs_real : Flag01Kind::coeffs_complex;
    file.payload = coeffs.values;
    write_flag01(path, file);
}

FlagCoefficients read_coefficients(const std::filesystem::path& path)
{
    Flag01File file = read_flag01(path);
    if (file.kind != Flag01Kind::coeffs_complex && file.kind != Flag01Kind::coeffs_real)
        throw io_error("expected a coefficient FLAG01 file: " + path.string());
    FlagCoefficients coeffs(BandLimit(static_cast<int>(file.L), static_cast<int>(file.P), file.tau));
    coeffs.values = std::move(file.payload);
    return coeffs;
}

void write_samples(const std::filesystem::path& path, const BandLimit& bl,
                   std::span<const std::complex<double>> samples, bool real_signal)
{
    Flag01File file;
    file.L = bl.L;
    file.P = bl.P;
    file.tau = bl.tau;
    file.kind = real_signal ? Flag01Kind::samples_real : Flag01Kind::samples_complex;
    file.payload.assign(samples.begin(), samples.end());
    write_flag01(path, file);
}

std::pair<BandLimit, std::vector<std::complex<double>>> read_samples(
    const std::filesystem::path& path)
{
    Flag01File file = read_flag01(path);
    if (file.kind != Flag01Kind::samples_complex && file.kind != Flag01Kind::samples_real)
        throw io_error("expected a sample FLAG01 file: " + path.string());
    return {BandLimit(static_cast<int>(file.L), static_cast<int>(file.P), file.tau),
            std::move(file.payload)};
}

namespace {

Flag01File window_file(const BandLimit& bl, const std::vector<double>& w)
{
    Flag01File file;
    file.L = bl.L;
    file.P = bl.P;
    file.tau = bl.tau;
    file.kind = Flag01Kind::window;
    file.payload.assign(w.begin(), w.end());
    return file;
}

json family_to_json(const WaveletFamily& fam)
{
    return json{{"L", fam.bandlimit.L}, {"P", fam.bandlimit.P}, {"tau", fam.bandlimit.tau},
                {"lambda", fam.lambda}, {"nu", fam.nu},
                {"J0", fam.J0},         {"J0p", fam.J0p},
                {"J", fam.J},           {"Jp", fam.Jp}};
}

WaveletFamily family_from_json(const json& j)
{
    BandLimit bl(j.at("L").get<int>(), j.at("P").get<int>(), j.at("tau").get<double>());
    return WaveletFamily(bl, j.at("lambda").get<double>(), j.at("nu").get<double>(),
                         j.at("J0").get<int>(), j.at("J0p").get<int>());
}

} // namespace

void write_windows(const std::filesystem::path& dir, const HarmonicWindows& windows)
{
    std::filesystem::create_directories(dir);
    const WaveletFamily& fam = windows.family;
    json manifest;
    manifest["family"] = family_to_json(fam);
    manifest["admissibility_residual"] = windows.admissibility_residual;
    manifest["scaling"] = "phi.flag";
    write_flag01(dir / "phi.flag", window_file(fam.bandlimit, windows.phi));
    manifest["wavelets"] = json::array();
    for (int j = fam.J0; j <= fam.J; ++j) {
        for (int jp = fam.J0p; jp <= fam.Jp; ++jp) {
            const std::string name =
                "psi_" + std::to_string(j) + "_" + std::to_string(jp) + ".flag";
            write_flag01(dir / name, window_file(fam.bandlimit, windows.psi_at(j, jp)));
            manifest["wavelets"].push_back({{"j", j}, {"jp", jp}, {"file", name}});
        }
    }
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << "\n";
    if (!out) throw io_error("write failed: " + (dir / "manifest.json").string());
}

void write_flaglet_dir(const std::filesystem::path& dir, const FlagletCoefficients& coeffs)
{
    std::filesystem::create_directories(dir);
    const WaveletFamily& fam = coeffs.family;
    json manifest;
    manifest["family"] = family_to_json(fam);
    manifest["scaling"] = "scaling.flag";
    write_coefficients(dir / "scaling.flag", coeffs.scaling);
    manifest["wavelets"] = json::array();
    for (int j = fam.J0; j <= fam.J; ++j) {
        for (int jp = fam.J0p; jp <= fam.Jp; ++jp) {
            const std::string name = "w_" + std::to_string(j) + "_" + std::to_string(jp) + ".flag";
            write_coefficients(dir / name, coeffs.wavelet(j, jp));
            manifest["wavelets"].push_back({{"j", j}, {"jp", jp}, {"file", name}});
        }
    }
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << "\n";
    if (!out) throw io_error("write failed: " + (dir / "manifest.json").string());
}

FlagletCoefficients read_flaglet_dir(const std::filesystem::path& dir)
{
    std::ifstream in(dir / "manifest.json");
    if (!in) throw io_error("cannot open: " + (dir / "manifest.json").string());
    json manifest;
    try {
        in >> manifest;
    } catch (const json::exception& e) {
        throw io_error("bad manifest in " + dir.string() + ": " + e.what());
    }
    FlagletCoefficients coeffs;
    try {
        coeffs.family = family_from_json(manifest.at("family"));
        coeffs.scaling = read_coefficients(dir / manifest.at("scaling").get<std::string>());
        coeffs.wavelets.resize(std::size_t(coeffs.family.n_scales_j())
                               * coeffs.family.n_scales_jp());
        std::vector<bool> seen(coeffs.wavelets.size(), false);
        for (const auto& w : manifest.at("wavelets")) {
            const int j = w.at("j").get<int>();
            const int jp = w.at("jp").get<int>();
            coeffs.wavelet(j, jp) = read_coefficients(dir / w.at("file").get<std::string>());
            seen[std::size_t(j - coeffs.family.J0) * coeffs.family.n_scales_jp()
                 + (jp - coeffs.family.J0p)] = true;
        }
        for (bool s : seen)
            if (!s) throw io_error("manifest in " + dir.string() + " is missing scales");
    } catch (const json::exception& e) {
        throw io_error("bad manifest in " + dir.string() + ": " + e.what());
    }
    return coeffs;
}

void write_bessel(const std::filesystem::path& manifest_path, const BesselCoefficients& coeffs,
                  int source_P, double tau)
{
    Flag01File file;
    file.L = coeffs.L;
    file.P = coeffs.k_grid.size();
    file.tau = tau;
    file.kind = Flag01Kind::bessel;
    file.payload = coeffs.values;
    std::filesystem::path payload_path = manifest_path;
    payload_path.replace_extension(".flag");
    write_flag01(payload_path, file);

    json manifest;
    manifest["L"] = coeffs.L;
    manifest["P"] = source_P;
    manifest["tau"] = tau;
    manifest["k_grid"] = coeffs.k_grid;
    manifest["payload"] = payload_path.filename().string();
    std::ofstream out(manifest_path);
    out << manifest.dump(2) << "\n";
    if (!out) throw io_error("write failed: " + manifest_path.string());
}

BesselCoefficients read_bessel(const std::filesystem::path& manifest_path)
{
    std::ifstream in(manifest_path);
    if (!in) throw io_error("cannot open: " + manifest_path.string());
    json manifest;
    try {
        in >> manifest;
    } catch (const json::exception& e) {
        throw io_error("bad manifest " + manifest_path.string() + ": " + e.what());
    }
    BesselCoefficients coeffs;
    try {
        coeffs.L = manifest.at("L").get<int>();
        coeffs.k_grid = manifest.at("k_grid").get<std::vector<double>>();
        const auto payload_path =
            manifest_path.parent_path() / manifest.at("payload").get<std::string>();
        Flag01File file = read_flag01(payload_path);
        if (file.kind != Flag01Kind::bessel)
            throw io_error("expected a Fourier-Bessel payload: " + payload_path.string());
        if (file.L != std::uint64_t(coeffs.L) || file.P != coeffs.k_grid.size())
            throw io_error("manifest and payload disagree: " + manifest_path.string());
        coeffs.values = std::move(file.payload);
    } catch (const json::exception& e) {
        throw io_error("bad manifest " + manifest_path.string() + ": " + e.what());
    }
    return coeffs;
}

void write_catalog_csv(const std::filesystem::path& path, const Catalog& catalog)
{
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path.string());
    const bool weighted = !catalog.weights.empty();
    out << (weighted ? "r,theta,phi,weight\n" : "r,theta,phi\n");
    for (std::size_t i = 0; i < catalog.points.size(); ++i) {
        const BallPoint& p = catalog.points[i];
        out << format_double(p.r) << ',' << format_double(p.theta) << ','
            << format_double(p.phi);
        if (weighted) out << ',' << format_double(catalog.weights[i]);
        out << '\n';
    }
    if (!out) throw io_error("write failed: " + path.string());
}

Catalog read_catalog_csv(const std::filesystem::path& path, double R)
{
    std::ifstream in(path);
    if (!in) throw io_error("cannot open: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw io_error("empty catalog file: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool weighted = false;
    if (line == "r,theta,phi,weight")
        weighted = true;
    else if (line != "r,theta,phi")
        throw io_error("bad catalog header in " + path.string() + ": '" + line + "'");

    Catalog cat;
    cat.R = R;
    std::size_t lineno = 1;
    constexpr double two_pi = 2.0 * std::numbers::pi;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<double, 4> fields{};
        const std::size_t expected = weighted ? 4 : 3;
        std::size_t pos = 0;
        for (std::size_t f = 0; f < expected; ++f) {
            const std::size_t next = line.find(',', pos);
            const std::string tok = line.substr(pos, next == std::string::npos
                                                         ? std::string::npos
                                                         : next - pos);
            char* end = nullptr;
            fields[f] = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0')
                throw io_error(path.string() + ":" + std::to_string(lineno)
                               + ": bad number '" + tok + "'");
            if (next == std::string::npos) {
                if (f + 1 != expected)
                    throw io_error(path.string() + ":" + std::to_string(lineno)
                                   + ": too few fields");
                pos = std::string::npos;
            } else {
                pos = next + 1;
            }
        }
        if (pos != std::string::npos)
            throw io_error(path.string() + ":" + std::to_string(lineno) + ": too many fields");
        BallPoint p{fields[0], fields[1], fields[2]};
        if (p.r < 0 || p.theta < 0 || p.theta > std::numbers::pi || p.phi < 0 || p.phi >= two_pi)
            throw io_error(path.string() + ":" + std::to_string(lineno)
                           + ": coordinates out of range");
        cat.points.push_back(p);
        if (weighted) {
            if (!(fields[3] > 0))
                throw io_error(path.string() + ":" + std::to_string(lineno)
                               + ": weight must be positive");
            cat.weights.push_back(fields[3]);
        }
    }
    return cat;
}

void write_void_catalog(const std::filesystem::path& path,
                        const std::vector<VoidCandidate>& voids, const WaveletFamily& family,
                        double threshold_sigma, std::int64_t seed_or_minus1)
{
    json out;
    out["metadata"] = family_to_json(family);
    out["metadata"]["threshold_sigma"] = threshold_sigma;
    if (seed_or_minus1 >= 0) out["metadata"]["seed"] = seed_or_minus1;
    out["voids"] = json::array();
    for (const auto& v : voids) out["voids"].push_back(candidate_to_json(v));
    std::ofstream f(path);
    f << out.dump(2) << "\n";
    if (!f) throw io_error("write failed: " + path.string());
}

void write_pgm(const std::filesystem::path& path, int width, int height,
               std::span<const double> values)
{
    if (values.size() != std::size_t(width) * height)
        throw std::invalid_argument("write_pgm: size mismatch");
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double scale = hi > lo ? 255.0 / (hi - lo) : 0.0;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open for writing: " + path.string());
    out << "P5\n" << width << " " << height << "\n255\n";
    std::vector<unsigned char> row(width);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x)
            row[x] = static_cast<unsigned char>(std::lround((values[std::size_t(y) * width + x] - lo)
                                                            * scale));
        out.write(reinterpret_cast<const char*>(row.data()), width);
    }
    if (!out) throw io_error("write failed: " + path.string());
}

void write_shell_slice_pgm(const std::filesystem::path& path, const BallGrid& grid,
                           std::span<const double> ball_values, int shell)
{
    const int L = grid.bandlimit.L;
    const int nphi = 2 * L - 1;
    if (shell < 0 || shell >= grid.bandlimit.P)
        throw std::invalid_argument("write_shell_slice_pgm: shell out of range");
    write_pgm(path, nphi, L, ball_values.subspan(std::size_t(shell) * L * nphi,
                                                 std::size_t(L) * nphi));
}

void write_meridian_slice_pgm(const std::filesystem::path& path, const BallGrid& grid,
                              std::span<const double> ball_values, double phi0, int n)
{
    const int L = grid.bandlimit.L;
    const int nphi = 2 * L - 1;
    const double R = grid.radial.nodes.back();
    const std::size_t shell = grid.sampling.n_samples();
    constexpr double two_pi = 2.0 * std::numbers::pi;

    auto nearest = [](const std::vector<double>& v, double x) {
        auto it = std::lower_bound(v.begin(), v.end(), x);
        if (it == v.begin()) return 0;
        if (it == v.end()) return static_cast<int>(v.size()) - 1;
        int hi = static_cast<int>(it - v.begin());
        return (x - v[hi - 1] <= v[hi] - x) ? hi - 1 : hi;
    };

    std::vector<double> img(std::size_t(n) * n, 0.0);
    for (int y = 0; y < n; ++y) {
        const double z = R * (1.0 - 2.0 * (y + 0.5) / n);
        for (int x = 0; x < n; ++x) {
            const double u = R * (2.0 * (x + 0.5) / n - 1.0); // signed in-plane coordinate
            const double r = std::hypot(u, z);
            if (r > R) continue;
            const double theta = std::atan2(std::abs(u), z);
            double phi = u >= 0 ? phi0 : phi0 + std::numbers::pi;
            phi = std::fmod(phi, two_pi);
            if (phi < 0) phi += two_pi;
            const int i = nearest(grid.radial.nodes, r);
            const int j = nearest(grid.sampling.thetas, theta);
            int k = static_cast<int>(std::lround(phi / (two_pi / nphi))) % nphi;
            img[std::size_t(y) * n + x] =
                ball_values[i * shell + std::size_t(j) * nphi + k];
        }
    }
    write_pgm(path, n, n, img);
}

} // namespace flag
