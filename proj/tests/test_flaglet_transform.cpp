#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flag/flaglet_transform.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace flag;
using std::numbers::pi;

namespace {

FlagCoefficients random_coeffs(const BandLimit& bl, oracle::Rng& rng)
{
    FlagCoefficients c(bl);
    for (auto& v : c.values) v = rng.csym();
    return c;
}

double max_abs_diff(std::span<const std::complex<double>> a,
                    std::span<const std::complex<double>> b)
{
    double err = 0;
    for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
    return err;
}

} // namespace

TEST_CASE("zero signal decomposes to zero everywhere")
{
    WaveletFamily fam(BandLimit(16, 16, 1.0), 2.0, 2.0, 0, 0);
    auto win = build_windows(fam);
    FlagCoefficients zero(fam.bandlimit);
    auto coeffs = flaglet_analysis(zero, win);
    for (auto& v : coeffs.scaling.values) CHECK(std::abs(v) == 0.0);
    for (auto& w : coeffs.wavelets)
        for (auto& v : w.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("single-coefficient input: diagonal response with bounded scale overlap")
{
    WaveletFamily fam(BandLimit(32, 32, 1.0), 2.0, 2.0, 0, 0);
    auto win = build_windows(fam);
    const int l = 9, m = -4, p = 13;
    FlagCoefficients f(fam.bandlimit);
    const std::complex<double> val(0.8, -0.45);
    f.at(p, l, m) = val;
    auto coeffs = flaglet_analysis(f, win);

    int responding = 0;
    for (int j = fam.J0; j <= fam.J; ++j)
        for (int jp = fam.J0p; jp <= fam.Jp; ++jp) {
            const auto& w = coeffs.wavelet(j, jp);
            // response only at the same (l, m, p), magnitude given by the window
            for (std::size_t i = 0; i < w.values.size(); ++i) {
                if (i == w.flatten(p, l, m)) continue;
                CHECK(std::abs(w.values[i]) == 0.0);
            }
            const double window = win.psi_at(j, jp)[std::size_t(p) * 32 + l];
            const std::complex<double> expect =
                std::sqrt(4.0 * pi / (2.0 * l + 1.0)) * val * window;
            CHECK(std::abs(w.values[w.flatten(p, l, m)] - expect) < 1e-15);
            if (window != 0.0) ++responding;
        }
    CHECK(responding >= 1);
    CHECK(responding <= 4); // support overlap bound for dyadic windows
}

TEST_CASE("perfect reconstruction and the tight-frame energy identity")
{
    struct Case {
        int L, P;
        double lam, nu;
        int J0, J0p;
    };
    for (const auto& c : {Case{32, 32, 2.0, 2.0, 0, 0}, Case{32, 32, 3.0, 3.0, 2, 1},
                          Case{16, 32, 2.0, 3.0, 1, 0}}) {
        WaveletFamily fam(BandLimit(c.L, c.P, 1.0), c.lam, c.nu, c.J0, c.J0p);
        auto win = build_windows(fam);
        oracle::Rng rng(50 + c.L + c.J0);
        auto f = random_coeffs(fam.bandlimit, rng);

        auto coeffs = flaglet_analysis(f, win);
        auto back = flaglet_synthesis(coeffs, win);
        CHECK(max_abs_diff(f.values, back.values) < 1e-10);

        // substituting the analysis products into the admissibility identity:
        // sum |W^Phi|^2 + sum_jj' |W^Psi|^2 = sum |f|^2
        double lhs = 0, rhs = 0;
        for (auto& v : f.values) rhs += std::norm(v);
        for (auto& v : coeffs.scaling.values) lhs += std::norm(v);
        for (auto& w : coeffs.wavelets)
            for (auto& v : w.values) lhs += std::norm(v);
        CHECK(std::abs(lhs - rhs) < 1e-9 * rhs);

        // analysis of the synthesis is idempotent on the coefficient set
        auto coeffs2 = flaglet_analysis(back, win);
        CHECK(max_abs_diff(coeffs.scaling.values, coeffs2.scaling.values) < 1e-10);
        for (std::size_t i = 0; i < coeffs.wavelets.size(); ++i)
            CHECK(max_abs_diff(coeffs.wavelets[i].values, coeffs2.wavelets[i].values) < 1e-10);
    }
}

TEST_CASE("all-zero flaglet coefficients synthesize to the zero signal")
{
    WaveletFamily fam(BandLimit(8, 8, 1.0), 2.0, 2.0, 0, 0);
    auto win = build_windows(fam);
    FlagletCoefficients coeffs;
    coeffs.family = fam;
    coeffs.scaling = FlagCoefficients(fam.bandlimit);
    coeffs.wavelets.assign(std::size_t(fam.n_scales_j()) * fam.n_scales_jp(),
                           FlagCoefficients(fam.bandlimit));
    auto f = flaglet_synthesis(coeffs, win);
    for (auto& v : f.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("rendered flaglets are exactly azimuthally symmetric")
{
    BandLimit bl(16, 16, tau_for_radius(1.0, 16));
    WaveletFamily fam(bl, 2.0, 2.0, 0, 0);
    auto win = build_windows(fam);
    auto grid = make_ball_grid(bl);
    auto samples = render_flaglet(win, 2, 2, 0.4, grid);

    const int nphi = grid.sampling.n_phi();
    const std::size_t shell = grid.sampling.n_samples();
    for (std::size_t i = 0; i < grid.radial.nodes.size(); ++i)
        for (int j = 0; j < grid.sampling.n_theta(); ++j)
            for (int k = 1; k < nphi; ++k)
                CHECK(samples[i * shell + std::size_t(j) * nphi + k]
                      == samples[i * shell + std::size_t(j) * nphi]);
}

TEST_CASE("translation moves the flaglet peak outward monotonically")
{
    BandLimit bl(32, 32, tau_for_radius(1.0, 32));
    WaveletFamily fam(bl, 2.0, 2.0, 0, 0);
    auto win = build_windows(fam);

    auto peak_radius = [&](double s) {
        auto coeffs = flaglet_harmonic(win, 4, 4, s);
        const int nr = 2000;
        std::vector<double> radii(nr);
        for (int i = 0; i < nr; ++i) radii[i] = 1.0 * (i + 0.5) / nr;
        auto e = radial_energy_profile(coeffs, radii);
        int best = 0;
        for (int i = 1; i < nr; ++i)
            if (e[i] > e[best]) best = i;
        return radii[best];
    };

    const double r1 = peak_radius(0.1), r2 = peak_radius(0.2), r3 = peak_radius(0.3);
    CHECK(r1 < r2);
    CHECK(r2 < r3);
    // the translated shell sits near the requested radius
    CHECK(std::abs(r2 - 0.2) < 0.05);
}

TEST_CASE("s = 0 and s > 0 renderings differ only through the K_p(s) factors")
{
    BandLimit bl(8, 8, 1.0);
    WaveletFamily fam(bl, 2.0, 2.0, 0, 0);
    auto win = build_windows(fam);
    const int j = 1, jp = 1;
    const double s = 0.7;
    auto h0 = flaglet_harmonic(win, j, jp, 0.0);
    auto hs = flaglet_harmonic(win, j, jp, s);
    std::vector<double> k0(bl.P), ks(bl.P);
    laguerre_basis_row(bl.P, 0.0, bl.tau, k0);
    laguerre_basis_row(bl.P, s, bl.tau, ks);
    for (int p = 0; p < bl.P; ++p)
        for (int l = 0; l < bl.L; ++l) {
            const auto a = h0.at(p, l, 0);
            const auto b = hs.at(p, l, 0);
            CHECK(std::abs(b * k0[p] - a * ks[p]) < 1e-14);
        }
}

TEST_CASE("family and scale validation")
{
    WaveletFamily fam(BandLimit(16, 16, 1.0), 2.0, 2.0, 0, 0);
    auto win = build_windows(fam);
    FlagCoefficients wrong(BandLimit(16, 8, 1.0));
    CHECK_THROWS_AS(flaglet_analysis(wrong, win), std::invalid_argument);
    CHECK_THROWS_AS(flaglet_harmonic(win, fam.J + 1, fam.J0p, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(flaglet_harmonic(win, fam.J0, fam.J0p, -0.1), std::invalid_argument);
}
