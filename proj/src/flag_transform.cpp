#include "flag/flag_transform.hpp"
#include "flag/parallel.hpp"

#include <cmath>
#include <numbers>

namespace flag {

namespace {
constexpr double pi = std::numbers::pi;
}

BandLimit::BandLimit(int L_, int P_, double tau_) : L(L_), P(P_), tau(tau_)
{
    if (L < 1) throw std::invalid_argument("BandLimit: L must be >= 1");
    if (P < 1) throw std::invalid_argument("BandLimit: P must be >= 1");
    if (!(tau > 0)) throw std::invalid_argument("BandLimit: tau must be > 0");
}

BallGrid make_ball_grid(const BandLimit& bl)
{
    BallGrid grid;
    grid.bandlimit = bl;
    grid.sampling = make_sphere_sampling(bl.L);
    grid.radial = radial_quadrature(bl.P, bl.tau);
    return grid;
}

FlagCoefficients flag_forward(std::span<const std::complex<double>> samples, const BallGrid& grid,
                              ForwardOrder order)
{
    const int L = grid.bandlimit.L;
    const int P = grid.bandlimit.P;
    const std::size_t shell = grid.sampling.n_samples();
    if (samples.size() != shell * P)
        throw std::invalid_argument("flag_forward: sample count does not match grid");

    FlagCoefficients out(grid.bandlimit);
    const std::size_t L2 = std::size_t(L) * L;

    if (order == ForwardOrder::angular_first) {
        // sphere transform per shell, then the radial transform across shells
        std::vector<std::vector<std::complex<double>>> shell_coeffs(P);
        parallel_for(P, [&](std::size_t i) {
            shell_coeffs[i] = sht_forward(samples.subspan(i * shell, shell), grid.sampling);
        });
        parallel_for(L2, [&](std::size_t lm) {
            std::vector<std::complex<double>> g(P);
            for (int i = 0; i < P; ++i) g[i] = shell_coeffs[i][lm];
            auto fp = radial_analysis(std::span<const std::complex<double>>(g), grid.radial);
            for (int p = 0; p < P; ++p) out.values[std::size_t(p) * L2 + lm] = fp[p];
        });
    } else {
        // radial transform per angular node, then the sphere transform per p
        std::vector<std::complex<double>> radial_coeffs(shell * P);
        parallel_for(shell, [&](std::size_t a) {
            std::vector<std::complex<double>> g(P);
            for (int i = 0; i < P; ++i) g[i] = samples[i * shell + a];
            auto fp = radial_analysis(std::span<const std::complex<double>>(g), grid.radial);
            for (int p = 0; p < P; ++p) radial_coeffs[p * shell + a] = fp[p];
        });
        parallel_for(P, [&](std::size_t p) {
            auto clm = sht_forward(std::span<const std::complex<double>>(radial_coeffs)
                                       .subspan(p * shell, shell),
                                   grid.sampling);
            for (std::size_t lm = 0; lm < L2; ++lm) out.values[p * L2 + lm] = clm[lm];
        });
    }
    return out;
}

std::vector<std::complex<double>> flag_inverse(const FlagCoefficients& coeffs, const BallGrid& grid)
{
    const int L = grid.bandlimit.L;
    const int P = grid.bandlimit.P;
    if (coeffs.bandlimit.L != L || coeffs.bandlimit.P != P)
        throw std::invalid_argument("flag_inverse: coefficient band-limit does not match grid");
    const std::size_t L2 = std::size_t(L) * L;
    const std::size_t shell = grid.sampling.n_samples();

    // radial synthesis at the quadrature nodes per (l, m)
    std::vector<std::complex<double>> shellwise(std::size_t(P) * L2);
    parallel_for(L2, [&](std::size_t lm) {
        std::vector<std::complex<double>> fp(P);
        for (int p = 0; p < P; ++p) fp[p] = coeffs.values[std::size_t(p) * L2 + lm];
        auto g = radial_synthesis(std::span<const std::complex<double>>(fp), grid.radial.nodes,
                                  grid.bandlimit.tau);
        for (int i = 0; i < P; ++i) shellwise[std::size_t(i) * L2 + lm] = g[i];
    });

    std::vector<std::complex<double>> samples(shell * P);
    parallel_for(P, [&](std::size_t i) {
        auto g = sht_inverse(std::span<const std::complex<double>>(shellwise)
                                 .subspan(i * L2, L2),
                             grid.sampling);
        std::copy(g.begin(), g.end(), samples.begin() + i * shell);
    });
    return samples;
}

std::vector<std::complex<double>> flag_eval(const FlagCoefficients& coeffs,
                                            std::span<const BallPoint> points)
{
    const int L = coeffs.bandlimit.L;
    const int P = coeffs.bandlimit.P;
    const double tau = coeffs.bandlimit.tau;
    const std::size_t L2 = std::size_t(L) * L;

    std::vector<std::complex<double>> values(points.size());
    parallel_for(points.size(), [&](std::size_t n) {
        const BallPoint& pt = points[n];
        std::vector<double> krow(P);
        laguerre_basis_row(P, pt.r, tau, krow);

        // radial part first: g_{lm} = sum_p f_{lmp} K_p(r)
        std::vector<std::complex<double>> g(L2, 0.0);
        for (int p = 0; p < P; ++p) {
            const std::complex<double>* fp = coeffs.values.data() + std::size_t(p) * L2;
            for (std::size_t lm = 0; lm < L2; ++lm) g[lm] += fp[lm] * krow[p];
        }

        const double x = std::cos(pt.theta);
        std::vector<double> prow(L);
        std::complex<double> acc = 0;
        for (int m = 0; m < L; ++m) {
            legendre_row(L, m, x, prow);
            const std::complex<double> eimphi = std::polar(1.0, m * pt.phi);
            for (int l = m; l < L; ++l) {
                acc += g[sh_index(l, m)] * prow[l - m] * eimphi;
                if (m > 0) {
                    const double sgn = (m & 1) ? -1.0 : 1.0;
                    acc += g[sh_index(l, -m)] * (sgn * prow[l - m]) * std::conj(eimphi);
                }
            }
        }
        values[n] = acc;
    });
    return values;
}

FlagCoefficients ball_convolve(const FlagCoefficients& f,
                               std::span<const std::complex<double>> h_l0p)
{
    const int L = f.bandlimit.L;
    const int P = f.bandlimit.P;
    if (h_l0p.size() != std::size_t(L) * P)
        throw std::invalid_argument("ball_convolve: kernel shape mismatch");
    FlagCoefficients out(f.bandlimit);
    const std::size_t L2 = std::size_t(L) * L;
    for (int p = 0; p < P; ++p) {
        for (int l = 0; l < L; ++l) {
            const std::complex<double> c =
                std::sqrt(4.0 * pi / (2.0 * l + 1.0)) * std::conj(h_l0p[std::size_t(p) * L + l]);
            for (int m = -l; m <= l; ++m) {
                const std::size_t lm = std::size_t(l) * l + l + m;
                out.values[p * L2 + lm] = f.values[p * L2 + lm] * c;
            }
        }
    }
    return out;
}

std::vector<double> radial_energy_profile(const FlagCoefficients& coeffs,
                                          std::span<const double> radii)
{
    const int L = coeffs.bandlimit.L;
    const int P = coeffs.bandlimit.P;
    const std::size_t L2 = std::size_t(L) * L;
    std::vector<double> profile(radii.size(), 0.0);
    parallel_for(radii.size(), [&](std::size_t i) {
        std::vector<double> krow(P);
        laguerre_basis_row(P, radii[i], coeffs.bandlimit.tau, krow);
        double e = 0;
        for (std::size_t lm = 0; lm < L2; ++lm) {
            std::complex<double> g = 0;
            for (int p = 0; p < P; ++p) g += coeffs.values[std::size_t(p) * L2 + lm] * krow[p];
            e += std::norm(g);
        }
        profile[i] = radii[i] * radii[i] * e;
    });
    return profile;
}

std::int64_t sample_count(const BandLimit& bl, const std::string& scheme)
{
    const std::int64_t L = bl.L, P = bl.P;
    if (scheme == "equiangular") return P * ((2 * L - 1) * (L - 1) + 1);
    if (scheme == "gauss") return P * L * (2 * L - 1);
    throw std::invalid_argument("sample_count: unknown scheme '" + scheme + "'");
}

} // namespace flag
