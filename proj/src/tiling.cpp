#include "flag/tiling.hpp"
#include "flag/errors.hpp"
#include "flag/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace flag {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double quad_tol = 1e-14;

double k_lambda_denominator(double lambda)
{
    return integrate_adaptive([lambda](double t) {
        const double s = s_lambda(t, lambda);
        return s * s / t;
    }, 1.0 / lambda, 1.0, quad_tol);
}

double k_lambda_with_denom(double t, double lambda, double denom)
{
    if (t <= 1.0 / lambda) return 1.0;
    if (t >= 1.0) return 0.0;
    const double num = integrate_adaptive([lambda](double u) {
        const double s = s_lambda(u, lambda);
        return s * s / u;
    }, t, 1.0, quad_tol);
    return num / denom;
}

double checked_sqrt(double radicand, const char* who)
{
    if (radicand < -1e-12)
        throw numeric_error(std::string(who) + ": negative radicand " + std::to_string(radicand));
    return radicand > 0 ? std::sqrt(radicand) : 0.0;
}

// k_lambda(l / lambda^jj) for jj in [J0, J+1], evaluated once per argument so
// that the wavelet sum telescopes exactly in floating point.
std::vector<std::vector<double>> k_grid(int nmax, double lambda, int j_lo, int j_hi)
{
    const double denom = k_lambda_denominator(lambda);
    double scale = std::pow(lambda, j_lo);
    std::vector<std::vector<double>> grid;
    grid.reserve(j_hi - j_lo + 1);
    for (int j = j_lo; j <= j_hi; ++j) {
        std::vector<double> row(nmax);
        for (int n = 0; n < nmax; ++n) row[n] = k_lambda_with_denom(n / scale, lambda, denom);
        grid.push_back(std::move(row));
        scale *= lambda;
    }
    return grid;
}

} // namespace

double schwartz_s(double t)
{
    if (t <= -1.0 || t >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
}

double s_lambda(double t, double lambda)
{
    if (!(lambda > 1)) throw std::invalid_argument("s_lambda: lambda must be > 1");
    return schwartz_s(2.0 * lambda / (lambda - 1.0) * (t - 1.0 / lambda) - 1.0);
}

double k_lambda(double t, double lambda)
{
    if (!(lambda > 1)) throw std::invalid_argument("k_lambda: lambda must be > 1");
    if (t <= 1.0 / lambda) return 1.0;
    if (t >= 1.0) return 0.0;
    return k_lambda_with_denom(t, lambda, k_lambda_denominator(lambda));
}

double kappa_lambda(double t, double lambda)
{
    return checked_sqrt(k_lambda(t / lambda, lambda) - k_lambda(t, lambda), "kappa_lambda");
}

double eta_lambda(double t, double lambda)
{
    return std::sqrt(k_lambda(t, lambda));
}

double eta_lambda_nu(double t, double tp, double lambda, double nu)
{
    const double kl_s = k_lambda(t / lambda, lambda);
    const double kl = k_lambda(t, lambda);
    const double kn_s = k_lambda(tp / nu, nu);
    const double kn = k_lambda(tp, nu);
    return checked_sqrt(kl_s * kn + kl * kn_s - kl * kn, "eta_lambda_nu");
}

WaveletFamily::WaveletFamily(const BandLimit& bl, double lambda_, double nu_, int J0_, int J0p_)
    : lambda(lambda_), nu(nu_), J0(J0_), J0p(J0p_), bandlimit(bl)
{
    if (!(lambda > 1)) throw std::invalid_argument("WaveletFamily: lambda must be > 1");
    if (!(nu > 1)) throw std::invalid_argument("WaveletFamily: nu must be > 1");
    auto ceil_log = [](double base, int n) {
        int j = 0;
        double t = 1;
        while (t < n) {
            t *= base;
            ++j;
        }
        return j;
    };
    if (bl.L < 2 || bl.P < 2)
        throw std::invalid_argument("WaveletFamily: band-limits must be >= 2");
    J = ceil_log(lambda, bl.L - 1);
    Jp = ceil_log(nu, bl.P - 1);
    if (!(0 <= J0 && J0 < J))
        throw std::invalid_argument("WaveletFamily: need 0 <= J0 < J = "
                                    + std::to_string(J));
    if (!(0 <= J0p && J0p < Jp))
        throw std::invalid_argument("WaveletFamily: need 0 <= J0p < Jp = "
                                    + std::to_string(Jp));
}

HarmonicWindows build_windows(const WaveletFamily& family)
{
    const int L = family.bandlimit.L;
    const int P = family.bandlimit.P;
    const int J0 = family.J0, J = family.J;
    const int J0p = family.J0p, Jp = family.Jp;

    const auto klam = k_grid(L, family.lambda, J0, J + 1); // klam[j - J0][l]
    const auto knu = k_grid(P, family.nu, J0p, Jp + 1);    // knu[jp - J0p][p]

    HarmonicWindows win;
    win.family = family;
    win.psi.resize(std::size_t(family.n_scales_j()) * family.n_scales_jp());

    std::vector<double> norm(L); // sqrt((2l+1)/(4 pi))
    for (int l = 0; l < L; ++l) norm[l] = std::sqrt((2.0 * l + 1.0) / (4.0 * pi));

    for (int j = J0; j <= J; ++j) {
        std::vector<double> kap_l(L);
        for (int l = 0; l < L; ++l)
            kap_l[l] = checked_sqrt(klam[j - J0 + 1][l] - klam[j - J0][l], "build_windows");
        for (int jp = J0p; jp <= Jp; ++jp) {
            std::vector<double>& w = win.psi[std::size_t(j - J0) * family.n_scales_jp() + (jp - J0p)];
            w.assign(std::size_t(P) * L, 0.0);
            for (int p = 0; p < P; ++p) {
                const double kap_p = checked_sqrt(knu[jp - J0p + 1][p] - knu[jp - J0p][p],
                                                  "build_windows");
                if (kap_p == 0.0) continue;
                for (int l = 0; l < L; ++l) w[std::size_t(p) * L + l] = norm[l] * kap_l[l] * kap_p;
            }
        }
    }

    // scaling window: the three eta branches share their k values with the
    // wavelet grid, so the identity below telescopes to round-off
    const double A = std::pow(family.lambda, J0);
    const double B = std::pow(family.nu, J0p);
    win.phi.assign(std::size_t(P) * L, 0.0);
    for (int p = 0; p < P; ++p) {
        for (int l = 0; l < L; ++l) {
            double v = 0;
            if (l > A && p <= B) {
                v = std::sqrt(knu[0][p]);
            } else if (l <= A && p > B) {
                v = std::sqrt(klam[0][l]);
            } else if (l <= A && p <= B) {
                v = checked_sqrt(klam[1][l] * knu[0][p] + klam[0][l] * knu[1][p]
                                     - klam[0][l] * knu[0][p],
                                 "build_windows(phi)");
            }
            win.phi[std::size_t(p) * L + l] = norm[l] * v;
        }
    }

    // admissibility: 4 pi/(2l+1) (phi^2 + sum psi^2) = 1 for all l, p
    double worst = 0;
    int worst_l = 0, worst_p = 0;
    for (int p = 0; p < P; ++p) {
        for (int l = 0; l < L; ++l) {
            const std::size_t i = std::size_t(p) * L + l;
            double sum = win.phi[i] * win.phi[i];
            for (const auto& w : win.psi) sum += w[i] * w[i];
            const double residual = std::abs(4.0 * pi / (2.0 * l + 1.0) * sum - 1.0);
            if (residual > worst) {
                worst = residual;
                worst_l = l;
                worst_p = p;
            }
        }
    }
    win.admissibility_residual = worst;
    if (worst > 1e-8)
        throw numeric_error("build_windows: admissibility residual " + std::to_string(worst)
                            + " at (l=" + std::to_string(worst_l)
                            + ", p=" + std::to_string(worst_p) + ")");
    return win;
}

} // namespace flag
