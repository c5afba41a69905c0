#include "flag/radial_laguerre.hpp"
#include "flag/errors.hpp"

#include <cmath>
#include <cstddef>

namespace flag {

namespace {

// Orthonormal damped Laguerre functions psi_p(x) = sqrt(p!/(p+2)!) e^{-x/2} L^{(2)}_p(x),
// so that K_p(r) = psi_p(r/tau) / tau^{3/2}.  Recurrence:
//   sqrt((n+1)(n+3)) psi_{n+1} = (2n+3-x) psi_n - sqrt(n(n+2)) psi_{n-1}
// Bounded for all x >= 0, no overflow at large p or large x.
inline double psi0(double x) { return std::exp(-0.5 * x) / std::sqrt(2.0); }

void psi_row(int P, double x, std::span<double> out)
{
    double pm = psi0(x);
    if (P >= 1) out[0] = pm;
    if (P < 2) return;
    double pc = (3.0 - x) * pm / std::sqrt(3.0);
    out[1] = pc;
    for (int n = 1; n + 1 < P; ++n) {
        double pn = ((2.0 * n + 3.0 - x) * pc - std::sqrt(double(n) * (n + 2.0)) * pm)
                    / std::sqrt((n + 1.0) * (n + 3.0));
        pm = pc;
        pc = pn;
        out[n + 1] = pn;
    }
}

// psi_n(x) and psi_{n-1}(x) only.
void psi_pair(int n, double x, double& pn, double& pnm1)
{
    double pm = psi0(x);
    if (n == 0) {
        pn = pm;
        pnm1 = 0;
        return;
    }
    double pc = (3.0 - x) * pm / std::sqrt(3.0);
    for (int m = 1; m < n; ++m) {
        double next = ((2.0 * m + 3.0 - x) * pc - std::sqrt(double(m) * (m + 2.0)) * pm)
                      / std::sqrt((m + 1.0) * (m + 3.0));
        pm = pc;
        pc = next;
    }
    pn = pc;
    pnm1 = pm;
}

// long double variant for the final Newton polish; the double recurrence
// bottoms out near 5e-13 at P ~ 128, short of the 1e-14 node tolerance
void psi_pair_l(int n, long double x, long double& pn, long double& pnm1)
{
    long double pm = expl(-0.5L * x) / sqrtl(2.0L);
    if (n == 0) {
        pn = pm;
        pnm1 = 0;
        return;
    }
    long double pc = (3.0L - x) * pm / sqrtl(3.0L);
    for (int m = 1; m < n; ++m) {
        long double next = ((2.0L * m + 3.0L - x) * pc - sqrtl((long double)m * (m + 2.0L)) * pm)
                           / sqrtl((m + 1.0L) * (m + 3.0L));
        pm = pc;
        pc = next;
    }
    pn = pc;
    pnm1 = pm;
}

// d/dx psi_n(x) = (n psi_n - sqrt(n(n+2)) psi_{n-1}) / x - psi_n / 2
inline double psi_deriv(int n, double x, double pn, double pnm1)
{
    return (n * pn - std::sqrt(double(n) * (n + 2.0)) * pnm1) / x - 0.5 * pn;
}

template <typename T>
std::vector<T> analysis_impl(std::span<const T> samples, const RadialQuadrature& quad)
{
    const int P = quad.order();
    if (static_cast<int>(samples.size()) != P)
        throw std::invalid_argument("radial_analysis: sample count does not match quadrature order");
    std::vector<T> coeffs(P, T{});
    std::vector<double> krow(P);
    for (int i = 0; i < P; ++i) {
        laguerre_basis_row(P, quad.nodes[i], quad.tau, krow);
        const T wf = samples[i] * quad.weights[i];
        for (int p = 0; p < P; ++p) coeffs[p] += wf * krow[p];
    }
    return coeffs;
}

template <typename T>
std::vector<T> synthesis_impl(std::span<const T> coeffs, std::span<const double> radii, double tau)
{
    const int P = static_cast<int>(coeffs.size());
    std::vector<T> values(radii.size(), T{});
    std::vector<double> krow(P);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        laguerre_basis_row(P, radii[i], tau, krow);
        T acc{};
        for (int p = 0; p < P; ++p) acc += coeffs[p] * krow[p];
        values[i] = acc;
    }
    return values;
}

template <typename T>
std::vector<T> translate_impl(std::span<const T> coeffs, double s, const RadialBasis& basis)
{
    if (static_cast<int>(coeffs.size()) != basis.P)
        throw std::invalid_argument("radial_translate: coefficient count does not match basis");
    std::vector<double> ks(basis.P);
    laguerre_basis_row(basis.P, s, basis.tau, ks);
    std::vector<T> out(basis.P);
    for (int p = 0; p < basis.P; ++p) out[p] = coeffs[p] * ks[p];
    return out;
}

} // namespace

RadialBasis::RadialBasis(int P_, double tau_) : P(P_), tau(tau_)
{
    if (P < 1) throw std::invalid_argument("RadialBasis: P must be >= 1");
    if (!(tau > 0)) throw std::invalid_argument("RadialBasis: tau must be > 0");
}

double laguerre_basis_eval(int p, double r, double tau)
{
    if (p < 0) throw std::invalid_argument("laguerre_basis_eval: p must be >= 0");
    if (r < 0) throw std::invalid_argument("laguerre_basis_eval: r must be >= 0");
    if (!(tau > 0)) throw std::invalid_argument("laguerre_basis_eval: tau must be > 0");
    double pn, pnm1;
    psi_pair(p, r / tau, pn, pnm1);
    return pn / (tau * std::sqrt(tau));
}

void laguerre_basis_row(int P, double r, double tau, std::span<double> out)
{
    if (static_cast<int>(out.size()) < P)
        throw std::invalid_argument("laguerre_basis_row: output span too small");
    psi_row(P, r / tau, out);
    const double norm = 1.0 / (tau * std::sqrt(tau));
    for (int p = 0; p < P; ++p) out[p] *= norm;
}

RadialQuadrature radial_quadrature(int P, double tau)
{
    if (P < 1) throw std::invalid_argument("radial_quadrature: P must be >= 1");
    if (!(tau > 0)) throw std::invalid_argument("radial_quadrature: tau must be > 0");

    const double alpha = 2.0;
    RadialQuadrature quad;
    quad.tau = tau;
    quad.nodes.resize(P);
    quad.weights.resize(P);

    double x = 0;
    for (int i = 0; i < P; ++i) {
        // initial guesses (Tricomi-style, as in the classical gaulag construction)
        if (i == 0) {
            x = (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * P + 1.8 * alpha);
        } else if (i == 1) {
            x += (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * P);
        } else {
            double ai = i - 1;
            x += ((1.0 + 2.55 * ai) / (1.9 * ai)
                  + 1.26 * ai * alpha / (1.0 + 3.5 * ai)) * (x - quad.nodes[i - 2]) / (1.0 + 0.3 * alpha);
        }

        const double lo = (i == 0) ? 0.0 : quad.nodes[i - 1];
        double prev_dx = 1e300;
        for (int it = 0; it < 200; ++it) {
            double pn = 0, pnm1 = 0;
            psi_pair(P, x, pn, pnm1);
            const double dx = pn / psi_deriv(P, x, pn, pnm1);
            double xn = x - dx;
            if (!(xn > lo)) xn = 0.5 * (x + lo); // bisect towards the open bracket
            x = xn;
            if (std::abs(dx) <= 1e-13 * x || std::abs(dx) >= prev_dx) break; // noise floor
            prev_dx = std::abs(dx);
        }
        // polish in long double down to the 1e-14 contract
        long double xl = x;
        bool converged = false;
        for (int it = 0; it < 40; ++it) {
            long double pn = 0, pnm1 = 0;
            psi_pair_l(P, xl, pn, pnm1);
            const long double deriv =
                (P * pn - sqrtl((long double)P * (P + 2.0L)) * pnm1) / xl - 0.5L * pn;
            const long double dx = pn / deriv;
            xl -= dx;
            if (fabsl(dx) <= 1e-14L * xl) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw numeric_error("radial_quadrature: Newton iteration failed to converge for node "
                                + std::to_string(i));
        x = static_cast<double>(xl);
        long double pn = 0, pnm1 = 0;
        psi_pair_l(P, xl, pn, pnm1);
        quad.nodes[i] = x;
        // absorbed weight: tau^3 x / (P (P+2) psi_{P-1}(x)^2)
        quad.weights[i] = static_cast<double>(
            (long double)tau * tau * tau * xl / ((long double)P * (P + 2.0L) * pnm1 * pnm1));
    }
    for (int i = 0; i < P; ++i) quad.nodes[i] *= tau;
    return quad;
}

double tau_for_radius(double R, int P)
{
    if (!(R > 0)) throw std::invalid_argument("tau_for_radius: R must be > 0");
    RadialQuadrature unit = radial_quadrature(P, 1.0);
    return R / unit.nodes.back();
}

std::vector<double> radial_analysis(std::span<const double> samples, const RadialQuadrature& quad)
{
    return analysis_impl(samples, quad);
}

std::vector<std::complex<double>> radial_analysis(std::span<const std::complex<double>> samples,
                                                  const RadialQuadrature& quad)
{
    return analysis_impl(samples, quad);
}

std::vector<double> radial_synthesis(std::span<const double> coeffs,
                                     std::span<const double> radii, double tau)
{
    return synthesis_impl(coeffs, radii, tau);
}

std::vector<std::complex<double>> radial_synthesis(std::span<const std::complex<double>> coeffs,
                                                   std::span<const double> radii, double tau)
{
    return synthesis_impl(coeffs, radii, tau);
}

std::vector<double> radial_translate(std::span<const double> coeffs, double s, const RadialBasis& basis)
{
    if (s < 0) throw std::invalid_argument("radial_translate: s must be >= 0");
    return translate_impl(coeffs, s, basis);
}

std::vector<std::complex<double>> radial_translate(std::span<const std::complex<double>> coeffs,
                                                   double s, const RadialBasis& basis)
{
    if (s < 0) throw std::invalid_argument("radial_translate: s must be >= 0");
    return translate_impl(coeffs, s, basis);
}

std::vector<double> radial_dirac(double s, const RadialBasis& basis)
{
    if (s < 0) throw std::invalid_argument("radial_dirac: s must be >= 0");
    std::vector<double> ks(basis.P);
    laguerre_basis_row(basis.P, s, basis.tau, ks);
    return ks;
}

} // namespace flag
