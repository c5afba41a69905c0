#pragma once

// Spherical Laguerre basis on the radial half-line.
//
// The basis functions
//
//     K_p(r) = sqrt(p!/(p+2)!) * exp(-r/(2 tau)) / tau^{3/2} * L^{(2)}_p(r/tau)
//
// are orthonormal under the measure r^2 dr.  A signal with band-limit P
// (f_p = 0 for p >= P) is represented exactly by its values at the P nodes
// of the Gauss quadrature rule built on the roots of L^{(2)}_P, which makes
// the forward transform a plain weighted dot product.

#include <complex>
#include <span>
#include <vector>

namespace flag {

struct RadialBasis {
    int P = 0;       // band-limit, p < P
    double tau = 1;  // radial scale factor

    RadialBasis(int P_, double tau_);
};

// Nodes are the P roots of L^{(2)}_P(r/tau), increasing.  Weights absorb the
// full measure: sum_i w_i g(r_i) = int g(r) r^2 dr for any
// g(r) = q(r/tau) exp(-r/tau) with deg q <= 2P-1.
struct RadialQuadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
    double tau = 1;

    int order() const { return static_cast<int>(nodes.size()); }
};

// K_p(r).  Stable for p in the thousands; the prefactor sqrt(p!/(p+2)!)
// is folded into the recurrence as 1/sqrt((p+1)(p+2)).
double laguerre_basis_eval(int p, double r, double tau);

// K_0(r) .. K_{P-1}(r) in a single recurrence pass.
void laguerre_basis_row(int P, double r, double tau, std::span<double> out);

// Gauss rule of the given order.  Throws flag::numeric_error if Newton
// iteration on a root fails to reach relative tolerance 1e-14.
RadialQuadrature radial_quadrature(int P, double tau);

// tau such that the outermost node of radial_quadrature(P, tau) lands at R.
double tau_for_radius(double R, int P);

// f_p = sum_i w_i f(r_i) K_p(r_i); exact for band-limited f.
std::vector<double> radial_analysis(std::span<const double> samples,
                                    const RadialQuadrature& quad);
std::vector<std::complex<double>> radial_analysis(std::span<const std::complex<double>> samples,
                                                  const RadialQuadrature& quad);

// f(r) = sum_{p<P} f_p K_p(r) at each requested radius.
std::vector<double> radial_synthesis(std::span<const double> coeffs,
                                     std::span<const double> radii, double tau);
std::vector<std::complex<double>> radial_synthesis(std::span<const std::complex<double>> coeffs,
                                                   std::span<const double> radii, double tau);

// (T_s f)_p = K_p(s) f_p.
std::vector<double> radial_translate(std::span<const double> coeffs, double s,
                                     const RadialBasis& basis);
std::vector<std::complex<double>> radial_translate(std::span<const std::complex<double>> coeffs,
                                                   double s, const RadialBasis& basis);

// Band-limited Dirac delta at s under the r^2 dr measure: coefficients K_p(s).
std::vector<double> radial_dirac(double s, const RadialBasis& basis);

} // namespace flag
