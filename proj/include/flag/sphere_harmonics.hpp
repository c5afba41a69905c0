#pragma once

// Exact spherical harmonic transform for signals band-limited at L.
//
// Sampling: L Gauss-Legendre colatitudes x (2L-1) equiangular longitudes.
// The longitude sum resolves every order |m| <= 2L-2 without aliasing and
// the Gauss rule integrates the remaining colatitude polynomial (degree
// <= 2L-2) exactly, so forward/inverse transforms of band-limited signals
// round-trip to floating point accuracy.
//
// Coefficients are packed as idx = l^2 + l + m for 0 <= l < L, |m| <= l.
// Harmonics carry the Condon-Shortley phase; for real signals
// f_{l,-m} = (-1)^m conj(f_{l,m}).

#include <complex>
#include <span>
#include <vector>

namespace flag {

struct SphereSampling {
    int L = 0;
    std::vector<double> thetas;        // size L, increasing colatitudes
    std::vector<double> phis;          // size 2L-1, equiangular
    std::vector<double> theta_weights; // Gauss-Legendre weights (d cos(theta))
    std::vector<double> z;             // cos(thetas), kept for the recurrences
    std::vector<double> plm;           // [j * L(L+1)/2 + l(l+1)/2 + m], m >= 0

    int n_theta() const { return L; }
    int n_phi() const { return 2 * L - 1; }
    std::size_t n_samples() const { return std::size_t(n_theta()) * n_phi(); }
};

SphereSampling make_sphere_sampling(int L);

inline std::size_t sh_index(int l, int m) { return std::size_t(l) * l + l + m; }

// Normalized associated Legendre P̄_l^m(x) for l = m..L-1, Condon-Shortley
// phase included, stable (rescaled recurrence) up to very high degree.
void legendre_row(int L, int m, double x, std::span<double> out);

// Single spherical harmonic Y_lm(theta, phi).
std::complex<double> ylm(int l, int m, double theta, double phi);

// Grid layout: samples[j * (2L-1) + k] for colatitude j, longitude k.
std::vector<std::complex<double>> sht_forward(std::span<const std::complex<double>> samples,
                                              const SphereSampling& sampling);
std::vector<std::complex<double>> sht_inverse(std::span<const std::complex<double>> coeffs,
                                              const SphereSampling& sampling);

// (f * h)_{lm} = sqrt(4 pi / (2l+1)) f_{lm} conj(h_{l0}) for axisymmetric h.
std::vector<std::complex<double>> axisym_convolve(std::span<const std::complex<double>> coeffs,
                                                  std::span<const std::complex<double>> h_l0);

// Gauss-Legendre rule on [-1, 1] (used for the colatitude direction).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace flag
