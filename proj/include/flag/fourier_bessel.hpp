#pragma once

// Analytic bridge from Fourier-Laguerre to Fourier-Bessel coefficients.
//
// The projection of a spherical Laguerre basis function onto a spherical
// Bessel function,
//
//     j_{lp}(k) = <K_p | j_l> = sqrt(p!/(p+2)!) sum_{j=0}^{p} c^p_j mu^l_{j+2}(k),
//
// has a closed form: the moments mu^l_j(k) evaluate through a Gauss
// hypergeometric function that reduces to elementary terms, so a band-limited
// signal's Fourier-Bessel coefficients
//
//     f~_{lm}(k) = sqrt(2/pi) sum_p f_{lmp} j_{lp}(k)
//
// follow exactly from a finite sum, with no quadrature anywhere.
//
// Accuracy: the c^p_j-weighted sum cancels heavily for large l + p at small
// tau*k; all sums accumulate in double-double, which holds relative error
// near 1e-8 or better for l, p <= ~32 over tau*k in [0.01, 50] and degrades
// beyond that box.

#include "flag/flag_transform.hpp"

#include <complex>
#include <span>
#include <vector>

namespace flag {

// c^p_0 .. c^p_p via the recurrence c^p_j = -((p-j+1)/(j(j+2))) c^p_{j-1},
// seeded by c^p_0 = (p+2)(p+1)/2.
std::vector<double> c_coeffs(int p);

// mu^l_j(k) = tau^{-(j-1/2)} Int_0^inf r^j j_l(kr) e^{-r/(2 tau)} dr.
// Requires j >= 2 (the range used by the projection); throws otherwise.
double moment_mu(int ell, int j, double k, double tau);

// j_{lp}(k), closed form.
double projection_jlp(int ell, int p, double k, double tau);

struct ProjectionTable {
    int L = 0, P = 0;
    double tau = 1;
    std::vector<double> k_grid;
    std::vector<double> values; // [(l * P + p) * n_k + ik]

    double at(int l, int p, int ik) const
    {
        return values[(std::size_t(l) * P + p) * k_grid.size() + ik];
    }
};

ProjectionTable build_projection_table(int L, int P, std::span<const double> k_grid, double tau);

struct BesselCoefficients {
    int L = 0;
    std::vector<double> k_grid;
    std::vector<std::complex<double>> values; // [(l^2 + l + m) * n_k + ik]

    std::complex<double>& at(int l, int m, int ik)
    {
        return values[(std::size_t(l) * l + l + m) * k_grid.size() + ik];
    }
    const std::complex<double>& at(int l, int m, int ik) const
    {
        return values[(std::size_t(l) * l + l + m) * k_grid.size() + ik];
    }
};

BesselCoefficients flag_to_bessel(const FlagCoefficients& f, std::span<const double> k_grid);

// Logarithmic wavenumber grid helper (n points from k_min to k_max).
std::vector<double> log_k_grid(double k_min, double k_max, int n);

} // namespace flag
