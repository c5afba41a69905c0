#pragma once

// Harmonic-space tiling that defines the flaglet wavelets and scaling
// function.  The generating functions derive from the compactly supported
// Schwartz bump s(t); k_lambda smoothly steps from 1 (t <= 1/lambda) down to
// 0 (t >= 1), and the wavelet generator kappa_lambda(t) = sqrt(k(t/lambda) -
// k(t)) tiles each dyadic-like band.  Windows built here satisfy the
// resolution of the identity
//
//   4 pi / (2l+1) * ( Phi_{l0p}^2 + sum_{j j'} Psi^{jj'}_{l0p}^2 ) = 1
//
// for every l < L, p < P, which is what makes the flaglet transform exact.

#include "flag/flag_transform.hpp"

#include <vector>

namespace flag {

// s(t) = exp(-1/(1-t^2)) on [-1, 1], 0 elsewhere (boundary value 0).
double schwartz_s(double t);

// Reparameterized bump with compact support [1/lambda, 1].
double s_lambda(double t, double lambda);

// Normalized tail integral of s_lambda^2 dt/t; 1 below 1/lambda, 0 above 1,
// smoothly decreasing in between.
double k_lambda(double t, double lambda);

// Wavelet generator sqrt(k(t/lambda) - k(t)); support (1/lambda^2, lambda).
double kappa_lambda(double t, double lambda);

// Scaling generator sqrt(k(t)).
double eta_lambda(double t, double lambda);

// Hybrid scaling generator for the low-(l, p) corner.
double eta_lambda_nu(double t, double tp, double lambda, double nu);

struct WaveletFamily {
    double lambda = 2;
    double nu = 2;
    int J0 = 0;
    int J0p = 0;
    int J = 0;  // ceil(log_lambda(L-1))
    int Jp = 0; // ceil(log_nu(P-1))
    BandLimit bandlimit;

    WaveletFamily() = default;
    WaveletFamily(const BandLimit& bl, double lambda_, double nu_, int J0_, int J0p_);

    int n_scales_j() const { return J - J0 + 1; }
    int n_scales_jp() const { return Jp - J0p + 1; }
};

// Real harmonic windows; the sqrt((2l+1)/(4 pi)) factor is included.
// psi(j, j') and phi are indexed [p * L + l].
struct HarmonicWindows {
    WaveletFamily family;
    std::vector<std::vector<double>> psi; // [(j-J0) * n_scales_jp + (j'-J0p)]
    std::vector<double> phi;
    double admissibility_residual = 0; // worst |identity - 1| over (l, p)

    const std::vector<double>& psi_at(int j, int jp) const
    {
        return psi[std::size_t(j - family.J0) * family.n_scales_jp() + (jp - family.J0p)];
    }
};

// Builds all windows and verifies admissibility; throws flag::numeric_error
// (reporting the worst offender) if the residual exceeds 1e-8.
HarmonicWindows build_windows(const WaveletFamily& family);

} // namespace flag
