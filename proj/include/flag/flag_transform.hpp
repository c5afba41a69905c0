#pragma once

// Fourier-Laguerre transform on the ball B^3 = R+ x S^2.
//
// Basis Z_{lmp}(r, theta, phi) = K_p(r) Y_{lm}(theta, phi); the transform is
// separable, so the exact sphere and radial rules combine into an exact rule
// on the ball: P spherical shells at the radial quadrature nodes.
//
// Coefficient layout is p-major with the (l, m) block packed triangularly:
//     flatten(p, l, m) = p L^2 + l^2 + l + m
// Sample layout is shell-major:
//     sample(i, j, k)  = i L (2L-1) + j (2L-1) + k
// for shell i, colatitude j, longitude k.  The FLAG01 file container uses
// these orders verbatim.

#include "flag/radial_laguerre.hpp"
#include "flag/sphere_harmonics.hpp"

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace flag {

struct BandLimit {
    int L = 0;
    int P = 0;
    double tau = 1;

    BandLimit() = default;
    BandLimit(int L_, int P_, double tau_);
};

struct BallGrid {
    BandLimit bandlimit;
    SphereSampling sampling;
    RadialQuadrature radial;

    std::size_t n_samples() const { return sampling.n_samples() * radial.nodes.size(); }
};

BallGrid make_ball_grid(const BandLimit& bl);

struct FlagCoefficients {
    BandLimit bandlimit;
    std::vector<std::complex<double>> values; // size P * L^2

    FlagCoefficients() = default;
    explicit FlagCoefficients(const BandLimit& bl)
        : bandlimit(bl), values(std::size_t(bl.P) * bl.L * bl.L, 0.0) {}

    std::size_t flatten(int p, int l, int m) const
    {
        return std::size_t(p) * bandlimit.L * bandlimit.L + std::size_t(l) * l + l + m;
    }
    std::complex<double>& at(int p, int l, int m) { return values[flatten(p, l, m)]; }
    const std::complex<double>& at(int p, int l, int m) const { return values[flatten(p, l, m)]; }
};

struct BallPoint {
    double r = 0, theta = 0, phi = 0;
};

enum class ForwardOrder { angular_first, radial_first }; // algebraically identical

FlagCoefficients flag_forward(std::span<const std::complex<double>> samples, const BallGrid& grid,
                              ForwardOrder order = ForwardOrder::angular_first);

std::vector<std::complex<double>> flag_inverse(const FlagCoefficients& coeffs, const BallGrid& grid);

// Direct summation of the expansion at arbitrary points (no interpolation).
std::vector<std::complex<double>> flag_eval(const FlagCoefficients& coeffs,
                                            std::span<const BallPoint> points);

// (f * h)_{lmp} = sqrt(4 pi / (2l+1)) f_{lmp} conj(h_{l0p}); h axisymmetric,
// h_l0p indexed [p * L + l].
FlagCoefficients ball_convolve(const FlagCoefficients& f,
                               std::span<const std::complex<double>> h_l0p);

// Angularly integrated energy density per radius,
//   e(r) = r^2 sum_{lm} | sum_p f_{lmp} K_p(r) |^2 ,
// i.e. r^2 times the mean-square value over the sphere of radius r.  The r^2
// volume factor suppresses the coordinate-origin artifact of truncated radial
// expansions, so e(r) peaks where the signal actually lives.
std::vector<double> radial_energy_profile(const FlagCoefficients& coeffs,
                                          std::span<const double> radii);

// Total node count.  "equiangular" reproduces the P[(2L-1)(L-1)+1] count of
// the equiangular sphere scheme; "gauss" is this library's default grid.
std::int64_t sample_count(const BandLimit& bl, const std::string& scheme);

} // namespace flag
