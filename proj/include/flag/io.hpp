#pragma once

// File formats.
//
// FLAG01 container (little-endian):
//   bytes 0-5   magic "FLAG01"
//   bytes 6-13  L   (uint64)
//   bytes 14-21 P   (uint64; for kind::bessel this is the wavenumber count)
//   bytes 22-29 tau (float64)
//   byte  30    flags: 0 complex coeffs, 1 real coeffs, 2 complex samples,
//               3 real samples, 'W' (0x57) window, 'B' (0x42) Fourier-Bessel
//   payload     complex float64 pairs (re, im), count from the flags byte:
//               coeffs  P*L^2   at index p L^2 + l^2 + l + m
//               samples P*L*(2L-1) shell-major (shell, colatitude, longitude)
//               window  P*L     at index p L + l
//               bessel  L^2*Nk  at index (l^2 + l + m) Nk + ik
//
// Catalogs are CSV with header "r,theta,phi" or "r,theta,phi,weight",
// radians, one point per line, 17 significant digits on output.

#include "flag/flag_transform.hpp"
#include "flag/flaglet_transform.hpp"
#include "flag/fourier_bessel.hpp"
#include "flag/voidfinder.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace flag {

enum class Flag01Kind : std::uint8_t {
    coeffs_complex = 0,
    coeffs_real = 1,
    samples_complex = 2,
    samples_real = 3,
    window = 0x57,
    bessel = 0x42,
};

struct Flag01File {
    std::uint64_t L = 0;
    std::uint64_t P = 0; // wavenumber count for kind bessel
    double tau = 1;
    Flag01Kind kind = Flag01Kind::coeffs_complex;
    std::vector<std::complex<double>> payload;
};

void write_flag01(const std::filesystem::path& path, const Flag01File& file);
Flag01File read_flag01(const std::filesystem::path& path);

// FlagCoefficients in a FLAG01 container (kind coeffs_*).
void write_coefficients(const std::filesystem::path& path, const FlagCoefficients& coeffs,
                        bool real_signal = false);
FlagCoefficients read_coefficients(const std::filesystem::path& path);

// Ball samples in a FLAG01 container (kind samples_*).
void write_samples(const std::filesystem::path& path, const BandLimit& bl,
                   std::span<const std::complex<double>> samples, bool real_signal = false);
std::pair<BandLimit, std::vector<std::complex<double>>> read_samples(
    const std::filesystem::path& path);

// Harmonic windows: one FLAG01 window file per scale plus a JSON manifest.
void write_windows(const std::filesystem::path& dir, const HarmonicWindows& windows);

// Flaglet coefficients: a directory of FLAG01 files plus a JSON manifest.
void write_flaglet_dir(const std::filesystem::path& dir, const FlagletCoefficients& coeffs);
FlagletCoefficients read_flaglet_dir(const std::filesystem::path& dir);

// Fourier-Bessel export: JSON manifest (k_grid, L, P, tau) + FLAG01 payload.
void write_bessel(const std::filesystem::path& manifest_path, const BesselCoefficients& coeffs,
                  int source_P, double tau);
BesselCoefficients read_bessel(const std::filesystem::path& manifest_path);

void write_catalog_csv(const std::filesystem::path& path, const Catalog& catalog);
Catalog read_catalog_csv(const std::filesystem::path& path, double R);

// Void candidates with run metadata as a JSON document.
void write_void_catalog(const std::filesystem::path& path,
                        const std::vector<VoidCandidate>& voids, const WaveletFamily& family,
                        double threshold_sigma, std::int64_t seed_or_minus1);

// Grayscale rasters for visual inspection.
void write_pgm(const std::filesystem::path& path, int width, int height,
               std::span<const double> values);

// Equirectangular map of one spherical shell (L x 2L-1 pixels).
void write_shell_slice_pgm(const std::filesystem::path& path, const BallGrid& grid,
                           std::span<const double> ball_values, int shell);

// Meridian-plane slice (the phi = phi0 / phi0 + pi plane), n x n pixels.
void write_meridian_slice_pgm(const std::filesystem::path& path, const BallGrid& grid,
                              std::span<const double> ball_values, double phi0, int n);

} // namespace flag
