#include "flag/flaglet_transform.hpp"
#include "flag/parallel.hpp"

#include <cmath>
#include <numbers>

namespace flag {

namespace {

constexpr double pi = std::numbers::pi;

void check_family(const WaveletFamily& a, const BandLimit& b, const char* who)
{
    if (a.bandlimit.L != b.L || a.bandlimit.P != b.P || a.bandlimit.tau != b.tau)
        throw std::invalid_argument(std::string(who) + ": band-limit mismatch");
}

// out_{lmp} = sqrt(4 pi/(2l+1)) f_{lmp} * window[p * L + l]  (windows real)
FlagCoefficients window_product(const FlagCoefficients& f, const std::vector<double>& window)
{
    const int L = f.bandlimit.L;
    const int P = f.bandlimit.P;
    FlagCoefficients out(f.bandlimit);
    const std::size_t L2 = std::size_t(L) * L;
    for (int p = 0; p < P; ++p) {
        for (int l = 0; l < L; ++l) {
            const double c = std::sqrt(4.0 * pi / (2.0 * l + 1.0)) * window[std::size_t(p) * L + l];
            if (c == 0.0) continue;
            const std::size_t base = p * L2 + std::size_t(l) * l + l;
            for (int m = -l; m <= l; ++m) out.values[base + m] = f.values[base + m] * c;
        }
    }
    return out;
}

} // namespace

FlagletCoefficients flaglet_analysis(const FlagCoefficients& f, const HarmonicWindows& windows)
{
    check_family(windows.family, f.bandlimit, "flaglet_analysis");
    FlagletCoefficients out;
    out.family = windows.family;
    out.scaling = window_product(f, windows.phi);
    out.wavelets.resize(windows.psi.size());
    parallel_for(windows.psi.size(), [&](std::size_t i) {
        out.wavelets[i] = window_product(f, windows.psi[i]);
    });
    return out;
}

FlagCoefficients flaglet_synthesis(const FlagletCoefficients& coeffs,
                                   const HarmonicWindows& windows)
{
    const WaveletFamily& fam = windows.family;
    if (coeffs.family.lambda != fam.lambda || coeffs.family.nu != fam.nu
        || coeffs.family.J0 != fam.J0 || coeffs.family.J0p != fam.J0p
        || coeffs.family.bandlimit.L != fam.bandlimit.L
        || coeffs.family.bandlimit.P != fam.bandlimit.P)
        throw std::invalid_argument("flaglet_synthesis: family mismatch");
    if (coeffs.wavelets.size() != windows.psi.size())
        throw std::invalid_argument("flaglet_synthesis: scale count mismatch");

    const int L = fam.bandlimit.L;
    const int P = fam.bandlimit.P;
    const std::size_t L2 = std::size_t(L) * L;
    FlagCoefficients f(fam.bandlimit);

    auto accumulate = [&](const FlagCoefficients& w, const std::vector<double>& window) {
        for (int p = 0; p < P; ++p) {
            for (int l = 0; l < L; ++l) {
                const double c =
                    std::sqrt(4.0 * pi / (2.0 * l + 1.0)) * window[std::size_t(p) * L + l];
                if (c == 0.0) continue;
                const std::size_t base = p * L2 + std::size_t(l) * l + l;
                for (int m = -l; m <= l; ++m) f.values[base + m] += w.values[base + m] * c;
            }
        }
    };

    accumulate(coeffs.scaling, windows.phi);
    for (std::size_t i = 0; i < windows.psi.size(); ++i)
        accumulate(coeffs.wavelets[i], windows.psi[i]);
    return f;
}

FlagCoefficients flaglet_harmonic(const HarmonicWindows& windows, int j, int jp, double s)
{
    const WaveletFamily& fam = windows.family;
    if (j < fam.J0 || j > fam.J || jp < fam.J0p || jp > fam.Jp)
        throw std::invalid_argument("flaglet_harmonic: scale out of range");
    if (s < 0) throw std::invalid_argument("flaglet_harmonic: s must be >= 0");

    const int L = fam.bandlimit.L;
    const int P = fam.bandlimit.P;
    const std::vector<double>& w = windows.psi_at(j, jp);

    std::vector<double> ks(P);
    laguerre_basis_row(P, s, fam.bandlimit.tau, ks);

    FlagCoefficients out(fam.bandlimit);
    for (int p = 0; p < P; ++p)
        for (int l = 0; l < L; ++l)
            out.at(p, l, 0) = w[std::size_t(p) * L + l] * ks[p];
    return out;
}

std::vector<double> render_flaglet(const HarmonicWindows& windows, int j, int jp, double s,
                                   const BallGrid& grid)
{
    check_family(windows.family, grid.bandlimit, "render_flaglet");
    FlagCoefficients coeffs = flaglet_harmonic(windows, j, jp, s);
    auto samples = flag_inverse(coeffs, grid);
    std::vector<double> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) out[i] = samples[i].real();
    return out;
}

} // namespace flag
