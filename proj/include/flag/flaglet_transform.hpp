#pragma once

// Flaglet analysis/synthesis in Fourier-Laguerre space, plus real-space
// rendering of translated flaglets for slice plots and calibration.
//
// Analysis is the diagonal product
//     W^{Psi jj'}_{lmp} = sqrt(4 pi/(2l+1)) f_{lmp} Psi^{jj'}_{l0p}
// (same for the scaling part with Phi); synthesis is the adjoint sum, and
// admissibility of the windows makes synthesis(analysis(f)) = f exactly.

#include "flag/flag_transform.hpp"
#include "flag/tiling.hpp"

#include <vector>

namespace flag {

struct FlagletCoefficients {
    WaveletFamily family;
    FlagCoefficients scaling;                // W^Phi
    std::vector<FlagCoefficients> wavelets;  // [(j-J0) * n_scales_jp + (j'-J0p)]

    FlagCoefficients& wavelet(int j, int jp)
    {
        return wavelets[std::size_t(j - family.J0) * family.n_scales_jp() + (jp - family.J0p)];
    }
    const FlagCoefficients& wavelet(int j, int jp) const
    {
        return wavelets[std::size_t(j - family.J0) * family.n_scales_jp() + (jp - family.J0p)];
    }
};

FlagletCoefficients flaglet_analysis(const FlagCoefficients& f, const HarmonicWindows& windows);

FlagCoefficients flaglet_synthesis(const FlagletCoefficients& coeffs,
                                   const HarmonicWindows& windows);

// Fourier-Laguerre coefficients of the flaglet Psi^{jj'} translated radially
// by s (p-coefficients scaled by K_p(s)).
FlagCoefficients flaglet_harmonic(const HarmonicWindows& windows, int j, int jp, double s);

// Real-space samples of the translated flaglet on the grid.  Values are real
// by axisymmetry (m = 0 only).
std::vector<double> render_flaglet(const HarmonicWindows& windows, int j, int jp, double s,
                                   const BallGrid& grid);

} // namespace flag
