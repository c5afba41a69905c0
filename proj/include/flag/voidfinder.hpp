#pragma once

// Catalog-to-void-candidates pipeline: mock Poisson catalogs with planted
// underdense spheres, voxelization onto the ball grid, flaglet decomposition
// of the overdensity field, and extraction of candidates from strongly
// negative wavelet responses.

#include "flag/flag_transform.hpp"
#include "flag/flaglet_transform.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace flag {

struct Catalog {
    std::vector<BallPoint> points;
    std::vector<double> weights; // empty = unit weights
    double R = 1;                // survey radius

    double total_weight() const;
};

struct VoidSpec {
    BallPoint center;
    double radius = 0;
    double depth = 1; // intensity inside reduced by (1 - depth)
};

// Poisson catalog of expected size n_galaxies on the ball of radius R, with
// the intensity reduced by (1 - depth) inside each void sphere (multiplied
// where spheres overlap).  Byte-for-byte deterministic given the seed.
Catalog make_mock(std::int64_t n_galaxies, const std::vector<VoidSpec>& voids, double R,
                  std::uint64_t seed);

struct DensityField {
    BallGrid grid;
    std::vector<double> delta;  // overdensity per grid node, sample layout
    std::vector<double> expected; // nbar * cell volume per node (shot-noise scale)
    double nbar = 0;            // mean density (total weight / covered volume)
    double total_weight = 0;
    std::int64_t dropped = 0;   // points outside [0, R], reported and dropped
    bool no_data = false;       // empty catalog: delta left at 0
};

// Counts points in the coordinate-wise nearest-node cells (cell volumes are
// the quadrature weight products) and converts to overdensity.  The
// volume-weighted mean of delta is zero by construction.
DensityField voxelize(const Catalog& catalog, const BallGrid& grid);

struct VoidCandidate {
    BallPoint center;
    int j = 0, jp = 0;           // scale pair
    double response = 0;         // wavelet coefficient value, < 0
    double effective_radius = 0; // from the rendered flaglet lobe size
    double significance = 0;     // response / (per-scale robust std-dev)
    std::vector<VoidCandidate> children; // shallower candidates merged in
};

// Per scale pair: real-space wavelet coefficient map, robust sigma
// (MAD * 1.4826), grid-local minima below -threshold_sigma * sigma.
// Candidates merge across scales by center containment, deeper response
// wins.  Result is sorted deepest-first.
//
// Cells whose expected occupancy under the mean density is below one galaxy
// carry shot noise only; their delta is zeroed before the transform so that
// the tiny inner Voronoi cells cannot flood the candidate list.
std::vector<VoidCandidate> find_voids(const DensityField& field, const WaveletFamily& family,
                                      double threshold_sigma);

// Lobe size of the rendered flaglet at mid-radius: half-widths at half
// maximum radially and tangentially, combined into a volume-equivalent
// radius.  Used for VoidCandidate::effective_radius and scale matching.
double flaglet_effective_radius(const HarmonicWindows& windows, int j, int jp,
                                const BallGrid& grid);

} // namespace flag
