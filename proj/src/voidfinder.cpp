#include "flag/voidfinder.hpp"
#include "flag/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace flag {

namespace {

constexpr double pi = std::numbers::pi;

// splitmix64: tiny, seedable, identical on every platform (std::mt19937
// distributions are not bit-portable, and the mock contract is byte-exact
// determinism).
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next_u64()
    {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; } // [0, 1)
};

// Poisson by summing exponential waiting times in log space; O(lambda) but
// exact and deterministic.
std::int64_t poisson(Rng& rng, double lambda)
{
    std::int64_t n = -1;
    double t = 0;
    while (t < lambda) {
        t -= std::log(1.0 - rng.uniform());
        ++n;
    }
    return n;
}

struct Vec3 {
    double x, y, z;
};

Vec3 to_cartesian(const BallPoint& p)
{
    const double st = std::sin(p.theta);
    return {p.r * st * std::cos(p.phi), p.r * st * std::sin(p.phi), p.r * std::cos(p.theta)};
}

double dist(const Vec3& a, const Vec3& b)
{
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// index of the nearest value in a sorted array
int nearest_sorted(const std::vector<double>& v, double x)
{
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.begin()) return 0;
    if (it == v.end()) return static_cast<int>(v.size()) - 1;
    const int hi = static_cast<int>(it - v.begin());
    return (x - v[hi - 1] <= v[hi] - x) ? hi - 1 : hi;
}

double robust_sigma(std::vector<double> values)
{
    const std::size_t n = values.size();
    auto mid = values.begin() + n / 2;
    std::nth_element(values.begin(), mid, values.end());
    const double median = *mid;
    for (double& v : values) v = std::abs(v - median);
    std::nth_element(values.begin(), mid, values.end());
    return 1.4826 * *mid;
}

} // namespace

double Catalog::total_weight() const
{
    if (weights.empty()) return static_cast<double>(points.size());
    double w = 0;
    for (double wi : weights) w += wi;
    return w;
}

Catalog make_mock(std::int64_t n_galaxies, const std::vector<VoidSpec>& voids, double R,
                  std::uint64_t seed)
{
    if (n_galaxies < 1) throw std::invalid_argument("make_mock: n_galaxies must be positive");
    if (!(R > 0)) throw std::invalid_argument("make_mock: R must be > 0");
    std::vector<Vec3> centers;
    for (const auto& v : voids) {
        if (!(v.radius > 0)) throw std::invalid_argument("make_mock: void radius must be > 0");
        if (!(v.depth > 0 && v.depth <= 1))
            throw std::invalid_argument("make_mock: void depth must be in (0, 1]");
        if (v.center.r + v.radius > R)
            throw std::invalid_argument("make_mock: void sphere extends beyond the survey radius");
        centers.push_back(to_cartesian(v.center));
    }

    Rng rng(seed);
    const std::int64_t n = poisson(rng, static_cast<double>(n_galaxies));

    Catalog cat;
    cat.R = R;
    cat.points.reserve(n);
    for (std::int64_t i = 0; i < n; ++i) {
        BallPoint p;
        p.r = R * std::cbrt(rng.uniform());
        p.theta = std::acos(1.0 - 2.0 * rng.uniform());
        p.phi = 2.0 * pi * rng.uniform();
        double keep = 1.0;
        const Vec3 c = to_cartesian(p);
        for (std::size_t v = 0; v < voids.size(); ++v)
            if (dist(c, centers[v]) < voids[v].radius) keep *= 1.0 - voids[v].depth;
        const double u = rng.uniform(); // one draw per point regardless of depth,
                                        // so deepening a void only removes points
        if (u < keep) cat.points.push_back(p);
    }
    return cat;
}

DensityField voxelize(const Catalog& catalog, const BallGrid& grid)
{
    const int L = grid.bandlimit.L;
    const int P = grid.bandlimit.P;
    const int nphi = 2 * L - 1;
    const std::size_t shell = grid.sampling.n_samples();

    DensityField field;
    field.grid = grid;
    field.delta.assign(shell * P, 0.0);
    field.expected.assign(shell * P, 0.0);

    std::vector<double> counts(shell * P, 0.0);
    std::int64_t dropped = 0;
    double kept_weight = 0;
    for (std::size_t n = 0; n < catalog.points.size(); ++n) {
        const BallPoint& pt = catalog.points[n];
        const double w = catalog.weights.empty() ? 1.0 : catalog.weights[n];
        if (pt.r > catalog.R || pt.r < 0) {
            ++dropped;
            continue;
        }
        const int i = nearest_sorted(grid.radial.nodes, pt.r);
        const int j = nearest_sorted(grid.sampling.thetas, pt.theta);
        int k = static_cast<int>(std::lround(pt.phi / (2.0 * pi / nphi))) % nphi;
        if (k < 0) k += nphi;
        counts[i * shell + std::size_t(j) * nphi + k] += w;
        kept_weight += w;
    }
    field.dropped = dropped;
    field.total_weight = kept_weight;

    if (kept_weight <= 0) {
        field.no_data = true; // delta stays 0: avoids the -1 singularity
        field.nbar = 0;
        return field;
    }

    double volume = 0;
    for (int i = 0; i < P; ++i) volume += grid.radial.weights[i];
    volume *= 2.0 * (2.0 * pi); // theta weights sum to 2, phi weights to 2 pi
    field.nbar = kept_weight / volume;

    for (int i = 0; i < P; ++i) {
        for (int j = 0; j < L; ++j) {
            const double cell =
                grid.radial.weights[i] * grid.sampling.theta_weights[j] * (2.0 * pi / nphi);
            for (int k = 0; k < nphi; ++k) {
                const std::size_t idx = i * shell + std::size_t(j) * nphi + k;
                field.expected[idx] = field.nbar * cell;
                field.delta[idx] = counts[idx] / field.expected[idx] - 1.0;
            }
        }
    }
    return field;
}

double flaglet_effective_radius(const HarmonicWindows& windows, int j, int jp,
                                const BallGrid& grid)
{
    const double R = grid.radial.nodes.back();
    const int nr = 1024;
    std::vector<double> radii(nr);
    for (int i = 0; i < nr; ++i) radii[i] = R * (i + 0.5) / nr;

    // measure at mid-ball; radially quasi-DC scales (low j') cannot be
    // translated that far out, so fall back to the untranslated lobe
    FlagCoefficients coeffs = flaglet_harmonic(windows, j, jp, 0.5 * R);
    auto e = radial_energy_profile(coeffs, radii);
    {
        FlagCoefficients untranslated = flaglet_harmonic(windows, j, jp, 0.0);
        auto e0 = radial_energy_profile(untranslated, radii);
        double emax = 0, e0max = 0;
        for (int i = 0; i < nr; ++i) {
            emax = std::max(emax, e[i]);
            e0max = std::max(e0max, e0[i]);
        }
        if (emax < 1e-10 * e0max) {
            e = std::move(e0);
            coeffs = std::move(untranslated);
        }
    }
    int ipk = 0;
    for (int i = 1; i < nr; ++i)
        if (e[i] > e[ipk]) ipk = i;
    int lo = ipk, hi = ipk;
    while (lo > 0 && e[lo] > 0.5 * e[ipk]) --lo;
    while (hi < nr - 1 && e[hi] > 0.5 * e[ipk]) ++hi;
    const double hw_r = 0.5 * (radii[hi] - radii[lo]);

    // tangential squared-amplitude half-width at the peak radius
    const int nt = 1024;
    const double rpk = radii[ipk];
    std::vector<BallPoint> arc(nt);
    for (int i = 0; i < nt; ++i) arc[i] = {rpk, pi * i / (nt - 1.0), 0.0};
    auto aprof = flag_eval(coeffs, arc);
    const double apeak = std::norm(aprof[0]);
    int ti = 0;
    while (ti < nt - 1 && std::norm(aprof[ti]) > 0.5 * apeak) ++ti;
    const double hw_t = rpk * (pi * ti / (nt - 1.0));

    return std::cbrt(hw_r * hw_t * hw_t); // volume-equivalent lobe radius
}

std::vector<VoidCandidate> find_voids(const DensityField& field, const WaveletFamily& family,
                                      double threshold_sigma)
{
    if (!(threshold_sigma > 0))
        throw std::invalid_argument("find_voids: threshold_sigma must be > 0");
    const BallGrid& grid = field.grid;
    const int L = grid.bandlimit.L;
    const int P = grid.bandlimit.P;
    if (family.bandlimit.L != L || family.bandlimit.P != P)
        throw std::invalid_argument("find_voids: family band-limit does not match field grid");
    const int nphi = 2 * L - 1;
    const std::size_t shell = grid.sampling.n_samples();

    // Cells far below the mean galaxy spacing (the innermost shells) make the
    // Voronoi density estimate meaningless: a single point there produces a
    // delta spike of hundreds.  Zero them out of the analysis.
    constexpr double occupancy_floor = 0.05;
    std::vector<bool> informative(field.delta.size(), true);
    std::vector<std::complex<double>> samples(field.delta.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const bool ok = field.expected.empty() || field.expected[i] >= occupancy_floor;
        informative[i] = ok;
        samples[i] = ok ? field.delta[i] : 0.0;
    }
    FlagCoefficients f = flag_forward(samples, grid);

    HarmonicWindows windows = build_windows(family);
    FlagletCoefficients coeffs = flaglet_analysis(f, windows);

    std::vector<VoidCandidate> candidates;
    for (int j = family.J0; j <= family.J; ++j) {
        for (int jp = family.J0p; jp <= family.Jp; ++jp) {
            const double eff = flaglet_effective_radius(windows, j, jp, grid);
            // a kernel lobe holding fewer than ~10 expected galaxies cannot
            // distinguish a void from ordinary Poisson emptiness; skip the
            // scale (only applicable when the field came from a catalog)
            if (field.total_weight > 0
                && field.nbar * (4.0 * pi / 3.0) * eff * eff * eff < 10.0)
                continue;

            auto wav_map = flag_inverse(coeffs.wavelet(j, jp), grid);
            std::vector<double> map(wav_map.size());
            for (std::size_t i = 0; i < wav_map.size(); ++i) map[i] = wav_map[i].real();

            // shot noise in the response varies strongly with shell occupancy,
            // so the robust sigma is estimated per shell
            std::vector<double> sigma(P, 0.0);
            for (int i = 0; i < P; ++i) {
                std::vector<double> vals;
                vals.reserve(shell);
                for (std::size_t a = 0; a < shell; ++a)
                    if (informative[i * shell + a]) vals.push_back(map[i * shell + a]);
                if (vals.size() > shell / 2) sigma[i] = robust_sigma(std::move(vals));
            }
            for (int i = 0; i < P; ++i) {
                if (!(sigma[i] > 0)) continue;
                const double cut = -threshold_sigma * sigma[i];
                for (int t = 0; t < L; ++t) {
                    for (int k = 0; k < nphi; ++k) {
                        if (!informative[i * shell + std::size_t(t) * nphi + k]) continue;
                        const double v = map[i * shell + std::size_t(t) * nphi + k];
                        if (v >= cut) continue;
                        bool is_min = true;
                        for (int di = -1; di <= 1 && is_min; ++di) {
                            const int ii = i + di;
                            if (ii < 0 || ii >= P) continue;
                            for (int dt = -1; dt <= 1 && is_min; ++dt) {
                                const int tt = t + dt;
                                if (tt < 0 || tt >= L) continue;
                                for (int dk = -1; dk <= 1; ++dk) {
                                    if (di == 0 && dt == 0 && dk == 0) continue;
                                    const int kk = (k + dk + nphi) % nphi;
                                    if (map[ii * shell + std::size_t(tt) * nphi + kk] <= v) {
                                        is_min = false;
                                        break;
                                    }
                                }
                            }
                        }
                        if (!is_min) continue;
                        VoidCandidate c;
                        c.center = {grid.radial.nodes[i], grid.sampling.thetas[t],
                                    grid.sampling.phis[k]};
                        c.j = j;
                        c.jp = jp;
                        c.response = v;
                        c.significance = v / sigma[i];
                        c.effective_radius = eff;
                        candidates.push_back(std::move(c));
                    }
                }
            }
        }
    }

    // deepest-significance first; a shallower candidate whose center falls
    // inside a kept candidate's effective radius becomes its child
    std::sort(candidates.begin(), candidates.end(), [](const VoidCandidate& a,
                                                       const VoidCandidate& b) {
        return a.significance < b.significance;
    });
    std::vector<VoidCandidate> kept;
    for (auto& c : candidates) {
        const Vec3 cc = to_cartesian(c.center);
        VoidCandidate* parent = nullptr;
        for (auto& k : kept) {
            if (dist(cc, to_cartesian(k.center)) < std::max(k.effective_radius, c.effective_radius)) {
                parent = &k;
                break;
            }
        }
        if (parent)
            parent->children.push_back(std::move(c));
        else
            kept.push_back(std::move(c));
    }
    return kept;
}

} // namespace flag
