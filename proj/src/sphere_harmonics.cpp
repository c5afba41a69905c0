#include "flag/sphere_harmonics.hpp"
#include "flag/errors.hpp"
#include "flag/parallel.hpp"

#include <cmath>
#include <numbers>

namespace flag {

namespace {

constexpr double pi = std::numbers::pi;

// Rescaled storage keeps the sectoral start 2^{600 ie} above its true value
// so that sin(theta)^m never underflows before the upward recurrence can
// recover.  Needed beyond l ~ 1500; harmless below.
constexpr double rescale_up = 0x1p600;
constexpr double rescale_dn = 0x1p-600;

} // namespace

void legendre_row(int L, int m, double x, std::span<double> out)
{
    if (m < 0 || m >= L) throw std::invalid_argument("legendre_row: need 0 <= m < L");
    if (static_cast<int>(out.size()) < L - m)
        throw std::invalid_argument("legendre_row: output span too small");

    const double sx = std::sqrt((1.0 - x) * (1.0 + x)); // sin(theta) >= 0

    // sectoral P̄_m^m with running rescale
    double pmm = 1.0 / std::sqrt(4.0 * pi);
    int ie = 0;
    for (int q = 1; q <= m; ++q) {
        pmm *= -std::sqrt((2.0 * q + 1.0) / (2.0 * q)) * sx;
        if (std::abs(pmm) < rescale_dn && pmm != 0.0) {
            pmm *= rescale_up;
            ie -= 1;
        }
    }

    auto emit = [&](int l, double v, int e) {
        double r = v;
        for (int q = 0; q < -e; ++q) r *= rescale_dn; // underflow to 0 is fine
        out[l - m] = r;
    };

    emit(m, pmm, ie);
    if (m + 1 >= L) return;

    double pl1 = pmm;                                  // P̄_{l-1}, scaled by 2^{-600 ie}
    double pl = std::sqrt(2.0 * m + 3.0) * x * pmm;    // P̄_l at l = m+1
    emit(m + 1, pl, ie);

    for (int l = m + 2; l < L; ++l) {
        const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
        const double b = std::sqrt(((l - 1.0) * (l - 1.0) - double(m) * m)
                                   / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
        double pn = a * (x * pl - b * pl1);
        pl1 = pl;
        pl = pn;
        if (ie < 0 && std::abs(pl) > 1.0) { // recovered: fold one rescale step back
            pl *= rescale_dn;
            pl1 *= rescale_dn;
            ie += 1;
        }
        emit(l, pl, ie);
    }
}

std::complex<double> ylm(int l, int m, double theta, double phi)
{
    const int am = std::abs(m);
    if (l < 0 || am > l) throw std::invalid_argument("ylm: need |m| <= l");
    std::vector<double> row(l + 1 - am);
    legendre_row(l + 1, am, std::cos(theta), row);
    double p = row[l - am];
    if (m < 0 && (am & 1)) p = -p;
    return std::polar(1.0, m * phi) * p;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    nodes.resize(n);
    weights.resize(n);
    const int mhalf = (n + 1) / 2;
    for (int i = 0; i < mhalf; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                converged = true;
                break;
            }
        }
        if (!converged) throw numeric_error("gauss_legendre: Newton failed to converge");
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

SphereSampling make_sphere_sampling(int L)
{
    if (L < 1) throw std::invalid_argument("make_sphere_sampling: L must be >= 1");
    SphereSampling s;
    s.L = L;

    std::vector<double> gl_nodes, gl_weights;
    gauss_legendre(L, gl_nodes, gl_weights);
    // colatitudes increasing => z = cos decreasing
    s.thetas.resize(L);
    s.theta_weights.resize(L);
    s.z.resize(L);
    for (int j = 0; j < L; ++j) {
        s.z[j] = gl_nodes[L - 1 - j];
        s.thetas[j] = std::acos(s.z[j]);
        s.theta_weights[j] = gl_weights[L - 1 - j];
    }

    const int nphi = 2 * L - 1;
    s.phis.resize(nphi);
    for (int k = 0; k < nphi; ++k) s.phis[k] = 2.0 * pi * k / nphi;

    const std::size_t tri = std::size_t(L) * (L + 1) / 2;
    s.plm.assign(std::size_t(L) * tri, 0.0);
    parallel_for(L, [&](std::size_t j) {
        std::vector<double> row(L);
        for (int m = 0; m < L; ++m) {
            legendre_row(L, m, s.z[j], row);
            for (int l = m; l < L; ++l)
                s.plm[j * tri + std::size_t(l) * (l + 1) / 2 + m] = row[l - m];
        }
    });
    return s;
}

std::vector<std::complex<double>> sht_forward(std::span<const std::complex<double>> samples,
                                              const SphereSampling& s)
{
    const int L = s.L;
    const int nphi = s.n_phi();
    if (samples.size() != s.n_samples())
        throw std::invalid_argument("sht_forward: grid shape mismatch");

    // longitude DFT per row: G[j][m] = (2 pi / nphi) sum_k f e^{-i m phi_k}
    std::vector<std::complex<double>> omega(nphi); // e^{-2 pi i t / nphi}
    for (int t = 0; t < nphi; ++t)
        omega[t] = std::polar(1.0, -2.0 * pi * t / nphi);
    const int nm = 2 * L - 1; // m = -(L-1) .. L-1, stored at m + L-1
    std::vector<std::complex<double>> G(std::size_t(L) * nm);
    parallel_for(L, [&](std::size_t j) {
        const std::complex<double>* row = samples.data() + j * nphi;
        for (int m = -(L - 1); m <= L - 1; ++m) {
            const int step = ((m % nphi) + nphi) % nphi;
            std::complex<double> acc = 0;
            int idx = 0;
            for (int k = 0; k < nphi; ++k) {
                acc += row[k] * omega[idx];
                idx += step;
                if (idx >= nphi) idx -= nphi;
            }
            G[j * nm + (m + L - 1)] = acc * (2.0 * pi / nphi);
        }
    });

    // colatitude quadrature against P̄_l^{|m|}
    const std::size_t tri = std::size_t(L) * (L + 1) / 2;
    std::vector<std::complex<double>> coeffs(std::size_t(L) * L, 0.0);
    parallel_for(nm, [&](std::size_t mi) {
        const int m = static_cast<int>(mi) - (L - 1);
        const int am = std::abs(m);
        const double msign = (m < 0 && (am & 1)) ? -1.0 : 1.0;
        for (int j = 0; j < L; ++j) {
            const std::complex<double> g = G[j * nm + mi] * (s.theta_weights[j] * msign);
            const double* prow = s.plm.data() + j * tri;
            for (int l = am; l < L; ++l)
                coeffs[sh_index(l, m)] += g * prow[std::size_t(l) * (l + 1) / 2 + am];
        }
    });
    return coeffs;
}

std::vector<std::complex<double>> sht_inverse(std::span<const std::complex<double>> coeffs,
                                              const SphereSampling& s)
{
    const int L = s.L;
    const int nphi = s.n_phi();
    if (coeffs.size() != std::size_t(L) * L)
        throw std::invalid_argument("sht_inverse: coefficient count mismatch");

    const int nm = 2 * L - 1;
    const std::size_t tri = std::size_t(L) * (L + 1) / 2;

    // S[j][m] = sum_l f_{lm} P̄_l^{|m|}(z_j)
    std::vector<std::complex<double>> S(std::size_t(L) * nm, 0.0);
    parallel_for(L, [&](std::size_t j) {
        const double* prow = s.plm.data() + j * tri;
        for (int m = -(L - 1); m <= L - 1; ++m) {
            const int am = std::abs(m);
            const double msign = (m < 0 && (am & 1)) ? -1.0 : 1.0;
            std::complex<double> acc = 0;
            for (int l = am; l < L; ++l)
                acc += coeffs[sh_index(l, m)] * prow[std::size_t(l) * (l + 1) / 2 + am];
            S[j * nm + (m + L - 1)] = acc * msign;
        }
    });

    std::vector<std::complex<double>> omega(nphi); // e^{+2 pi i t / nphi}
    for (int t = 0; t < nphi; ++t)
        omega[t] = std::polar(1.0, 2.0 * pi * t / nphi);
    std::vector<std::complex<double>> samples(s.n_samples());
    parallel_for(L, [&](std::size_t j) {
        std::complex<double>* row = samples.data() + j * nphi;
        for (int k = 0; k < nphi; ++k) row[k] = S[j * nm + (L - 1)]; // m = 0 term
        for (int m = 1; m <= L - 1; ++m) {
            const std::complex<double> sp = S[j * nm + (m + L - 1)];
            const std::complex<double> sn = S[j * nm + (-m + L - 1)];
            int idx = 0;
            const int step = m % nphi;
            for (int k = 0; k < nphi; ++k) {
                row[k] += sp * omega[idx] + sn * std::conj(omega[idx]);
                idx += step;
                if (idx >= nphi) idx -= nphi;
            }
        }
    });
    return samples;
}

std::vector<std::complex<double>> axisym_convolve(std::span<const std::complex<double>> coeffs,
                                                  std::span<const std::complex<double>> h_l0)
{
    const std::size_t L2 = coeffs.size();
    int L = static_cast<int>(std::lround(std::sqrt(double(L2))));
    if (std::size_t(L) * L != L2)
        throw std::invalid_argument("axisym_convolve: coefficient count is not L^2");
    if (h_l0.size() != std::size_t(L))
        throw std::invalid_argument("axisym_convolve: kernel length mismatch");
    std::vector<std::complex<double>> out(L2);
    for (int l = 0; l < L; ++l) {
        const std::complex<double> c = std::sqrt(4.0 * pi / (2.0 * l + 1.0)) * std::conj(h_l0[l]);
        for (int m = -l; m <= l; ++m) out[sh_index(l, m)] = coeffs[sh_index(l, m)] * c;
    }
    return out;
}

} // namespace flag
