#pragma once

// Test-side oracles, deliberately independent of the library's own numerics:
// Romberg integration for smooth integrands, composite Gauss-Kronrod in long
// double for oscillatory ones, a Miller-recurrence spherical Bessel, and
// closed-form low-order spherical harmonics.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

// Romberg on [a, b]; the integrand must be smooth.
inline double romberg(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-13, int max_level = 22)
{
    std::vector<double> prev, curr;
    double h = b - a;
    prev.push_back(0.5 * h * (f(a) + f(b)));
    for (int level = 1; level <= max_level; ++level) {
        const std::int64_t n = std::int64_t(1) << level;
        double sum = 0;
        for (std::int64_t i = 1; i < n; i += 2) sum += f(a + i * (b - a) / n);
        curr.assign(level + 1, 0.0);
        curr[0] = 0.5 * prev[0] + (b - a) / n * sum;
        double fac = 1;
        for (int m = 1; m <= level; ++m) {
            fac *= 4;
            curr[m] = curr[m - 1] + (curr[m - 1] - prev[m - 1]) / (fac - 1);
        }
        if (level > 3 && std::abs(curr[level] - prev[level - 1]) < tol * (1 + std::abs(curr[level])))
            return curr[level];
        prev = curr;
    }
    return curr.back();
}

// 15-point Gauss-Kronrod panel in long double.
inline long double gk15(const std::function<long double(long double)>& f, long double a,
                        long double b, long double& err)
{
    static const long double xk[15] = {
        -0.991455371120812639206854697526329L, -0.949107912342758524526189684047851L,
        -0.864864423359769072789712788640926L, -0.741531185599394439863864773280788L,
        -0.586087235467691130294144838258730L, -0.405845151377397166906606412076961L,
        -0.207784955007898467600689403773245L, 0.0L,
        0.207784955007898467600689403773245L,  0.405845151377397166906606412076961L,
        0.586087235467691130294144838258730L,  0.741531185599394439863864773280788L,
        0.864864423359769072789712788640926L,  0.949107912342758524526189684047851L,
        0.991455371120812639206854697526329L};
    static const long double wk[15] = {
        0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
        0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
        0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
        0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L,
        0.204432940075298892414161999234649L, 0.190350578064785409913256402421014L,
        0.169004726639267902826583426598550L, 0.140653259715525918745189590510238L,
        0.104790010322250183839876322541518L, 0.063092092629978553290700663189204L,
        0.022935322010529224963732008058970L};
    static const long double wg[7] = {
        0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
        0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L,
        0.381830050505118944950369775488975L, 0.279705391489276667901467771423780L,
        0.129484966168869693270611432679082L};
    const long double c = 0.5L * (a + b), h = 0.5L * (b - a);
    long double sk = 0, sg = 0;
    for (int i = 0; i < 15; ++i) {
        const long double v = f(c + h * xk[i]);
        sk += wk[i] * v;
        if (i & 1) sg += wg[i / 2] * v;
    }
    sk *= h;
    sg *= h;
    err = fabsl(sk - sg);
    return sk;
}

inline long double gk_adapt(const std::function<long double(long double)>& f, long double a,
                            long double b, long double rel_tol, int depth)
{
    long double err = 0;
    const long double s = gk15(f, a, b, err);
    if (err <= rel_tol * (fabsl(s) + 1e-300L) || depth <= 0) return s;
    const long double c = 0.5L * (a + b);
    return gk_adapt(f, a, c, rel_tol, depth - 1) + gk_adapt(f, c, b, rel_tol, depth - 1);
}

// Composite adaptive quadrature with panels matched to the oscillation
// wavenumber k (period splitting keeps the adaptive depth small; panel
// estimates are controlled relative to the local panel magnitude).
inline long double integrate_oscillatory(const std::function<long double(long double)>& f,
                                         long double a, long double b, double k,
                                         long double rel_tol = 1e-15L)
{
    int nseg = static_cast<int>(std::ceil(static_cast<double>((b - a)) * std::abs(k) / 3.0)) + 4;
    if (nseg > 40000) nseg = 40000;
    const long double h = (b - a) / nseg;
    long double s = 0;
    for (int i = 0; i < nseg; ++i)
        s += gk_adapt(f, a + i * h, a + (i + 1) * h, rel_tol, 12);
    return s;
}

// Spherical Bessel j_l(x): upward recurrence where stable, Miller downward
// otherwise, power series at tiny argument.
inline long double sph_bessel(int l, long double x)
{
    if (x < 0) return (l & 1) ? -sph_bessel(l, -x) : sph_bessel(l, -x);
    if (x < 1e-8L) {
        long double v = 1.0L;
        for (int m = 1; m <= l; ++m) v *= x / (2 * m + 1);
        return v * (1.0L - x * x / (2.0L * (2 * l + 3)));
    }
    if (x > 1.1L * l + 10.0L) {
        long double jm = sinl(x) / x;
        if (l == 0) return jm;
        long double jc = sinl(x) / (x * x) - cosl(x) / x;
        for (int m = 1; m < l; ++m) {
            const long double jn = (2 * m + 1) / x * jc - jm;
            jm = jc;
            jc = jn;
        }
        return jc;
    }
    const int m0 = l + 24 + static_cast<int>(x);
    long double jp = 0.0L, jc = 1e-30L, res = 0.0L;
    for (int m = m0; m >= 0; --m) {
        const long double jm = (2 * m + 3) / x * jc - jp;
        jp = jc;
        jc = jm;
        if (m == l) res = jc;
        if (fabsl(jc) > 1e280L) {
            jc *= 1e-280L;
            jp *= 1e-280L;
            res *= 1e-280L;
        }
    }
    return res * (sinl(x) / x) / jc;
}

// Closed-form orthonormal spherical harmonics for l <= 2 (Condon-Shortley).
inline std::complex<double> ylm_closed(int l, int m, double theta, double phi)
{
    const double st = std::sin(theta), ct = std::cos(theta);
    const std::complex<double> eip = std::polar(1.0, phi);
    const double pi = 3.14159265358979323846;
    switch (l * 10 + std::abs(m)) {
        case 0: return 1.0 / std::sqrt(4 * pi);
        case 10: return std::sqrt(3 / (4 * pi)) * ct;
        case 11: {
            std::complex<double> v = -std::sqrt(3 / (8 * pi)) * st * eip;
            return m > 0 ? v : -std::conj(v);
        }
        case 20: return std::sqrt(5 / (16 * pi)) * (3 * ct * ct - 1);
        case 21: {
            std::complex<double> v = -std::sqrt(15 / (8 * pi)) * st * ct * eip;
            return m > 0 ? v : -std::conj(v);
        }
        case 22: {
            std::complex<double> v = std::sqrt(15 / (32 * pi)) * st * st * eip * eip;
            return m > 0 ? v : std::conj(v);
        }
    }
    return 0;
}

// Deterministic test rng (splitmix64), decoupled from the library's.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t u64()
    {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return (u64() >> 11) * 0x1.0p-53; }
    double sym() { return 2.0 * uniform() - 1.0; } // [-1, 1)
    std::complex<double> csym() { return {sym(), sym()}; }
};

} // namespace oracle
