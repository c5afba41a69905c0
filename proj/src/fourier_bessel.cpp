#include "flag/fourier_bessel.hpp"
#include "flag/double_double.hpp"
#include "flag/parallel.hpp"

#include <cmath>
#include <numbers>

namespace flag {

namespace {

constexpr double pi = std::numbers::pi;
const dd dd_pi(3.141592653589793116, 1.2246467991473531772e-16);

// Everything below works in scale-free units x = r/tau, ktilde = tau k:
//   M_{j,l}(kt) = Int_0^inf x^j j_l(kt x) e^{-x/2} dx = tau^{-(j+1)} I_{j,l}
// so that mu^l_j(k) = tau^{3/2} M_{j,l}(tau k).  The closed form is
//   M = sqrt(pi) 2^j kt^l Gamma(j+l+1)/Gamma(l+3/2) 2F1(a, b; c; z)
// with a=(j+l+1)/2, b=(j+l+2)/2, c=l+3/2, z=-4 kt^2.
//
// The 2F1 needs care: its raw series alternates in z < 0.  Three stable
// routes cover the plane:
//   - Euler transform (1-z)^{-j} 2F1(c-a, c-b; c; z): a finite sum whenever
//     l <= j-1; used for large |z| in that regime (the last term dominates,
//     so the alternation is harmless there).
//   - Pfaff transform (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)): all series terms
//     positive for l >= j, geometric convergence for moderate |z|.
//   - 1/z connection formula for large |z| with l >= j: one of the two
//     series terminates, the other converges like (4 kt^2)^{-m}.

dd pow_int(dd base, int n)
{
    dd r(1.0);
    dd b = base;
    int e = n;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

// (1-z)^{-a} for a = n/2, z < 0
dd pow_one_minus_z(dd z, double a)
{
    dd omz = dd(1.0) - z;
    int ai = static_cast<int>(std::floor(a));
    dd p = dd(1.0) / pow_int(omz, ai);
    if (a - ai > 0.25) p = p / dd_sqrt(omz);
    return p;
}

dd hyp_euler(int j, int l, dd z)
{
    const double ca = 0.5 * (l - j + 2);
    const double cb = 0.5 * (l - j + 1);
    const double c = l + 1.5;
    const int n = (((l ^ j) & 1) == 0) ? static_cast<int>(std::lround(-ca))
                                       : static_cast<int>(std::lround(-cb));
    dd sum(1.0), term(1.0);
    for (int m = 0; m < n; ++m) {
        term = term * z * dd((ca + m) * (cb + m)) / dd((c + m) * (m + 1.0));
        sum += term;
    }
    return sum * pow_int(dd(1.0) / (dd(1.0) - z), j);
}

dd hyp_pfaff(int j, int l, dd z)
{
    const double a = 0.5 * (j + l + 1);
    const double cb = 0.5 * (l - j + 1); // c - b
    const double c = l + 1.5;
    const dd w = z / (z - dd(1.0));
    dd sum(1.0), term(1.0);
    for (int m = 0; m < 200000; ++m) {
        term = term * w * dd((a + m) * (cb + m)) / dd((c + m) * (m + 1.0));
        sum += term;
        if (std::abs(term.hi) < 1e-34 * std::abs(sum.hi)) break;
    }
    return sum * pow_one_minus_z(z, a);
}

dd hyp_connection(int j, int l, double z)
{
    const long double a = 0.5L * (j + l + 1);
    const long double b = 0.5L * (j + l + 2);
    const long double c = l + 1.5L;
    const long double u = 1.0L / z;
    auto series = [&](long double p1, long double p2, long double q) {
        long double sum = 1.0L, term = 1.0L;
        for (int m = 0; m < 10000; ++m) {
            term *= (p1 + m) * (p2 + m) / ((q + m) * (m + 1.0L)) * u;
            sum += term;
            if (std::abs((double)term) < 1e-21 * std::abs((double)sum)) break;
            if (p2 + m == 0.0L) break; // terminated
        }
        return sum;
    };
    // Gamma(b-a) = Gamma(1/2), Gamma(a-b) = Gamma(-1/2) = -2 sqrt(pi)
    const long double lg1 = lgammal(c) + lgammal(0.5L) - lgammal(b) - lgammal(c - a);
    const long double lg2 = lgammal(c) + lgammal(-0.5L) - lgammal(a) - lgammal(c - b);
    const long double t1 = expl(lg1 - a * logl(-z)) * series(a, a - c + 1.0L, 0.5L);
    const long double t2 = -expl(lg2 - b * logl(-z)) * series(b, b - c + 1.0L, 1.5L);
    return dd((double)(t1 + t2));
}

dd hyp_F(int j, int l, double ktilde)
{
    const dd z = -(dd(ktilde) * dd(ktilde) * dd(4.0));
    const double az = std::abs(z.hi);
    if (l <= j - 1 && az >= 4.0) return hyp_euler(j, l, z);
    if (az < 30.0) return hyp_pfaff(j, l, z);
    if (l >= j) return hyp_connection(j, l, z.hi);
    return hyp_euler(j, l, z);
}

// Gamma(l + 3/2) = sqrt(pi) prod_{i=0}^{l} (i + 1/2)
dd gamma_l_threehalf(int l)
{
    dd g = dd_sqrt(dd_pi);
    for (int i = 0; i <= l; ++i) g = g * dd(i + 0.5);
    return g;
}

dd moment_direct(int j, int l, double ktilde)
{
    dd pre = dd_sqrt(dd_pi) * pow_int(dd(2.0), j) * pow_int(dd(ktilde), l);
    dd num(1.0);
    for (int m = 2; m <= j + l; ++m) num = num * dd(double(m));
    pre = pre * (num / gamma_l_threehalf(l));
    return pre * hyp_F(j, l, ktilde);
}

// M_{j,l}(kt) for j = 2..jmax: two direct seeds, then the moment recurrence
//   (1/4 + kt^2) M_j = (j-1) M_{j-1} - ((j-1)(j-2) - l(l+1)) M_{j-2}
// (both homogeneous solutions grow at the same rate, so the ascent is stable).
std::vector<dd> moment_family(int jmax, int l, double ktilde)
{
    std::vector<dd> M(jmax + 1);
    M[2] = moment_direct(2, l, ktilde);
    if (jmax >= 3) M[3] = moment_direct(3, l, ktilde);
    const dd apk = dd(0.25) + dd(ktilde) * dd(ktilde);
    for (int j = 4; j <= jmax; ++j)
        M[j] = (dd(j - 1.0) * M[j - 1] - dd(double(j - 1) * (j - 2) - double(l) * (l + 1)) * M[j - 2])
               / apk;
    return M;
}

std::vector<dd> c_coeffs_dd(int p)
{
    std::vector<dd> c(p + 1);
    c[0] = dd(0.5 * (p + 2.0) * (p + 1.0));
    for (int j = 1; j <= p; ++j)
        c[j] = -(c[j - 1] * dd(double(p - j + 1)) / dd(double(j) * (j + 2)));
    return c;
}

dd projection_from_family(int p, const std::vector<dd>& M, const std::vector<dd>& c, double tau)
{
    dd sum(0.0);
    for (int j = 0; j <= p; ++j) sum += c[j] * M[j + 2];
    sum = sum / dd_sqrt(dd((p + 1.0) * (p + 2.0)));
    return sum * dd(tau * std::sqrt(tau));
}

void check_kt(double k, double tau, const char* who)
{
    if (!(k > 0)) throw std::invalid_argument(std::string(who) + ": k must be > 0");
    if (!(tau > 0)) throw std::invalid_argument(std::string(who) + ": tau must be > 0");
}

} // namespace

std::vector<double> c_coeffs(int p)
{
    if (p < 0) throw std::invalid_argument("c_coeffs: p must be >= 0");
    auto c = c_coeffs_dd(p);
    std::vector<double> out(p + 1);
    for (int j = 0; j <= p; ++j) out[j] = c[j].value();
    return out;
}

double moment_mu(int ell, int j, double k, double tau)
{
    if (ell < 0) throw std::invalid_argument("moment_mu: ell must be >= 0");
    if (j < 2)
        throw std::invalid_argument("moment_mu: j must be >= 2 (projection usage range)");
    check_kt(k, tau, "moment_mu");
    auto M = moment_family(j, ell, tau * k);
    return (M[j] * dd(tau * std::sqrt(tau))).value();
}

double projection_jlp(int ell, int p, double k, double tau)
{
    if (ell < 0 || p < 0) throw std::invalid_argument("projection_jlp: indices must be >= 0");
    check_kt(k, tau, "projection_jlp");
    auto M = moment_family(p + 2, ell, tau * k);
    auto c = c_coeffs_dd(p);
    return projection_from_family(p, M, c, tau).value();
}

ProjectionTable build_projection_table(int L, int P, std::span<const double> k_grid, double tau)
{
    if (L < 1 || P < 1) throw std::invalid_argument("build_projection_table: bad band-limits");
    if (k_grid.empty()) throw std::invalid_argument("build_projection_table: empty k_grid");
    for (double k : k_grid) check_kt(k, tau, "build_projection_table");

    ProjectionTable table;
    table.L = L;
    table.P = P;
    table.tau = tau;
    table.k_grid.assign(k_grid.begin(), k_grid.end());
    const std::size_t nk = k_grid.size();
    table.values.assign(std::size_t(L) * P * nk, 0.0);

    std::vector<std::vector<dd>> c(P);
    for (int p = 0; p < P; ++p) c[p] = c_coeffs_dd(p);

    parallel_for(std::size_t(L) * nk, [&](std::size_t idx) {
        const int l = static_cast<int>(idx / nk);
        const int ik = static_cast<int>(idx % nk);
        auto M = moment_family(P + 1, l, tau * k_grid[ik]);
        for (int p = 0; p < P; ++p)
            table.values[(std::size_t(l) * P + p) * nk + ik] =
                projection_from_family(p, M, c[p], tau).value();
    });
    return table;
}

BesselCoefficients flag_to_bessel(const FlagCoefficients& f, std::span<const double> k_grid)
{
    if (k_grid.empty()) throw std::invalid_argument("flag_to_bessel: empty k_grid");
    const int L = f.bandlimit.L;
    const int P = f.bandlimit.P;
    const std::size_t nk = k_grid.size();
    const std::size_t L2 = std::size_t(L) * L;

    ProjectionTable table = build_projection_table(L, P, k_grid, f.bandlimit.tau);

    BesselCoefficients out;
    out.L = L;
    out.k_grid.assign(k_grid.begin(), k_grid.end());
    out.values.assign(L2 * nk, 0.0);

    const double norm = std::sqrt(2.0 / pi);
    parallel_for(L2, [&](std::size_t lm) {
        const int l = static_cast<int>(std::sqrt(double(lm)));
        for (std::size_t ik = 0; ik < nk; ++ik) {
            std::complex<double> acc = 0;
            for (int p = 0; p < P; ++p)
                acc += f.values[p * L2 + lm] * table.values[(std::size_t(l) * P + p) * nk + ik];
            out.values[lm * nk + ik] = norm * acc;
        }
    });
    return out;
}

std::vector<double> log_k_grid(double k_min, double k_max, int n)
{
    if (!(k_min > 0) || !(k_max > k_min) || n < 2)
        throw std::invalid_argument("log_k_grid: need 0 < k_min < k_max and n >= 2");
    std::vector<double> k(n);
    const double step = std::log(k_max / k_min) / (n - 1);
    for (int i = 0; i < n; ++i) k[i] = k_min * std::exp(i * step);
    k.back() = k_max;
    return k;
}

} // namespace flag
