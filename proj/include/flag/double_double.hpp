#pragma once

// Minimal double-double arithmetic (Dekker/Knuth error-free transforms),
// ~32 significant digits.  Used where alternating sums cancel by many
// orders of magnitude, e.g. the Laguerre-to-Bessel projection.

#include <cmath>

namespace flag {

struct dd {
    double hi = 0, lo = 0;

    dd() = default;
    dd(double a) : hi(a), lo(0) {}
    dd(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

inline dd two_sum(double a, double b)
{
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd quick_two_sum(double a, double b)
{
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b)
{
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b)
{
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b)
{
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b)
{
    double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    double q2 = r.hi / b.hi;
    r = r - b * dd(q2);
    double q3 = r.hi / b.hi;
    return quick_two_sum(q1, q2) + dd(q3);
}

inline dd& operator+=(dd& a, dd b) { return a = a + b; }
inline dd& operator-=(dd& a, dd b) { return a = a - b; }
inline dd& operator*=(dd& a, dd b) { return a = a * b; }
inline dd& operator/=(dd& a, dd b) { return a = a / b; }

inline dd dd_sqrt(dd a)
{
    if (a.hi <= 0) return dd(0);
    double y0 = 1.0 / std::sqrt(a.hi);
    dd y(y0);
    for (int it = 0; it < 2; ++it)
        y = y * (dd(1.5) - dd(0.5) * a * y * y); // Newton for 1/sqrt
    return a * y;
}

} // namespace flag
