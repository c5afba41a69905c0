#include "flag/quadrature.hpp"
#include "flag/errors.hpp"

#include <cmath>

namespace flag {

namespace {

// 15-point Kronrod nodes/weights with embedded 7-point Gauss rule.
constexpr double xk[15] = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};
constexpr double wk[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};
constexpr double wg[7] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
    0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

double gk15(const std::function<double(double)>& f, double a, double b, double& err)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double sk = 0, sg = 0;
    for (int i = 0; i < 15; ++i) {
        const double v = f(c + h * xk[i]);
        sk += wk[i] * v;
        if (i & 1) sg += wg[i / 2] * v;
    }
    sk *= h;
    sg *= h;
    err = std::abs(sk - sg);
    return sk;
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth)
{
    double err = 0;
    const double s = gk15(f, a, b, err);
    if (err <= tol || depth >= 48) {
        if (depth >= 48 && err > 1e3 * tol)
            throw numeric_error("integrate_adaptive: recursion limit without convergence");
        return s;
    }
    const double c = 0.5 * (a + b);
    return adapt(f, a, c, 0.5 * tol, depth + 1) + adapt(f, c, b, 0.5 * tol, depth + 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol)
{
    if (a == b) return 0.0;
    return adapt(f, a, b, abs_tol, 0);
}

} // namespace flag
