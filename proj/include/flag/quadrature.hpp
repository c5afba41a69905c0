#pragma once

#include <functional>

namespace flag {

// Adaptive Gauss-Kronrod (G7, K15) integration of a smooth integrand.
// Subdivides until the Kronrod-Gauss discrepancy on each panel is below
// abs_tol scaled by the panel fraction.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol);

} // namespace flag
