#pragma once

#include <functional>
#include <vector>

namespace sel {

struct GaussNodes {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss-Legendre nodes/weights on [-1, 1].
const GaussNodes& gauss_legendre(int n);

/// Gauss-Hermite nodes/weights for weight e^{-x^2} on (-inf, inf).
const GaussNodes& gauss_hermite(int n);

/// Composite Gauss-Legendre over [a, b] with `panels` equal panels.
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int order = 16);

/// Adaptive panel-bisection quadrature. Error per panel is estimated by
/// comparing two Gauss orders; panels are split until the global estimate
/// falls below tol. Throws QuadratureError with the worst panel when the
/// depth cap is exceeded.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol, int max_depth = 32);

}  // namespace sel
