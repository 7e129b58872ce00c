#pragma once

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace levitrap::detail {

// Adaptive Gauss-Kronrod on `panels` log-spaced sub-intervals of [a, b], a > 0.
template <class F>
double integrate_log_panels(F&& f, double a, double b, int panels, double rel_tol,
                            unsigned max_depth = 15) {
  using boost::math::quadrature::gauss_kronrod;
  const double ratio = std::pow(b / a, 1.0 / panels);
  double total = 0.0;
  double lo = a;
  for (int i = 0; i < panels; ++i) {
    const double hi = (i + 1 == panels) ? b : lo * ratio;
    total += gauss_kronrod<double, 15>::integrate(f, lo, hi, max_depth, rel_tol);
    lo = hi;
  }
  return total;
}

template <class F>
double integrate_gk(F&& f, double a, double b, double rel_tol, unsigned max_depth = 15) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 15>::integrate(f, a, b, max_depth, rel_tol);
}

}  // namespace levitrap::detail
