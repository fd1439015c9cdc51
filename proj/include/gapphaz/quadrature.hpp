#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace gapphaz {

/// Adaptive Gauss-Kronrod integral of f over [a, b], split at every
/// breakpoint inside the interval so each piece is smooth. Used as an
/// independent check on the closed-form cumulative hazards. Each piece is
/// bisected at most `max_depth` times. Boost's error floor is 2 eps relative
/// to the unscaled sub-interval, so tolerances far below 1e-10 on short
/// pieces only buy recursion, not accuracy.
template <class F>
double integrate_piecewise(F&& f, double a, double b, std::span<const double> breakpoints,
                           double rel_tol = 1e-10, unsigned max_depth = 12) {
  if (!(b > a)) return 0.0;
  std::vector<double> cuts{a};
  for (double x : breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, cuts[i], cuts[i + 1], max_depth, rel_tol);
  }
  return total;
}

}  // namespace gapphaz
