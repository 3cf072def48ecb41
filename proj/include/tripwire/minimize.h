#pragma once

#include <functional>

namespace tripwire {

struct Minimum {
  double x = 0.0;
  double value = 0.0;
};

/// Minimizes f on [lo, hi]: evaluates `grid_points` equally spaced samples
/// (endpoints included), brackets the best one by its neighbours, then
/// refines with golden-section search until the bracket is narrower than
/// `x_tol`. The result is never worse than the best grid sample.
Minimum grid_golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                             int grid_points, double x_tol);

}  // namespace tripwire
