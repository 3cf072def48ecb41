#include "tripwire/minimize.h"

#include <cmath>
#include <vector>

#include "tripwire/errors.h"

namespace tripwire {

Minimum grid_golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                             int grid_points, double x_tol) {
  if (!(hi > lo) || grid_points < 3 || !(x_tol > 0.0)) {
    throw InvalidInput("grid_golden_minimize: need hi > lo, >= 3 grid points, x_tol > 0");
  }
  const double step = (hi - lo) / (grid_points - 1);
  int best = 0;
  double best_value = f(lo);
  for (int i = 1; i < grid_points; ++i) {
    const double x = i == grid_points - 1 ? hi : lo + step * i;
    const double v = f(x);
    if (v < best_value) {
      best = i;
      best_value = v;
    }
  }
  const double best_x = best == grid_points - 1 ? hi : lo + step * best;

  double a = best == 0 ? lo : lo + step * (best - 1);
  double b = best == grid_points - 1 ? hi : lo + step * (best + 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > x_tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  Minimum out{0.5 * (a + b), f(0.5 * (a + b))};
  for (const auto& cand : {Minimum{c, fc}, Minimum{d, fd}, Minimum{best_x, best_value}}) {
    if (cand.value < out.value) out = cand;
  }
  if (!std::isfinite(out.value)) throw NumericalFailure("objective is not finite at the minimum");
  return out;
}

}  // namespace tripwire
