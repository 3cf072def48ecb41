#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tripwire/state_evolution.h"

namespace tripwire {

/// Partial-Zeno operating point: the controlled loss that minimizes
/// no-object transmission for a given pass count and per-pass angle.
struct OperatingPoint {
  int n_passes = 0;
  double theta_total = 0.0;  // n_passes * theta_per_pass
  double lambda_opt = 0.0;
  double q_min = 0.0;  // no-object transmission at lambda_opt
  double p = 0.0;      // object transmission, cos^{2N} theta_N
  bool at_boundary = false;  // minimum sits on lambda = 0 or 1

  double theta_per_pass() const { return theta_total / n_passes; }
  PassConfig config() const;
};

struct DistanceReport {
  OperatingPoint point;
  double c2 = 0.0;     // two-outcome Chernoff distance, nats
  double c_vis = 0.0;  // visibility distance, nats
  double ratio = 0.0;  // c2 / c_vis
  /// Set by sweep when the closed forms are undefined at this point
  /// (boundary optimum); the distance fields are then NaN.
  bool degenerate = false;
};

struct SweepResult {
  std::vector<DistanceReport> reports;  // ordered by N
  std::optional<int> crossover_n;       // smallest N with ratio > 1
};

/// 1001-point scan of lambda in [0,1], then golden-section refinement to
/// |dlambda| < 1e-9.
OperatingPoint optimize_loss(int n, double theta_per_pass);

/// Same search against the environment-averaged transmission, where the
/// V arm loses lambda + extra_loss per pass and dephases. The returned
/// lambda_opt is the controlled part only, clamped so the total stays <= 1.
OperatingPoint optimize_loss(int n, double theta_per_pass, const EnvironmentModel& env);

/// Throws DomainError if p or q_min leaves (0,1) or the strike probability
/// vanishes (ratio undefined).
DistanceReport distance_report(const OperatingPoint& point);

/// (lambda, no-object P_tr) pairs with theta_N = theta_total / n.
std::vector<std::pair<double, double>> transmission_curve(int n, double theta_total,
                                                          const std::vector<double>& lambda_grid);

/// Equally spaced grid on [0,1] with both endpoints.
std::vector<double> unit_grid(int points);

/// One report per N (sorted ascending, duplicates removed) at fixed total
/// angle. Points where the closed forms break down are flagged degenerate.
SweepResult sweep(std::vector<int> n_values, double theta_total);

}  // namespace tripwire
