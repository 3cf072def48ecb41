#include "tripwire/zeno_optimizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tripwire/errors.h"
#include "tripwire/hypothesis_stats.h"
#include "tripwire/minimize.h"

namespace tripwire {
namespace {

constexpr int kScanPoints = 1001;
constexpr double kLambdaTolerance = 1e-9;
constexpr double kBoundaryTolerance = 1e-6;

void check_pass_args(int n, double theta_per_pass) {
  if (n < 1) throw InvalidInput("number of passes must be >= 1");
  if (!std::isfinite(theta_per_pass) || theta_per_pass <= 0.0 ||
      theta_per_pass > std::numbers::pi / 2 + 1e-12) {
    throw InvalidInput("theta_per_pass must lie in (0, pi/2]");
  }
}

OperatingPoint make_point(int n, double theta_per_pass, const Minimum& best, double upper) {
  OperatingPoint point;
  point.n_passes = n;
  point.theta_total = theta_per_pass * n;
  point.lambda_opt = best.x;
  point.q_min = best.value;
  point.p = std::pow(std::cos(theta_per_pass), 2.0 * n);
  point.at_boundary = best.x < kBoundaryTolerance || best.x > upper - kBoundaryTolerance;
  return point;
}

}  // namespace

PassConfig OperatingPoint::config() const {
  return PassConfig{n_passes, theta_per_pass(), lambda_opt, 0.0};
}

OperatingPoint optimize_loss(int n, double theta_per_pass) {
  check_pass_args(n, theta_per_pass);
  auto q = [&](double lam) {
    return transmission_probability(PassConfig{n, theta_per_pass, lam, 0.0},
                                    Hypothesis::ObjectAbsent);
  };
  return make_point(n, theta_per_pass,
                    grid_golden_minimize(q, 0.0, 1.0, kScanPoints, kLambdaTolerance), 1.0);
}

OperatingPoint optimize_loss(int n, double theta_per_pass, const EnvironmentModel& env) {
  check_pass_args(n, theta_per_pass);
  if (!(env.extra_loss >= 0.0 && env.extra_loss < 1.0)) {
    throw InvalidInput("extra_loss must lie in [0, 1)");
  }
  const double upper = 1.0 - env.extra_loss;
  // Phase is assumed re-centred by the caller, so only the spread matters.
  const EnvironmentModel centred{env.extra_loss, 0.0, env.phase_sigma};
  auto q = [&](double lam) {
    return mean_transmission(PassConfig{n, theta_per_pass, lam, 0.0}, centred);
  };
  return make_point(n, theta_per_pass,
                    grid_golden_minimize(q, 0.0, upper, kScanPoints, kLambdaTolerance), upper);
}

DistanceReport distance_report(const OperatingPoint& point) {
  DistanceReport report;
  report.point = point;
  report.c2 = chernoff_distance_two_outcome({point.p, point.q_min});
  report.c_vis = visibility_distance(strike_probability(point.config()));
  if (report.c_vis <= 0.0) throw DomainError("strike probability is zero; ratio undefined");
  report.ratio = report.c2 / report.c_vis;
  return report;
}

std::vector<std::pair<double, double>> transmission_curve(int n, double theta_total,
                                                          const std::vector<double>& lambda_grid) {
  if (n < 1) throw InvalidInput("number of passes must be >= 1");
  std::vector<std::pair<double, double>> curve;
  curve.reserve(lambda_grid.size());
  for (double lam : lambda_grid) {
    curve.emplace_back(lam, transmission_probability(PassConfig{n, theta_total / n, lam, 0.0},
                                                     Hypothesis::ObjectAbsent));
  }
  return curve;
}

std::vector<double> unit_grid(int points) {
  if (points < 2) throw InvalidInput("grid needs at least 2 points");
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = static_cast<double>(i) / (points - 1);
  return grid;
}

SweepResult sweep(std::vector<int> n_values, double theta_total) {
  if (n_values.empty()) throw InvalidInput("sweep needs at least one N");
  std::sort(n_values.begin(), n_values.end());
  n_values.erase(std::unique(n_values.begin(), n_values.end()), n_values.end());

  SweepResult result;
  for (int n : n_values) {
    if (n < 1) throw InvalidInput("number of passes must be >= 1");
    const OperatingPoint point = optimize_loss(n, theta_total / n);
    DistanceReport report;
    try {
      if (point.at_boundary) throw DomainError("boundary optimum");
      report = distance_report(point);
    } catch (const DomainError&) {
      constexpr double nan = std::numeric_limits<double>::quiet_NaN();
      report = DistanceReport{point, nan, nan, nan, true};
    }
    if (!report.degenerate && report.ratio > 1.0 && !result.crossover_n) {
      result.crossover_n = n;
    }
    result.reports.push_back(report);
  }
  return result;
}

}  // namespace tripwire
