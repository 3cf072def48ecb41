#include "tripwire/simple_mzi.h"

#include <cmath>
#include <numbers>

#include "tripwire/errors.h"

namespace tripwire {
namespace {

constexpr double kDarkPortTolerance = 1e-12;
constexpr double kHalfPi = std::numbers::pi / 2;

bool in_quadrant(double x) { return std::isfinite(x) && x >= 0.0 && x <= kHalfPi + 1e-15; }

}  // namespace

void SimpleMziConfig::validate() const {
  if (!in_quadrant(theta1) || !in_quadrant(theta2)) {
    throw InvalidInput("beam splitter angles must lie in [0, pi/2]");
  }
}

bool SimpleMziConfig::dark_port() const {
  return std::abs(theta1 + theta2 - kHalfPi) <= kDarkPortTolerance;
}

MziOutcome outcome_distribution(const SimpleMziConfig& cfg, Hypothesis h) {
  cfg.validate();
  MziOutcome out;
  out.dark_port_violated = !cfg.dark_port();
  if (h == Hypothesis::ObjectPresent) {
    const double c1 = std::cos(cfg.theta1), s1 = std::sin(cfg.theta1);
    const double c2 = std::cos(cfg.theta2), s2 = std::sin(cfg.theta2);
    out.distribution = {{"A", s1 * s1}, {"B", c1 * c1 * s2 * s2}, {"D", c1 * c1 * c2 * c2}};
  } else {
    const double total = cfg.theta1 + cfg.theta2;
    // Exact zeros under the dark-port arrangement, not cos(pi/2) ~ 6e-17.
    const double dark = out.dark_port_violated ? std::pow(std::cos(total), 2) : 0.0;
    out.distribution = {{"A", 0.0}, {"B", 1.0 - dark}, {"D", dark}};
  }
  return out;
}

double ifm_efficiency(const SimpleMziConfig& cfg) {
  cfg.validate();
  if (!cfg.dark_port()) throw InvalidInput("efficiency formula needs theta1 + theta2 = pi/2");
  const double c2 = std::pow(std::cos(cfg.theta1), 2);
  return c2 / (1.0 + c2);
}

}  // namespace tripwire
