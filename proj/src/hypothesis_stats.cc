#include "tripwire/hypothesis_stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "tripwire/errors.h"
#include "tripwire/minimize.h"

namespace tripwire {
namespace {

constexpr double kSumTolerance = 1e-9;
constexpr int kCoarseGrid = 101;
constexpr double kTiltTolerance = 1e-10;

void check_pair(const OutcomeDistribution& p0, const OutcomeDistribution& p1) {
  p0.validate();
  p1.validate();
  if (!p0.same_outcomes(p1)) throw InvalidInput("distributions are over different outcome sets");
}

void check_open_unit(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError(std::string(name) + " must lie strictly inside (0, 1)");
  }
}

}  // namespace

OutcomeDistribution::OutcomeDistribution(
    std::initializer_list<std::pair<const std::string, double>> probs)
    : probs_(probs) {}

OutcomeDistribution::OutcomeDistribution(std::map<std::string, double> probs)
    : probs_(std::move(probs)) {}

void OutcomeDistribution::validate() const {
  if (probs_.empty()) throw InvalidInput("empty outcome distribution");
  double total = 0.0;
  for (const auto& [label, p] : probs_) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("probability of '" + label + "' outside [0,1]");
    total += p;
  }
  if (std::abs(total - 1.0) > kSumTolerance) throw InvalidInput("probabilities do not sum to 1");
}

double OutcomeDistribution::operator[](const std::string& label) const {
  const auto it = probs_.find(label);
  if (it == probs_.end()) throw InvalidInput("unknown outcome '" + label + "'");
  return it->second;
}

bool OutcomeDistribution::same_outcomes(const OutcomeDistribution& other) const {
  if (probs_.size() != other.probs_.size()) return false;
  for (auto a = probs_.begin(), b = other.probs_.begin(); a != probs_.end(); ++a, ++b) {
    if (a->first != b->first) return false;
  }
  return true;
}

OutcomeDistribution OutcomeDistribution::binary(double p) { return {{"1", p}, {"2", 1.0 - p}}; }

double chernoff_coefficient(const OutcomeDistribution& p0, const OutcomeDistribution& p1) {
  check_pair(p0, p1);
  if (p0.probs() == p1.probs()) return 1.0;
  std::vector<std::pair<double, double>> support;
  for (const auto& [label, a] : p0.probs()) {
    const double b = p1[label];
    if (a > 0.0 && b > 0.0) support.emplace_back(a, b);
  }
  if (support.empty()) return 0.0;

  auto objective = [&support](double s) {
    double sum = 0.0;
    for (const auto& [a, b] : support) {
      if (s == 0.0) {
        sum += b;
      } else if (s == 1.0) {
        sum += a;
      } else {
        sum += std::exp(s * std::log(a) + (1.0 - s) * std::log(b));
      }
    }
    return sum;
  };
  return grid_golden_minimize(objective, 0.0, 1.0, kCoarseGrid, kTiltTolerance).value;
}

double chernoff_bound(const OutcomeDistribution& p0, const OutcomeDistribution& p1) {
  return 0.5 * chernoff_coefficient(p0, p1);
}

double chernoff_distance(const OutcomeDistribution& p0, const OutcomeDistribution& p1) {
  const double coefficient = chernoff_coefficient(p0, p1);
  if (coefficient <= 0.0) return std::numeric_limits<double>::infinity();
  // The coefficient can exceed 1 by rounding when P0 == P1.
  return std::max(0.0, -std::log(coefficient));
}

double two_outcome_tilt(const TwoOutcomeModel& model) {
  check_open_unit(model.p, "p");
  check_open_unit(model.q, "q");
  if (model.p == model.q) throw DomainError("tilt undefined for p == q");
  const double p = model.p, q = model.q;
  return std::log((1.0 - q) / (1.0 - p)) / (std::log(p / (1.0 - p)) + std::log((1.0 - q) / q));
}

double chernoff_distance_two_outcome(const TwoOutcomeModel& model) {
  check_open_unit(model.p, "p");
  check_open_unit(model.q, "q");
  if (model.p == model.q) return 0.0;
  const double xi = two_outcome_tilt(model);
  const double xi_bar = 1.0 - xi;
  return xi * std::log(xi / model.p) + xi_bar * std::log(xi_bar / (1.0 - model.p));
}

double visibility_distance(double p_str) {
  if (!(p_str >= 0.0 && p_str <= 1.0)) throw InvalidInput("p_str must lie in [0, 1]");
  if (p_str == 1.0) throw DomainError("visibility distance is infinite at p_str = 1");
  return -std::log1p(-p_str);
}

double invisibility_probability(const TrialScaling& scaling) {
  if (scaling.m_trials < 0 || !(scaling.visibility_distance >= 0.0)) {
    throw InvalidInput("need M >= 0 and a nonnegative visibility distance");
  }
  if (scaling.m_trials == 0) return 1.0;
  return std::exp(-static_cast<double>(scaling.m_trials) * scaling.visibility_distance);
}

double max_error_bound(const TrialScaling& scaling) {
  if (scaling.m_trials < 0 || !(scaling.chernoff_distance >= 0.0)) {
    throw InvalidInput("need M >= 0 and a nonnegative Chernoff distance");
  }
  if (scaling.m_trials == 0) return 0.5;
  return 0.5 * std::exp(-static_cast<double>(scaling.m_trials) * scaling.chernoff_distance);
}

Hypothesis decide(const Counts& counts, const OutcomeDistribution& p0,
                  const OutcomeDistribution& p1, std::mt19937_64& rng_tiebreak) {
  check_pair(p0, p1);
  double ll0 = 0.0, ll1 = 0.0;
  bool forbidden0 = false, forbidden1 = false;
  for (const auto& [label, n] : counts) {
    if (n < 0) throw InvalidInput("negative count for '" + label + "'");
    if (n == 0) continue;
    const double a = p0[label];
    const double b = p1[label];
    if (a == 0.0 && b == 0.0) {
      throw InconsistentData("outcome '" + label + "' is impossible under both hypotheses");
    }
    if (a == 0.0) {
      forbidden0 = true;
    } else {
      ll0 += static_cast<double>(n) * std::log(a);
    }
    if (b == 0.0) {
      forbidden1 = true;
    } else {
      ll1 += static_cast<double>(n) * std::log(b);
    }
  }
  if (forbidden0 && forbidden1) {
    throw InconsistentData("counts contain outcomes forbidden under each hypothesis");
  }
  if (forbidden0) return Hypothesis::ObjectPresent;
  if (forbidden1) return Hypothesis::ObjectAbsent;
  if (ll1 > ll0) return Hypothesis::ObjectPresent;
  if (ll0 > ll1) return Hypothesis::ObjectAbsent;
  std::bernoulli_distribution coin(0.5);
  return coin(rng_tiebreak) ? Hypothesis::ObjectPresent : Hypothesis::ObjectAbsent;
}

}  // namespace tripwire
