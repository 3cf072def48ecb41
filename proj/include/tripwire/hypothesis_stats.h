#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <random>
#include <string>

#include "tripwire/state_evolution.h"

namespace tripwire {

/// Probabilities over a finite set of labelled outcomes ("A", "B", "D" for
/// the interferometer, "1", "2" for a two-outcome apparatus).
class OutcomeDistribution {
 public:
  OutcomeDistribution() = default;
  OutcomeDistribution(std::initializer_list<std::pair<const std::string, double>> probs);
  explicit OutcomeDistribution(std::map<std::string, double> probs);

  /// Throws InvalidInput if any entry is outside [0,1] or the total is not
  /// 1 within 1e-9.
  void validate() const;

  double operator[](const std::string& label) const;
  const std::map<std::string, double>& probs() const { return probs_; }
  bool same_outcomes(const OutcomeDistribution& other) const;

  /// {"1": p, "2": 1 - p}
  static OutcomeDistribution binary(double p);

 private:
  std::map<std::string, double> probs_;
};

/// Transmission with the object (p) and without it (q).
struct TwoOutcomeModel {
  double p = 0.0;
  double q = 0.0;
};

struct TrialScaling {
  std::int64_t m_trials = 0;
  double chernoff_distance = 0.0;   // nats
  double visibility_distance = 0.0; // nats
};

/// min over s in [0,1] of sum_b P0(b)^s P1(b)^(1-s). Outcomes outside the
/// common support contribute nothing for 0 < s < 1, and the endpoints take
/// their one-sided limits so the objective stays continuous on [0,1].
double chernoff_coefficient(const OutcomeDistribution& p0, const OutcomeDistribution& p1);

/// Single-trial bound on the error of a symmetric test, in (0, 1/2]
/// (0 for disjoint supports).
double chernoff_bound(const OutcomeDistribution& p0, const OutcomeDistribution& p1);

/// -ln chernoff_coefficient, in nats; +inf for disjoint supports.
double chernoff_distance(const OutcomeDistribution& p0, const OutcomeDistribution& p1);

/// Closed form of the Chernoff distance between {p, 1-p} and {q, 1-q}:
/// xi ln(xi/p) + (1-xi) ln((1-xi)/(1-p)) with the optimal tilt
/// xi = ln((1-q)/(1-p)) / (ln(p/(1-p)) + ln((1-q)/q)).
/// Returns 0 when p == q; throws DomainError if p or q is not in (0,1).
double chernoff_distance_two_outcome(const TwoOutcomeModel& model);

/// Optimal tilt xi of the two-outcome closed form.
double two_outcome_tilt(const TwoOutcomeModel& model);

/// -ln(1 - p_str). Throws DomainError at p_str = 1.
double visibility_distance(double p_str);

/// exp(-M C_vis): chance of no strike in M trials.
double invisibility_probability(const TrialScaling& scaling);

/// (1/2) exp(-M C): bound on the M-trial decision error.
double max_error_bound(const TrialScaling& scaling);

using Counts = std::map<std::string, std::int64_t>;

/// Maximum-likelihood choice between P0 (ObjectAbsent) and P1
/// (ObjectPresent) for i.i.d. counts. An observed outcome that one
/// hypothesis forbids selects the other; an exact tie is a fair coin.
Hypothesis decide(const Counts& counts, const OutcomeDistribution& p0,
                  const OutcomeDistribution& p1, std::mt19937_64& rng_tiebreak);

}  // namespace tripwire
