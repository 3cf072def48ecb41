#pragma once

#include "tripwire/hypothesis_stats.h"
#include "tripwire/state_evolution.h"

namespace tripwire {

/// Single-pass lossless Mach-Zehnder interrogation. theta1 splits light into
/// the detection arm, theta2 recombines. The dark-port arrangement is
/// theta1 + theta2 = pi/2.
struct SimpleMziConfig {
  double theta1 = 0.0;
  double theta2 = 0.0;

  /// Throws InvalidInput unless both angles lie in [0, pi/2].
  void validate() const;
  bool dark_port() const;
};

struct MziOutcome {
  OutcomeDistribution distribution;  // over "A" (absorbed), "B" (bright), "D" (dark)
  bool dark_port_violated = false;
};

/// Object present: A = sin^2 t1, D = cos^2 t1 cos^2 t2, B = cos^2 t1 sin^2 t2.
/// Object absent: the arms interfere at zero phase, A = 0,
/// D = cos^2(t1 + t2), B = sin^2(t1 + t2).
MziOutcome outcome_distribution(const SimpleMziConfig& cfg, Hypothesis h);

/// cos^2 t1 / (1 + cos^2 t1); requires the dark-port arrangement.
double ifm_efficiency(const SimpleMziConfig& cfg);

}  // namespace tripwire
