#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "tripwire/state_evolution.h"

namespace tripwire {

using Rng = std::mt19937_64;

/// Decorrelated 64-bit seed for stream `index` of a run seeded by `seed`
/// (splitmix64 finalizer over seed and index).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Event randomness (which photons survive) and environment randomness
/// (phase noise) live in separate streams so two campaigns can share one
/// noise realization while differing in their controller.
struct RandomStreams {
  Rng events;
  Rng environment;

  static RandomStreams for_campaign(std::uint64_t seed, std::uint64_t drift_seed,
                                    std::uint64_t campaign_index);
};

/// Environmental disturbance of the V arm.
struct NoiseModel {
  double extra_loss = 0.0;    // added to the controlled loss each pass
  double phase_sigma = 0.0;   // std. dev. of the i.i.d. Gaussian phase per pass
  double phase_offset = 0.0;  // static mean environmental phase
  std::uint64_t drift_seed = 0;

  /// Throws InvalidInput unless extra_loss in [0, 1 - controlled_loss],
  /// phase_sigma >= 0 and the offset is finite.
  void validate(double controlled_loss) const;
};

enum class TrialOutcome { Transmitted, Lost, Struck };

const char* to_string(TrialOutcome outcome);

struct TrialRecord {
  std::int64_t trial_index = 0;
  TrialOutcome outcome = TrialOutcome::Transmitted;
  Hypothesis hypothesis_truth = Hypothesis::ObjectAbsent;
};

/// Running sums of the environmental phase seen by the V arm.
struct PhaseMonitor {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::int64_t count = 0;

  void record(double phase);
  double mean() const;
  double stddev() const;
};

/// Samples one photon through the N passes. A single uniform u is drawn per
/// trial and compared with the survival probability pass by pass: the photon
/// is lost in the first pass whose norm drops to or below u, and within that
/// pass the controlled/environmental loss comes before the object. This is
/// the inverse-CDF form of per-pass absorption sampling. Phase noise is drawn
/// from the environment stream for every pass, lost photon or not.
TrialRecord run_trial(const PassConfig& cfg, Hypothesis truth, const NoiseModel& noise,
                      RandomStreams& streams, std::int64_t trial_index = 0,
                      PhaseMonitor* monitor = nullptr);

/// Which no-object transmission the decision compares against.
enum class QReference {
  Running,   // controller's current model prediction (tracks feedback)
  Analytic,  // transmission of the nominal configuration, no noise
};

struct CampaignOptions {
  bool feedback = false;
  int block_size = 100;
  double ema_weight = 0.1;
  QReference q_reference = QReference::Running;
  bool record_transcript = false;
};

struct CampaignResult {
  std::int64_t campaign_index = 0;
  std::int64_t m_trials = 0;
  Hypothesis truth = Hypothesis::ObjectAbsent;
  std::int64_t transmitted = 0;
  std::int64_t lost = 0;
  std::int64_t strikes = 0;
  double empirical_frequency = 0.0;  // transmitted / m: estimates p or q
  double p = 0.0;
  double q_reference = 0.0;
  double final_loss = 0.0;
  double final_phase = 0.0;
  Hypothesis decision = Hypothesis::ObjectAbsent;
  bool decision_error = false;
  bool stayed_invisible = true;
  std::vector<TrialRecord> transcript;
};

/// Runs m trials at the nominal configuration `cfg`. With feedback on, every
/// block the controller folds an environment monitor reading (extra loss,
/// mean phase, phase spread) into an exponential moving average, cancels the
/// mean phase and re-optimizes the controlled loss against the averaged
/// transmission. The decision is maximum likelihood on transmitted counts
/// against {p, 1-p} vs {q, 1-q}.
CampaignResult run_campaign(const PassConfig& cfg, Hypothesis truth, const NoiseModel& noise,
                            std::int64_t m, const CampaignOptions& options,
                            RandomStreams& streams, std::int64_t campaign_index = 0);

/// `count` campaigns on streams split from (seed, noise.drift_seed),
/// ordered by campaign index.
std::vector<CampaignResult> run_campaigns(const PassConfig& cfg, Hypothesis truth,
                                          const NoiseModel& noise, std::int64_t m,
                                          const CampaignOptions& options, std::uint64_t seed,
                                          std::int64_t count);

/// Fraction of object-present campaigns that never struck the object.
double empirical_visibility(const std::vector<CampaignResult>& results);

/// One JSON object per line, in campaign-index order.
void write_transcript(std::ostream& out, std::vector<CampaignResult> results);
std::string to_json_line(const CampaignResult& result);

}  // namespace tripwire
