#include "tripwire/monte_carlo.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "json.hpp"
#include "tripwire/errors.h"
#include "tripwire/hypothesis_stats.h"
#include "tripwire/zeno_optimizer.h"

namespace tripwire {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Controller's smoothed view of the environment.
struct EnvironmentEstimate {
  double extra_loss = 0.0;
  double phase_mean = 0.0;
  double phase_sigma = 0.0;
  bool initialized = false;

  void update(const EnvironmentEstimate& reading, double weight) {
    if (!initialized) {
      *this = reading;
      initialized = true;
      return;
    }
    extra_loss += weight * (reading.extra_loss - extra_loss);
    phase_mean += weight * (reading.phase_mean - phase_mean);
    phase_sigma += weight * (reading.phase_sigma - phase_sigma);
  }
};

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

RandomStreams RandomStreams::for_campaign(std::uint64_t seed, std::uint64_t drift_seed,
                                          std::uint64_t campaign_index) {
  return {Rng(stream_seed(seed, campaign_index)),
          Rng(stream_seed(drift_seed ^ 0xa0761d6478bd642fULL, campaign_index))};
}

void NoiseModel::validate(double controlled_loss) const {
  if (!(extra_loss >= 0.0 && extra_loss <= 1.0 - controlled_loss + 1e-15)) {
    throw InvalidInput("extra_loss must lie in [0, 1 - loss]");
  }
  if (!(phase_sigma >= 0.0) || !std::isfinite(phase_sigma)) {
    throw InvalidInput("phase_sigma must be finite and >= 0");
  }
  if (!std::isfinite(phase_offset)) throw InvalidInput("phase_offset must be finite");
}

const char* to_string(TrialOutcome outcome) {
  switch (outcome) {
    case TrialOutcome::Transmitted: return "Transmitted";
    case TrialOutcome::Lost: return "Lost";
    case TrialOutcome::Struck: return "Struck";
  }
  return "?";
}

void PhaseMonitor::record(double phase) {
  sum += phase;
  sum_sq += phase * phase;
  ++count;
}

double PhaseMonitor::mean() const { return count == 0 ? 0.0 : sum / count; }

double PhaseMonitor::stddev() const {
  if (count < 2) return 0.0;
  const double m = mean();
  return std::sqrt(std::max(0.0, (sum_sq - count * m * m) / (count - 1)));
}

TrialRecord run_trial(const PassConfig& cfg, Hypothesis truth, const NoiseModel& noise,
                      RandomStreams& streams, std::int64_t trial_index, PhaseMonitor* monitor) {
  cfg.validate();
  noise.validate(cfg.loss);
  const double arm_loss = std::min(1.0, cfg.loss + noise.extra_loss);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> jitter(0.0, noise.phase_sigma > 0.0 ? noise.phase_sigma : 1.0);

  TrialRecord record{trial_index, TrialOutcome::Transmitted, truth};
  const double u = uniform(streams.events);
  PhotonState state = PhotonState::horizontal();
  bool decided = false;
  for (int pass = 0; pass < cfg.n_passes; ++pass) {
    double env_phase = noise.phase_offset;
    if (noise.phase_sigma > 0.0) env_phase += jitter(streams.environment);
    if (monitor != nullptr) monitor->record(env_phase);
    if (decided) continue;

    state = apply_loss(rotate(state, cfg.theta_per_pass), arm_loss, cfg.phase_v + env_phase);
    if (u >= state.norm_squared()) {
      record.outcome = TrialOutcome::Lost;
      decided = true;
      continue;
    }
    if (truth == Hypothesis::ObjectPresent) {
      state = apply_loss(state, 1.0);
      if (u >= state.norm_squared()) {
        record.outcome = TrialOutcome::Struck;
        decided = true;
      }
    }
  }
  return record;
}

CampaignResult run_campaign(const PassConfig& cfg, Hypothesis truth, const NoiseModel& noise,
                            std::int64_t m, const CampaignOptions& options,
                            RandomStreams& streams, std::int64_t campaign_index) {
  if (m < 1) throw InvalidInput("a campaign needs at least one trial");
  if (options.block_size < 1) throw InvalidInput("feedback block size must be >= 1");
  if (!(options.ema_weight > 0.0 && options.ema_weight <= 1.0)) {
    throw InvalidInput("EMA weight must lie in (0, 1]");
  }
  cfg.validate();
  noise.validate(cfg.loss);

  CampaignResult result;
  result.campaign_index = campaign_index;
  result.m_trials = m;
  result.truth = truth;
  result.p = std::pow(std::cos(cfg.theta_per_pass), 2.0 * cfg.n_passes);
  const double q_nominal = transmission_probability(cfg, Hypothesis::ObjectAbsent);
  double q_running = q_nominal;

  PassConfig current = cfg;
  EnvironmentEstimate estimate;
  PhaseMonitor monitor;
  if (options.record_transcript) result.transcript.reserve(static_cast<std::size_t>(m));

  for (std::int64_t t = 0; t < m; ++t) {
    const TrialRecord record = run_trial(current, truth, noise, streams, t, &monitor);
    switch (record.outcome) {
      case TrialOutcome::Transmitted: ++result.transmitted; break;
      case TrialOutcome::Lost: ++result.lost; break;
      case TrialOutcome::Struck: ++result.strikes; break;
    }
    if (options.record_transcript) result.transcript.push_back(record);

    const bool block_done = (t + 1) % options.block_size == 0 && t + 1 < m;
    if (options.feedback && block_done) {
      estimate.update({noise.extra_loss, monitor.mean(), monitor.stddev(), true},
                      options.ema_weight);
      monitor = PhaseMonitor{};
      const double extra = std::min(estimate.extra_loss, 1.0 - 1e-12);
      const OperatingPoint retuned =
          optimize_loss(cfg.n_passes, cfg.theta_per_pass, {extra, 0.0, estimate.phase_sigma});
      // The controller never asks for more loss than the arm can take.
      current.loss = std::min(retuned.lambda_opt, 1.0 - noise.extra_loss);
      current.phase_v = -estimate.phase_mean;
      q_running = retuned.q_min;
    }
  }

  result.empirical_frequency = static_cast<double>(result.transmitted) / static_cast<double>(m);
  result.q_reference = options.q_reference == QReference::Running ? q_running : q_nominal;
  result.final_loss = current.loss;
  result.final_phase = current.phase_v;
  result.stayed_invisible = result.strikes == 0;

  const Counts counts{{"1", result.transmitted}, {"2", m - result.transmitted}};
  result.decision = decide(counts, OutcomeDistribution::binary(result.q_reference),
                           OutcomeDistribution::binary(result.p), streams.events);
  result.decision_error = result.decision != truth;
  return result;
}

std::vector<CampaignResult> run_campaigns(const PassConfig& cfg, Hypothesis truth,
                                          const NoiseModel& noise, std::int64_t m,
                                          const CampaignOptions& options, std::uint64_t seed,
                                          std::int64_t count) {
  if (count < 1) throw InvalidInput("need at least one campaign");
  std::vector<CampaignResult> results;
  results.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    RandomStreams streams =
        RandomStreams::for_campaign(seed, noise.drift_seed, static_cast<std::uint64_t>(i));
    results.push_back(run_campaign(cfg, truth, noise, m, options, streams, i));
  }
  return results;
}

double empirical_visibility(const std::vector<CampaignResult>& results) {
  if (results.empty()) throw InvalidInput("no campaigns to evaluate");
  const std::int64_t m = results.front().m_trials;
  std::int64_t invisible = 0;
  for (const auto& r : results) {
    if (r.m_trials != m || r.truth != Hypothesis::ObjectPresent) {
      throw InvalidInput("visibility needs object-present campaigns of equal length");
    }
    if (r.strikes == 0) ++invisible;
  }
  return static_cast<double>(invisible) / static_cast<double>(results.size());
}

std::string to_json_line(const CampaignResult& r) {
  nlohmann::ordered_json j;
  j["campaign"] = r.campaign_index;
  j["m"] = r.m_trials;
  j["truth"] = to_string(r.truth);
  j["transmitted"] = r.transmitted;
  j["lost"] = r.lost;
  j["strikes"] = r.strikes;
  j["empirical_frequency"] = r.empirical_frequency;
  j["p"] = r.p;
  j["q_reference"] = r.q_reference;
  j["final_loss"] = r.final_loss;
  j["final_phase"] = r.final_phase;
  j["decision"] = to_string(r.decision);
  j["decision_error"] = r.decision_error;
  j["stayed_invisible"] = r.stayed_invisible;
  if (!r.transcript.empty()) {
    std::string outcomes;
    outcomes.reserve(r.transcript.size());
    for (const auto& t : r.transcript) outcomes.push_back(to_string(t.outcome)[0]);
    j["outcomes"] = outcomes;
  }
  return j.dump();
}

void write_transcript(std::ostream& out, std::vector<CampaignResult> results) {
  std::stable_sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
    return a.campaign_index < b.campaign_index;
  });
  for (const auto& r : results) out << to_json_line(r) << '\n';
}

}  // namespace tripwire
