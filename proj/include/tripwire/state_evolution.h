#pragma once

#include <complex>

namespace tripwire {

using Amplitude = std::complex<double>;

/// Single-photon polarization amplitudes in the {H, V} basis. V is the
/// detection arm (the tripwire path). The squared norm is the probability
/// that the photon has not been lost yet, so it only ever shrinks.
struct PhotonState {
  Amplitude amp_h{1.0, 0.0};
  Amplitude amp_v{0.0, 0.0};

  static PhotonState horizontal() { return {}; }
  double norm_squared() const { return std::norm(amp_h) + std::norm(amp_v); }
};

/// One operating point of the N-pass interferometer.
struct PassConfig {
  int n_passes = 1;
  double theta_per_pass = 0.0;  // radians, in (0, pi/2]
  double loss = 0.0;            // controlled loss per pass in the V arm
  double phase_v = 0.0;         // phase applied to V each pass

  /// Throws InvalidInput unless n_passes >= 1, loss in [0,1],
  /// theta_per_pass finite and in (0, pi/2], phase_v finite.
  void validate() const;
};

enum class Hypothesis { ObjectAbsent, ObjectPresent };

enum class Polarization { H, V };

const char* to_string(Hypothesis h);

PhotonState rotate(const PhotonState& state, double theta);

/// Attenuates V by sqrt(1 - lam) and applies e^{i phase_v}; H is untouched.
PhotonState apply_loss(const PhotonState& state, double lam, double phase_v = 0.0);

/// One pass: rotation, then controlled loss, then the object projector.
PhotonState single_pass(const PhotonState& state, const PassConfig& cfg, Hypothesis h);

/// |psi_N> starting from |H>.
PhotonState evolve(const PassConfig& cfg, Hypothesis h);

double transmission_probability(const PassConfig& cfg, Hypothesis h);

double polarization_probability(const PassConfig& cfg, Hypothesis h, Polarization basis);

/// Closed form (1 - lambda)(1 - cos^{2N} theta_N): chance that a photon hits
/// the object during one trial when the object is present.
double strike_probability(const PassConfig& cfg);

/// Environment seen by the V arm on top of the controlled loss: additive
/// extra loss and a Gaussian per-pass phase with the given mean and spread.
struct EnvironmentModel {
  double extra_loss = 0.0;
  double phase_mean = 0.0;
  double phase_sigma = 0.0;
};

/// No-object transmission averaged over the environment's phase noise.
/// Propagates the 2x2 density matrix; the Gaussian phase multiplies the HV
/// coherence by exp(-i mean - sigma^2 / 2) each pass. Equals
/// transmission_probability when the environment is quiet.
double mean_transmission(const PassConfig& cfg, const EnvironmentModel& env);

}  // namespace tripwire
