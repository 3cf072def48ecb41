#include "tripwire/state_evolution.h"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "tripwire/errors.h"

namespace tripwire {
namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle: explicit 2x2 complex matrix chain O * L * U applied N times.
using Mat = std::array<std::complex<double>, 4>;

Mat mul(const Mat& a, const Mat& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

std::array<std::complex<double>, 2> matrix_chain(int n, double theta, double lam, double phase,
                                                 bool object) {
  const Mat u{std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta)};
  const Mat l{1.0, 0.0, 0.0, std::sqrt(1.0 - lam) * std::exp(std::complex<double>(0, phase))};
  const Mat o{1.0, 0.0, 0.0, object ? 0.0 : 1.0};
  const Mat pass = mul(o, mul(l, u));
  Mat total{1.0, 0.0, 0.0, 1.0};
  for (int i = 0; i < n; ++i) total = mul(pass, total);
  return {total[0], total[2]};
}

TEST(Rotate, KnownAngles) {
  auto s = rotate(PhotonState::horizontal(), 0.0);
  EXPECT_DOUBLE_EQ(s.amp_h.real(), 1.0);
  EXPECT_DOUBLE_EQ(s.amp_v.real(), 0.0);

  s = rotate(PhotonState::horizontal(), kPi / 2);
  EXPECT_NEAR(std::abs(s.amp_h), 0.0, 1e-15);
  EXPECT_NEAR(s.amp_v.real(), 1.0, 1e-15);

  s = rotate(PhotonState::horizontal(), kPi / 4);
  EXPECT_NEAR(s.amp_h.real(), 0.70710678118654752, 1e-15);
  EXPECT_NEAR(s.amp_v.real(), 0.70710678118654752, 1e-15);
}

TEST(Rotate, PreservesNorm) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    PhotonState s{{d(rng), d(rng)}, {d(rng), d(rng)}};
    EXPECT_NEAR(rotate(s, 10 * d(rng)).norm_squared(), s.norm_squared(), 1e-14);
  }
}

TEST(Rotate, RejectsNonFinite) {
  PhotonState bad{{std::numeric_limits<double>::quiet_NaN(), 0.0}, {}};
  EXPECT_THROW(rotate(bad, 0.1), InvalidInput);
  EXPECT_THROW(rotate(PhotonState::horizontal(), std::numeric_limits<double>::infinity()),
               InvalidInput);
}

TEST(ApplyLoss, Examples) {
  const PhotonState v{{0.0, 0.0}, {1.0, 0.0}};
  EXPECT_EQ(apply_loss(v, 1.0).norm_squared(), 0.0);
  const auto h = apply_loss(PhotonState::horizontal(), 0.5);
  EXPECT_EQ(h.amp_h, Amplitude(1.0));
  EXPECT_EQ(h.amp_v, Amplitude(0.0));
  EXPECT_NEAR(apply_loss(v, 0.575).amp_v.real(), 0.651920240520264871, 1e-15);
}

TEST(ApplyLoss, PhaseOnlyRotatesV) {
  const PhotonState v{{0.5, 0.0}, {0.5, 0.0}};
  const auto out = apply_loss(v, 0.0, kPi / 2);
  EXPECT_NEAR(out.amp_v.real(), 0.0, 1e-15);
  EXPECT_NEAR(out.amp_v.imag(), 0.5, 1e-15);
  EXPECT_EQ(out.amp_h, v.amp_h);
}

TEST(ApplyLoss, RejectsOutOfRange) {
  EXPECT_THROW(apply_loss(PhotonState::horizontal(), -0.01), InvalidInput);
  EXPECT_THROW(apply_loss(PhotonState::horizontal(), 1.01), InvalidInput);
  EXPECT_THROW(apply_loss(PhotonState::horizontal(), std::nan("")), InvalidInput);
}

TEST(SinglePass, Examples) {
  auto s = single_pass(PhotonState::horizontal(), {1, kPi / 2, 0.0, 0.0},
                       Hypothesis::ObjectPresent);
  EXPECT_NEAR(s.norm_squared(), 0.0, 1e-30);

  s = single_pass(PhotonState::horizontal(), {1, kPi / 10, 0.0, 0.0}, Hypothesis::ObjectPresent);
  EXPECT_NEAR(s.amp_h.real(), 0.951056516295153572, 1e-15);
  EXPECT_EQ(s.amp_v, Amplitude(0.0));

  s = single_pass(PhotonState::horizontal(), {1, kPi / 10, 0.575, 0.0},
                  Hypothesis::ObjectAbsent);
  EXPECT_NEAR(s.amp_h.real(), 0.951056516295153572, 1e-15);
  EXPECT_NEAR(s.amp_v.real(), 0.201454433297765062, 1e-15);
}

TEST(Evolve, Examples) {
  auto s = evolve({1, kPi / 2, 0.0, 0.0}, Hypothesis::ObjectAbsent);
  EXPECT_NEAR(std::abs(s.amp_h), 0.0, 1e-15);
  EXPECT_NEAR(s.amp_v.real(), 1.0, 1e-15);

  s = evolve({5, kPi / 10, 0.0, 0.0}, Hypothesis::ObjectPresent);
  EXPECT_NEAR(s.amp_h.real(), 0.778093214025868835, 1e-14);
  EXPECT_EQ(s.amp_v, Amplitude(0.0));

  s = evolve({2, kPi / 4, 0.0, 0.0}, Hypothesis::ObjectAbsent);
  EXPECT_NEAR(std::abs(s.amp_h), 0.0, 1e-15);
  EXPECT_NEAR(s.amp_v.real(), 1.0, 1e-15);
}

TEST(Evolve, RejectsInvalidConfig) {
  EXPECT_THROW(evolve({0, 0.1, 0.0, 0.0}, Hypothesis::ObjectAbsent), InvalidInput);
  EXPECT_THROW(evolve({3, 0.0, 0.0, 0.0}, Hypothesis::ObjectAbsent), InvalidInput);
  EXPECT_THROW(evolve({3, 2.0, 0.0, 0.0}, Hypothesis::ObjectAbsent), InvalidInput);
  EXPECT_THROW(evolve({3, 0.1, 1.5, 0.0}, Hypothesis::ObjectAbsent), InvalidInput);
}

TEST(TransmissionProbability, Examples) {
  EXPECT_NEAR(transmission_probability({37, 0.3, 0.0, 0.0}, Hypothesis::ObjectAbsent), 1.0,
              1e-12);
  for (double lam : {0.0, 0.3, 0.575, 1.0}) {
    EXPECT_NEAR(transmission_probability({5, kPi / 10, lam, 0.0}, Hypothesis::ObjectPresent),
                0.605429049713106527, 1e-14);
  }
  EXPECT_NEAR(transmission_probability({5, kPi / 10, 1.0, 0.0}, Hypothesis::ObjectAbsent),
              0.605429049713106527, 1e-14);
}

TEST(PolarizationProbability, Examples) {
  const PassConfig flip{1, kPi / 2, 0.0, 0.0};
  EXPECT_NEAR(polarization_probability(flip, Hypothesis::ObjectAbsent, Polarization::V), 1.0,
              1e-15);
  EXPECT_NEAR(polarization_probability(flip, Hypothesis::ObjectAbsent, Polarization::H), 0.0,
              1e-15);

  const PassConfig cfg{5, kPi / 10, 0.575, 0.0};
  const auto oracle = matrix_chain(5, kPi / 10, 0.575, 0.0, false);
  const double ph = polarization_probability(cfg, Hypothesis::ObjectAbsent, Polarization::H);
  const double pv = polarization_probability(cfg, Hypothesis::ObjectAbsent, Polarization::V);
  EXPECT_NEAR(ph, std::norm(oracle[0]), 1e-14);
  EXPECT_NEAR(ph, 0.17193822841647885, 1e-12);
  EXPECT_NEAR(ph + pv, transmission_probability(cfg, Hypothesis::ObjectAbsent), 1e-15);
}

TEST(StrikeProbability, Examples) {
  EXPECT_EQ(strike_probability({5, kPi / 10, 1.0, 0.0}), 0.0);
  EXPECT_NEAR(strike_probability({5, kPi / 10, 0.575, 0.0}), 0.167692653871929726, 1e-14);
  EXPECT_NEAR(strike_probability({50, kPi / 100, 0.084, 0.0}), 0.0441126558212357608, 1e-14);
}

// Bookkeeping oracle: accumulate the V population that survives the
// controlled loss and is then removed by the object, pass by pass.
double strike_by_bookkeeping(const PassConfig& cfg) {
  PhotonState s = PhotonState::horizontal();
  double struck = 0.0;
  for (int i = 0; i < cfg.n_passes; ++i) {
    s = apply_loss(rotate(s, cfg.theta_per_pass), cfg.loss);
    struck += std::norm(s.amp_v);
    s.amp_v = 0.0;
  }
  return struck;
}

TEST(StrikeProbability, MatchesPerPassBookkeeping) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> n_dist(1, 200);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const PassConfig cfg{n_dist(rng), u(rng) * kPi / 2 + 1e-9, u(rng), 0.0};
    const double closed = strike_probability(cfg);
    EXPECT_NEAR(closed, strike_by_bookkeeping(cfg), 1e-12);
    const double p = transmission_probability(cfg, Hypothesis::ObjectPresent);
    // What is not transmitted or struck was taken by the controlled loss.
    EXPECT_GE(1.0 - p - closed, -1e-12);
  }
}

TEST(StateEvolutionProperties, UnitarityAndZenoIdentities) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> n_dist(1, 10000);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const int n = n_dist(rng);
    const double theta = std::max(1e-9, u(rng) * kPi / 2);
    const double lam = u(rng);
    const double phase = 2 * kPi * u(rng);
    EXPECT_NEAR(transmission_probability({n, theta, 0.0, phase}, Hypothesis::ObjectAbsent), 1.0,
                1e-12);
    const double zeno = std::pow(std::cos(theta), 2.0 * n);
    EXPECT_NEAR(transmission_probability({n, theta, lam, phase}, Hypothesis::ObjectPresent),
                zeno, 1e-12);
    EXPECT_NEAR(transmission_probability({n, theta, 1.0, 0.0}, Hypothesis::ObjectAbsent), zeno,
                1e-12);
    // Phase has no effect once the object removes V every pass.
    EXPECT_EQ(transmission_probability({n, theta, lam, phase}, Hypothesis::ObjectPresent),
              transmission_probability({n, theta, lam, 0.0}, Hypothesis::ObjectPresent));
  }
}

TEST(StateEvolutionProperties, NormNonIncreasing) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const PassConfig cfg{60, u(rng) * kPi / 2 + 1e-6, u(rng), u(rng) * 6};
    for (Hypothesis h : {Hypothesis::ObjectAbsent, Hypothesis::ObjectPresent}) {
      PhotonState s = PhotonState::horizontal();
      double prev = s.norm_squared();
      for (int k = 0; k < cfg.n_passes; ++k) {
        s = single_pass(s, cfg, h);
        EXPECT_LE(s.norm_squared(), prev + 1e-12);
        prev = s.norm_squared();
      }
    }
  }
}

TEST(StateEvolutionProperties, AgreesWithMatrixChainOracle) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> n_dist(1, 300);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const int n = n_dist(rng);
    const double theta = u(rng) * kPi / 2 + 1e-9;
    const double lam = u(rng);
    const double phase = (u(rng) - 0.5) * 2 * kPi;
    const bool object = i % 2 == 0;
    const auto s = evolve({n, theta, lam, phase},
                          object ? Hypothesis::ObjectPresent : Hypothesis::ObjectAbsent);
    const auto oracle = matrix_chain(n, theta, lam, phase, object);
    EXPECT_NEAR(std::abs(s.amp_h - oracle[0]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.amp_v - oracle[1]), 0.0, 1e-12);
  }
}

TEST(MeanTransmission, QuietEnvironmentMatchesPureState) {
  for (double lam : {0.0, 0.2, 0.575, 1.0}) {
    const PassConfig cfg{5, kPi / 10, lam, 0.3};
    EXPECT_NEAR(mean_transmission(cfg, {}),
                transmission_probability(cfg, Hypothesis::ObjectAbsent), 1e-13);
  }
  // Extra loss adds to the controlled loss.
  EXPECT_NEAR(mean_transmission({20, kPi / 40, 0.2, 0.0}, {0.05, 0.0, 0.0}),
              transmission_probability({20, kPi / 40, 0.25, 0.0}, Hypothesis::ObjectAbsent),
              1e-13);
}

TEST(MeanTransmission, MatchesSampledPhaseAverage) {
  const PassConfig cfg{20, kPi / 40, 0.19, 0.0};
  const EnvironmentModel env{0.01, 0.2, 0.3};
  std::mt19937_64 rng(17);
  std::normal_distribution<double> phase(env.phase_mean, env.phase_sigma);
  const int samples = 40000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < samples; ++i) {
    PhotonState s = PhotonState::horizontal();
    for (int k = 0; k < cfg.n_passes; ++k) {
      s = apply_loss(rotate(s, cfg.theta_per_pass), cfg.loss + env.extra_loss, phase(rng));
    }
    sum += s.norm_squared();
    sum_sq += s.norm_squared() * s.norm_squared();
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
  EXPECT_NEAR(mean_transmission(cfg, env), mean, 4 * se);
}

}  // namespace
}  // namespace tripwire
