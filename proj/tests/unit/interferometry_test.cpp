#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "edeco/constants.hpp"
#include "edeco/error.hpp"
#include "edeco/interferometry/common.hpp"
#include "edeco/interferometry/ghz.hpp"
#include "edeco/interferometry/michelson.hpp"
#include "edeco/interferometry/ramsey.hpp"
#include "edeco/quantum/algebra.hpp"
#include "edeco/quantum/optics.hpp"
#include "test_support.hpp"

namespace edeco {
namespace {

using constants::pi;
using testing::poisson_pmf;

const double kOmega0 = constants::angular_frequency_ev(1.0);

std::vector<FringePoint> sampled(std::size_t count, double contrast) {
  std::vector<FringePoint> pts;
  for (double phi : uniform_phases(count)) pts.push_back({phi, 0.5 * (1.0 + contrast * std::cos(phi))});
  return pts;
}

TEST(Visibility, Examples) {
  EXPECT_NEAR(visibility(sampled(32, 1.0)), 1.0, 1e-12);
  EXPECT_EQ(visibility(sampled(32, 0.0)), 0.0);
  EXPECT_NEAR(visibility(sampled(32, 0.5)), 0.5, 1e-12);
  const std::vector<FringePoint> zeros{{0.0, 0.0}, {1.0, 0.0}};
  EXPECT_EQ(visibility(zeros), 0.0);
  EXPECT_THROW(visibility(std::vector<FringePoint>{{0.0, 0.5}}), Error);
}

TEST(UniformPhases, EvenCountIsSymmetricUnderHalfTurn) {
  const auto phases = uniform_phases(64);
  ASSERT_EQ(phases.size(), 64u);
  for (std::size_t k = 0; k < 32; ++k) EXPECT_NEAR(phases[k + 32] - phases[k], pi, 1e-14);
}

// ---- semiclassical Ramsey ----

RamseyConfig semiclassical(double sigma_rate, double gamma) {
  RamseyConfig cfg;
  cfg.wait = 1.0;
  cfg.partition = Partition::system;
  cfg.sigma = sigma_rate / (kOmega0 * kOmega0);
  cfg.spontaneous_rate = gamma;
  return cfg;
}

TEST(RamseySemiclassical, IdealFringe) {
  const FringeResult r = run_ramsey_semiclassical(semiclassical(0.0, 0.0));
  EXPECT_NEAR(r.visibility, 1.0, 1e-12);
}

TEST(RamseySemiclassical, HalfVisibilityAtLogTwo) {
  const FringeResult r = run_ramsey_semiclassical(semiclassical(std::log(2.0), 0.0));
  EXPECT_NEAR(r.visibility, 0.5, 1e-9);
}

TEST(RamseySemiclassical, FringeMatchesClosedForm) {
  for (auto [rate, gamma] : {std::pair{0.3, 0.0}, {0.0, 0.8}, {1.1, 0.4}}) {
    const RamseyConfig cfg = semiclassical(rate, gamma);
    const double v = std::exp(-rate * cfg.wait) * std::exp(-0.5 * gamma * cfg.wait);
    const FringeResult r = run_ramsey_semiclassical(cfg);
    for (const FringePoint& p : r.points) EXPECT_NEAR(p.p_g, 0.5 * (1.0 + v * std::cos(p.phi)), 1e-9);
  }
}

TEST(RamseySemiclassical, CompleteDecoherenceFlattensFringe) {
  const FringeResult r = run_ramsey_semiclassical(semiclassical(50.0, 0.0));
  EXPECT_LE(r.visibility, 1e-10);
  for (const FringePoint& p : r.points) EXPECT_NEAR(p.p_g, 0.5, 1e-12);
}

TEST(RamseySemiclassical, RejectsFieldPartitions) {
  RamseyConfig cfg = semiclassical(0.1, 0.0);
  cfg.partition = Partition::global;
  EXPECT_THROW(run_ramsey_semiclassical(cfg), Error);
  cfg.partition = Partition::reference;
  EXPECT_THROW(run_ramsey_semiclassical(cfg), Error);
}

// ---- quantized Ramsey ----

RamseyConfig fock_ramsey(Partition partition, double sigma) {
  RamseyConfig cfg;
  cfg.field = FieldState::fock(12);
  cfg.partition = partition;
  cfg.sigma = sigma;
  return cfg;
}

TEST(RamseyQuantized, FockFringeIsIdealWithoutDecoherence) {
  const FringeResult r = run_ramsey_quantized(fock_ramsey(Partition::none, 0.0));
  EXPECT_NEAR(r.visibility, 1.0, 1e-9);
  for (const FringePoint& p : r.points) {
    EXPECT_GE(p.p_g, 0.0);
    EXPECT_LE(p.p_g, 1.0);
  }
}

TEST(RamseyQuantized, GlobalDecoherenceLeavesFringeUnchanged) {
  const FringeResult base = run_ramsey_quantized(fock_ramsey(Partition::none, 0.0));
  for (double sigma : {0.0, 1e-40, 1e-30, 1e-20}) {
    const FringeResult r = run_ramsey_quantized(fock_ramsey(Partition::global, sigma));
    EXPECT_NEAR(r.visibility, base.visibility, 1e-9) << sigma;
    for (std::size_t k = 0; k < r.points.size(); ++k) {
      EXPECT_NEAR(r.points[k].p_g, base.points[k].p_g, 1e-9);
    }
  }
}

TEST(RamseyQuantized, LocalDecoherenceDecaysAtSummedBlockRate) {
  const double base = run_ramsey_quantized(fock_ramsey(Partition::none, 0.0)).visibility;
  RamseyConfig cfg = fock_ramsey(Partition::local, 0.0);
  const double omega = cfg.field_frequency();
  cfg.sigma = std::log(2.0) / ((kOmega0 * kOmega0 + omega * omega) * cfg.wait);
  EXPECT_NEAR(run_ramsey_quantized(cfg).visibility, 0.5 * base, 1e-6);

  double previous = base;
  for (double x : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    cfg.sigma = x / ((kOmega0 * kOmega0 + omega * omega) * cfg.wait);
    const double v = run_ramsey_quantized(cfg).visibility;
    EXPECT_LT(v, previous);
    EXPECT_NEAR(v, base * std::exp(-x), 1e-6);
    previous = v;
  }
}

TEST(RamseyQuantized, SingleBlockDecoherenceUsesThatBlockGap) {
  const double base = run_ramsey_quantized(fock_ramsey(Partition::none, 0.0)).visibility;
  RamseyConfig cfg = fock_ramsey(Partition::system, std::log(2.0) / (kOmega0 * kOmega0));
  EXPECT_NEAR(run_ramsey_quantized(cfg).visibility, 0.5 * base, 1e-6);
  cfg.partition = Partition::reference;
  const double omega = cfg.field_frequency();
  cfg.sigma = std::log(2.0) / (omega * omega);
  EXPECT_NEAR(run_ramsey_quantized(cfg).visibility, 0.5 * base, 1e-6);
}

TEST(RamseyQuantized, FockSupportStaysOnEnergyPair) {
  RamseyConfig cfg = fock_ramsey(Partition::local, 1e-31);
  const std::size_t n = cfg.field.photons;
  const Eigen::Index g_n = static_cast<Eigen::Index>(n);
  const Eigen::Index e_n1 = static_cast<Eigen::Index>((n + 1) + n - 1);
  for (double phi : {0.0, 0.7, 2.9}) {
    const RamseyStages st = ramsey_quantized_stages(cfg, phi);
    for (const DensityMatrix* rho : {&st.after_first_pulse, &st.after_wait, &st.final_state}) {
      const double kept = rho->matrix()(g_n, g_n).real() + rho->matrix()(e_n1, e_n1).real();
      EXPECT_LE(std::abs(1.0 - kept), 1e-10);
    }
  }
}

// Sector-by-sector oracle: on {|g,n>, |e,n-1>} each pulse rotates by
// theta_n = (area / 2) sqrt(n / n_dom); |g,0> is dark.
double coherent_oracle_p_g(double mean, std::size_t n_max, std::size_t n_dom, double area, double phi) {
  double norm = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) norm += poisson_pmf(mean, static_cast<int>(n));
  double p = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double w = poisson_pmf(mean, static_cast<int>(n)) / norm;
    const double theta = 0.5 * area * std::sqrt(double(n) / double(n_dom));
    const double c2 = std::cos(theta) * std::cos(theta);
    const double s2 = std::sin(theta) * std::sin(theta);
    p += w * std::norm(Complex(c2, 0.0) - std::polar(s2, phi));
  }
  return p;
}

TEST(RamseyQuantized, CoherentFieldMatchesSectorOracle) {
  RamseyConfig cfg;
  cfg.field = FieldState::coherent(5.0);
  const FringeResult r = run_ramsey_quantized(cfg);
  const std::size_t n_max = cfg.resolved_n_max();
  for (const FringePoint& p : r.points) {
    EXPECT_NEAR(p.p_g, coherent_oracle_p_g(25.0, n_max, 25, cfg.pulse_area, p.phi), 1e-9);
  }
  // Frozen from the sector oracle on the same 64-phase scan.
  EXPECT_NEAR(r.visibility, 0.9521781311999182, 1e-9);
  EXPECT_GE(r.visibility, 0.95);
}

TEST(RamseyQuantized, DetunedGlobalDecoherenceDecaysAtDetuningRate) {
  for (double ratio : {1e-3, 1e-2}) {
    RamseyConfig cfg = fock_ramsey(Partition::global, 0.0);
    cfg.detuning = ratio * kOmega0;
    cfg.wait = 1e-9;
    const double base = run_ramsey_quantized(cfg).visibility;
    const double target = 0.5;  // sigma delta^2 wait
    cfg.sigma = target / (cfg.detuning * cfg.detuning * cfg.wait);
    const double v = run_ramsey_quantized(cfg).visibility;
    const double rate = -std::log(v / base) / cfg.wait;
    const double expected = cfg.sigma * cfg.detuning * cfg.detuning;
    EXPECT_NEAR(rate / expected, 1.0, 1e-6) << ratio;
  }
}

TEST(RamseyQuantized, ConfigErrors) {
  RamseyConfig cfg = fock_ramsey(Partition::none, 0.0);
  cfg.phases.clear();
  EXPECT_THROW(run_ramsey_quantized(cfg), Error);
  cfg = fock_ramsey(Partition::none, 0.0);
  cfg.pulse_area = 4.0;
  EXPECT_THROW(run_ramsey_quantized(cfg), Error);
  cfg = fock_ramsey(Partition::none, 0.0);
  cfg.field = FieldState::coherent(5.0);
  cfg.n_max = 30;
  try {
    run_ramsey_quantized(cfg);
    FAIL() << "expected cutoff error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::cutoff);
  }
}

// ---- split pulses ----

TEST(SplitPulse, ReducedStateIsPhysical) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const DensityMatrix rho = split_pulse_reduced_state(n, 0.4);
    EXPECT_FALSE(rho.check().has_value());
  }
  EXPECT_THROW(split_pulse_reduced_state(7, 0.4), Error);
}

// ---- Michelson ----

MichelsonConfig michelson(Partition partition, double sigma_rate) {
  MichelsonConfig cfg;
  cfg.alpha = 2.0;
  cfg.partition = partition;
  cfg.sigma = sigma_rate / (cfg.mode_frequency * cfg.mode_frequency * cfg.arm_time);
  return cfg;
}

/// Uniform phase average of |beta e^{i phi}><...| over `nodes` phases.
Matrix phase_averaged_coherent(Complex beta, std::size_t n_max, std::size_t nodes) {
  Matrix acc = Matrix::Zero(n_max + 1, n_max + 1);
  for (std::size_t k = 0; k < nodes; ++k) {
    const double phi = 2.0 * pi * double(k) / double(nodes);
    const Vector v = coherent_state(beta * std::polar(1.0, phi), n_max).amplitudes();
    acc += v * v.adjoint();
  }
  return acc / double(nodes);
}

Matrix poisson_diag(double mean, std::size_t n_max) {
  Matrix m = Matrix::Zero(n_max + 1, n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) m(n, n) = poisson_pmf(mean, static_cast<int>(n));
  return m;
}

TEST(Michelson, BalancedWithoutDecoherence) {
  const MichelsonResult r = run_michelson(michelson(Partition::none, 0.0));
  EXPECT_LE(r.mean_photons_out_b, 1e-9);
  EXPECT_NEAR(r.mean_photons_out_a, 4.0, 1e-8);
}

TEST(Michelson, GlobalDephasingDoesNotLeakIntoDarkPort) {
  const MichelsonResult base = run_michelson(michelson(Partition::none, 0.0));
  for (double rate : {1e-10, 1.0, 50.0}) {
    const MichelsonResult r = run_michelson(michelson(Partition::global, rate));
    EXPECT_LE(r.mean_photons_out_b, 1e-8);
    EXPECT_NEAR(r.mean_photons_out_a, base.mean_photons_out_a, 1e-9);
  }
  for (double sigma : {0.0, 1e-40, 1e-30, 1e-20}) {
    MichelsonConfig cfg = michelson(Partition::global, 0.0);
    cfg.sigma = sigma;
    const MichelsonResult r = run_michelson(cfg);
    EXPECT_NEAR(r.mean_photons_out_a, base.mean_photons_out_a, 1e-9);
    EXPECT_NEAR(r.mean_photons_out_b, base.mean_photons_out_b, 1e-9);
  }
}

TEST(Michelson, GlobalArmStateIsCommonPhaseAverage) {
  const MichelsonConfig cfg = michelson(Partition::global, 50.0);
  const MichelsonResult r = run_michelson(cfg);
  const std::size_t n_max = r.arm_state.space().dim_of("arm_c") - 1;
  const Complex beta = cfg.alpha / std::sqrt(2.0);
  const std::size_t nodes = 4 * n_max;
  Matrix expected = Matrix::Zero(r.arm_state.dim(), r.arm_state.dim());
  for (std::size_t k = 0; k < nodes; ++k) {
    const Complex b = beta * std::polar(1.0, 2.0 * pi * double(k) / double(nodes));
    const Vector vc = coherent_state(b, n_max).amplitudes();
    const Vector v = Eigen::kroneckerProduct(vc, vc).eval();
    expected += v * v.adjoint();
  }
  expected /= double(nodes);
  EXPECT_LT(frobenius_distance(r.arm_state.matrix(), expected), 1e-8);
  // Each arm alone is the Poissonian mixture with mean |alpha|^2 / 2.
  const DensityMatrix arm_c = partial_trace(r.arm_state, {"arm_c"});
  EXPECT_LT(frobenius_distance(arm_c.matrix(), poisson_diag(2.0, n_max)), 1e-8);
}

TEST(Michelson, LocalDephasingSplitsPhotonsEvenly) {
  const MichelsonResult r = run_michelson(michelson(Partition::local, 50.0));
  EXPECT_NEAR(r.mean_photons_out_a, 2.0, 1e-6);
  EXPECT_NEAR(r.mean_photons_out_b, 2.0, 1e-6);
  const std::size_t n_max = r.arm_state.space().dim_of("arm_c") - 1;
  const Matrix single = phase_averaged_coherent(Complex(std::sqrt(2.0), 0.0), n_max, 64);
  Matrix expected = Eigen::kroneckerProduct(single, single);
  EXPECT_LT(frobenius_distance(r.arm_state.matrix(), expected), 1e-6);
}

TEST(Michelson, OutputStateIsPhysical) {
  for (Partition p : {Partition::none, Partition::global, Partition::local, Partition::system}) {
    MichelsonConfig cfg = michelson(p, 0.7);
    cfg.alpha = 1.0;
    const MichelsonResult r = run_michelson(cfg);
    EXPECT_FALSE(r.state_out.check().has_value()) << to_string(p);
  }
}

TEST(PhaseAverage, Examples) {
  EXPECT_EQ(phase_average_check(0.0, 10), 0.0);
  EXPECT_LE(phase_average_check(2.0, 40, 160), 1e-8);
  EXPECT_THROW(phase_average_check(2.0, 40, 100), Error);
}

TEST(PoissonMixture, MatchesPmf) {
  const DensityMatrix rho = poisson_mixture(3.0, 30);
  EXPECT_LT(frobenius_distance(rho.matrix(), poisson_diag(3.0, 30)), 1e-10);
}

// ---- GHZ ----

TEST(Ghz, SingleAtomLaw) {
  GhzConfig cfg;
  cfg.n_atoms = 1;
  cfg.sigma = 0.2 / (kOmega0 * kOmega0);
  cfg.gamma_sp = 0.3;
  cfg.wait = 2.0;
  EXPECT_NEAR(run_ghz(cfg).coherence, 0.5 * std::exp(-0.2 * 2.0 - 0.3 * 2.0), 1e-15);

  // Without losses it matches the semiclassical Ramsey contrast.
  cfg.gamma_sp = 0.0;
  RamseyConfig ramsey;
  ramsey.wait = cfg.wait;
  ramsey.partition = Partition::system;
  ramsey.sigma = cfg.sigma;
  EXPECT_NEAR(2.0 * run_ghz(cfg).coherence, run_ramsey_semiclassical(ramsey).visibility, 1e-9);
}

TEST(Ghz, TenAtomsQuadraticEnhancement) {
  GhzConfig cfg;
  cfg.n_atoms = 10;
  cfg.sigma = 1e-4 / (kOmega0 * kOmega0);
  cfg.wait = 1.0;
  EXPECT_NEAR(run_ghz(cfg).coherence, 0.5 * std::exp(-0.01), 1e-15);
}

TEST(Ghz, RateRatioIsNSquared) {
  GhzConfig one;
  one.sigma = 3e-35;
  const double base = run_ghz(one).effective_rate;
  for (std::size_t n : {2u, 3u, 10u, 1000u, 100000u}) {
    GhzConfig cfg = one;
    cfg.n_atoms = n;
    EXPECT_DOUBLE_EQ(run_ghz(cfg).effective_rate / base, double(n) * double(n));
  }
}

TEST(Ghz, BruteForceAgreesForSmallN) {
  for (std::size_t n = 1; n <= 4; ++n) {
    GhzConfig cfg;
    cfg.n_atoms = n;
    cfg.sigma = 0.05 / (kOmega0 * kOmega0);
    cfg.gamma_sp = 0.02;
    cfg.three_body_rate = 0.01;
    cfg.wait = 1.5;
    EXPECT_NEAR(ghz_coherence_brute_force(cfg), run_ghz(cfg).coherence, 1e-9) << n;
  }
}

TEST(Ghz, CoherenceBoundedBySurvival) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    GhzConfig cfg;
    cfg.n_atoms = 1 + static_cast<std::size_t>(u(rng) * 1e4);
    cfg.sigma = u(rng) * 1e-38;
    cfg.gamma_sp = u(rng) * 1e-2;
    cfg.three_body_rate = u(rng);
    cfg.wait = u(rng) * 10.0;
    const GhzResult r = run_ghz(cfg);
    EXPECT_LE(r.coherence, 0.5 * r.survival + 1e-12);
    EXPECT_GE(r.coherence, 0.0);
    EXPECT_LE(r.survival, 1.0);
  }
}

TEST(Ghz, CurveSpansWait) {
  GhzConfig cfg;
  cfg.n_atoms = 3;
  cfg.sigma = 0.1 / (kOmega0 * kOmega0);
  cfg.wait = 4.0;
  const auto curve = ghz_curve(cfg, 5);
  ASSERT_EQ(curve.size(), 5u);
  EXPECT_EQ(curve.front().t, 0.0);
  EXPECT_EQ(curve.back().t, 4.0);
  EXPECT_EQ(curve.front().value.coherence, 0.5);
  for (std::size_t k = 1; k < curve.size(); ++k) {
    EXPECT_LT(curve[k].value.coherence, curve[k - 1].value.coherence);
  }
  EXPECT_THROW(ghz_curve(cfg, 1), Error);
}

TEST(Ghz, InvalidConfig) {
  GhzConfig cfg;
  cfg.n_atoms = 0;
  EXPECT_THROW(run_ghz(cfg), Error);
  cfg.n_atoms = 2;
  cfg.gamma_sp = -1.0;
  EXPECT_THROW(run_ghz(cfg), Error);
}

TEST(Partition, ParsesNamesAndAliases) {
  EXPECT_EQ(parse_partition("global"), Partition::global);
  EXPECT_EQ(parse_partition("atom"), Partition::system);
  EXPECT_EQ(parse_partition("arm_d"), Partition::reference);
  EXPECT_EQ(to_string(Partition::local), "local");
  EXPECT_THROW(parse_partition("sideways"), Error);
}

}  // namespace
}  // namespace edeco
