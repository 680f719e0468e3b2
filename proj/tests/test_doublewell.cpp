#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qlat/bands.hpp"
#include "qlat/doublewell.hpp"
#include "qlat/errors.hpp"

using namespace qlat;

namespace {

double exact_splitting(const DoubleWellConfig& c) {
  return doublet_splitting(band_structure(double_well_potential(c), {0.0}, {c.n_max, 3, false})).splitting;
}

struct SpinHalfStates {
  DoubleWellConfig config = DoubleWellConfig::spin_half_preset();
  LocalizedPair pair;
  double splitting = 0.0;
  SpinHalfStates() {
    const BandSolution s = band_structure(double_well_potential(config), {0.0}, {config.n_max, 3, true});
    pair = localized_pair(s);
    splitting = doublet_splitting(s).splitting;
  }
};

const SpinHalfStates& spin_half() {
  static const SpinHalfStates s;
  return s;
}

}  // namespace

TEST(Geometry, SeparationRoundTrip) {
  EXPECT_NEAR(well_separation(DoubleWellConfig::spin_half_preset().theta), M_PI / 3, 1e-9);
  for (double kdz : {0.2, 0.7, 1.3}) EXPECT_NEAR(well_separation(theta_for_separation(kdz)), kdz, 1e-14);
  EXPECT_THROW(theta_for_separation(2.0), InputError);
}

TEST(SpinHalfWells, ReferenceGeometryNumbers) {
  const DoubleWellConfig c = DoubleWellConfig::spin_half_preset();
  const HarmonicDoubleWell w = spin_half_wells(c);
  const BarrierReport b = adiabatic_barrier(c);
  EXPECT_NEAR(b.barrier, 15.3, 0.01 * 15.3);
  EXPECT_NEAR(0.5 * w.omega, 8.6, 0.01 * 8.6);
  EXPECT_TRUE(b.tunneling);
  EXPECT_NEAR(splitting_estimate(c) / c.omega_perp, 0.1, 0.1 * 0.1);
}

TEST(SpinHalfWells, OscillatorFromPotentialCurvature) {
  DoubleWellConfig c = DoubleWellConfig::spin_half_preset();
  c.omega_perp = 0.0;
  const OperatorField u = double_well_potential(c);
  const HarmonicDoubleWell w = spin_half_wells(c);
  const auto diag = [&](double z) { return u.at_z(z)(1, 1).real(); };
  const double center = -w.k_dz / 2;
  EXPECT_NEAR(oracle::derivative(diag, center, 1e-3), 0.0, 1e-6);
  EXPECT_NEAR(std::sqrt(2.0 * oracle::second_derivative(diag, center, 1e-3)), w.omega, 1e-6 * w.omega);
}

TEST(SpinHalfWells, StrongCouplingRemovesBarrier) {
  DoubleWellConfig c = DoubleWellConfig::spin_half_preset();
  c.omega_perp = 200.0;
  const BarrierReport b = adiabatic_barrier(c);
  EXPECT_LT(b.barrier, 0.0);
  EXPECT_FALSE(b.tunneling);
}

TEST(SpinHalfWells, AdiabaticCurveIsLowerEigenvalue) {
  const DoubleWellConfig c = DoubleWellConfig::spin_half_preset();
  const HarmonicDoubleWell w = spin_half_wells(c);
  const double a = w.omega * w.omega / 4.0, d = w.k_dz;
  for (int k = -40; k <= 40; ++k) {
    const double z = 0.03 * k;
    const double want = oracle::lower_eigenvalue_2x2(a * (z - d / 2) * (z - d / 2), a * (z + d / 2) * (z + d / 2), c.omega_perp);
    EXPECT_NEAR(adiabatic_curve(c, z), want, 1e-10);
  }
}

TEST(SpinHalfWells, EstimateTracksExactSplitting) {
  for (double om : {1.0, 2.0, 3.0, 4.0, 5.0}) {
    DoubleWellConfig c = DoubleWellConfig::spin_half_preset();
    c.omega_perp = om;
    EXPECT_NEAR(splitting_estimate(c) / exact_splitting(c), 1.0, 0.25) << om;
  }
}

TEST(SpinHalfWells, NoTransverseFieldNoSplitting) {
  DoubleWellConfig c = DoubleWellConfig::spin_half_preset();
  c.omega_perp = 0.0;
  EXPECT_EQ(splitting_estimate(c), 0.0);
  EXPECT_NEAR(exact_splitting(c), 0.0, 1e-9);
}

TEST(SpinHalfWells, DoubletBelowBarrier) {
  for (double om : {1.0, 3.0, 5.0}) {
    DoubleWellConfig c = DoubleWellConfig::spin_half_preset();
    c.omega_perp = om;
    const BarrierReport b = adiabatic_barrier(c);
    ASSERT_TRUE(b.tunneling);
    const double bottom = -(4.0 / 3.0) * c.u1 - 0.5 * spin_half_wells(c).depth;
    const BandSolution s = band_structure(double_well_potential(c), {0.0}, {c.n_max, 3, false});
    EXPECT_LT(s.energies[0](1) - bottom, b.barrier) << om;
  }
}

TEST(SpinHalfWells, ExponentialScalingOfSplitting) {
  std::vector<double> x, y;
  for (double kdz : {0.8, 0.9, 1.0, 1.1, 1.2}) {
    DoubleWellConfig c = DoubleWellConfig::spin_half_preset();
    c.theta = theta_for_separation(kdz);
    const HarmonicDoubleWell w = spin_half_wells(c);
    x.push_back(kdz * kdz / (8.0 * w.eta * w.eta));
    y.push_back(std::log(exact_splitting(c)));
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  EXPECT_NEAR((n * sxy - sx * sy) / (n * sxx - sx * sx), -1.0, 0.1);
}

TEST(Broadening, MatchesLogDerivativeOfEstimate) {
  const DoubleWellConfig c = DoubleWellConfig::spin_half_preset();
  const auto log_split = [&](double log_u1) {
    DoubleWellConfig d = c;
    d.u1 = std::exp(log_u1);
    return std::log(splitting_estimate(d));
  };
  const double slope = oracle::derivative(log_split, std::log(c.u1), 1e-3);
  EXPECT_NEAR(broadening(c, 1.0), -slope, 0.05 * std::abs(slope));
  EXPECT_EQ(broadening(c, 0.0), 0.0);
}

TEST(CesiumWells, DepthsAndOffsets) {
  DoubleWellConfig c = DoubleWellConfig::cesium_preset();
  c.theta = M_PI / 2;
  const CesiumDoubleWell w = cesium_double_well(c);
  EXPECT_NEAR(w.depths[m_index(HalfInt(4), HalfInt(0))], 0.0, 1e-12);
  for (int m = 1; m <= 4; ++m) {
    EXPECT_NEAR(w.centers[m_index(HalfInt(4), HalfInt(m))], -M_PI / 4, 1e-12);
    EXPECT_NEAR(w.centers[m_index(HalfInt(4), HalfInt(-m))], M_PI / 4, 1e-12);
  }
  c.theta = 1e-9;
  const CesiumDoubleWell z = cesium_double_well(c);
  EXPECT_NEAR(z.depths[m_index(HalfInt(4), HalfInt(4))], 8.0 / 3.0 * c.u1, 1e-6);
  EXPECT_NEAR(z.offsets[m_index(HalfInt(4), HalfInt(4))], 0.0, 1e-8);
}

TEST(CesiumWells, DiagonalsFollowShiftedCosines) {
  DoubleWellConfig c = DoubleWellConfig::cesium_preset();
  c.omega_perp = 0.0;
  const CesiumDoubleWell w = cesium_double_well(c);
  for (HalfInt m : projections(HalfInt(4))) {
    const int i = m_index(HalfInt(4), m);
    for (int k = 0; k < 20; ++k) {
      const double z = -1.5 + 0.15 * k;
      const double want = -(4.0 / 3.0) * c.u1 - 0.5 * w.depths[i] * std::cos(2.0 * z + w.offsets[i]);
      EXPECT_NEAR(w.potential.at_z(z)(i, i).real(), want, 1e-10);
    }
  }
}

TEST(CesiumWells, ParabolicExpansionMatchesTaylor) {
  DoubleWellConfig c = DoubleWellConfig::cesium_preset();
  c.omega_perp = 0.0;
  const CesiumDoubleWell w = cesium_double_well(c);
  for (int m = 1; m <= 4; ++m) {
    const int i = m_index(HalfInt(4), HalfInt(m));
    const auto diag = [&](double z) { return w.potential.at_z(z)(i, i).real(); };
    const auto para = [&](double z) { return parabolic_diagonal(w, HalfInt(m), z); };
    const double c0 = w.centers[i];
    EXPECT_NEAR(oracle::derivative(diag, c0, 1e-3), 0.0, 1e-6);
    EXPECT_NEAR(oracle::second_derivative(diag, c0, 1e-3), oracle::second_derivative(para, c0, 1e-3), 1e-5 * w.depths[i]);
  }
}

TEST(NoiseOperator, IsThetaDerivativeOfPotential) {
  for (const DoubleWellConfig base : {DoubleWellConfig::spin_half_preset(), DoubleWellConfig::cesium_preset()}) {
    DoubleWellConfig a = base, b = base;
    const double h = 1e-5;
    a.theta += h;
    b.theta -= h;
    const OperatorField n = noise_operator(base);
    for (int k = 0; k < 30; ++k) {
      const double z = 0.1 * k;
      const CMat fd = (double_well_potential(a).at_z(z) - double_well_potential(b).at_z(z)) / (2 * h);
      EXPECT_LT((fd - n.at_z(z)).cwiseAbs().maxCoeff(), 1e-6 * base.u1);
    }
  }
}

TEST(RampProtocol, Validation) {
  RampProtocol p;
  p.dt = 0.0;
  EXPECT_THROW(p.validate(), InputError);
  p.dt = 0.01;
  p.segments.push_back({RampParameter::theta, 1.0, 4.0, 1.0});
  EXPECT_THROW(p.validate(), InputError);
  p.segments = {{RampParameter::b_z, 1.0, 0.0, 2.0}, {RampParameter::b_z, 0.0, 0.5, 3.0}};
  EXPECT_DOUBLE_EQ(p.total_duration(), 5.0);
}

TEST(PrepareState, SlowRampReachesSymmetricState) {
  RampProtocol p;
  p.dt = 0.01;
  p.segments.push_back({RampParameter::b_z, 2.0, 0.0, 200.0, RampShape::smoothstep});
  const PreparedState s = prepare_state(DoubleWellConfig::spin_half_preset(), p, PrepTarget::symmetric);
  EXPECT_GE(s.fidelity, 0.95);
  EXPECT_GT(s.adiabaticity, 10.0);
  EXPECT_TRUE(s.warnings.empty());
}

TEST(PrepareState, SuddenSwitchKeepsLocalizedState) {
  RampProtocol p;
  p.dt = 0.01;
  p.segments.push_back({RampParameter::b_z, -2.0, 0.0, 0.01});
  const PreparedState s = prepare_state(DoubleWellConfig::spin_half_preset(), p, PrepTarget::right);
  EXPECT_GE(s.fidelity, 0.95);
}

TEST(PrepareState, EmptyProtocolLeavesGroundState) {
  const PreparedState s = prepare_state(DoubleWellConfig::spin_half_preset(), RampProtocol{}, PrepTarget::symmetric);
  EXPECT_NEAR(s.fidelity, 1.0, 1e-12);
  EXPECT_EQ(s.adiabaticity, 0.0);
}

TEST(Propagator, SymmetricStateIsStationary) {
  const SpinHalfStates& h = spin_half();
  const Propagator p(h.config);
  const NoisyTrajectory t = evolve_noisy(p, h.pair.symmetric.coefficients, {}, 20.0 * 2 * M_PI / h.splitting, 4000, 1, 10);
  for (double f : t.fz) EXPECT_NEAR(f, 0.0, 1e-6);
}

TEST(Propagator, RightStateTunnelsAtSplitting) {
  const SpinHalfStates& h = spin_half();
  const Propagator p(h.config);
  const double period = 2 * M_PI / h.splitting;
  const NoisyTrajectory t = evolve_noisy(p, h.pair.right.coefficients, {}, 5.0 * period, 10000, 1, 5);
  const OscillationFit fit = fit_oscillation(t.t, t.fz);
  EXPECT_NEAR(fit.angular_frequency / h.splitting, 1.0, 0.02);
  EXPECT_NEAR(fit.amplitude, std::abs(magnetization(h.pair.right)), 1e-3);
  double drift = 0.0;
  for (double n : t.norm) drift = std::max(drift, std::abs(n - 1.0));
  EXPECT_LT(drift, 1e-8);
}

TEST(Propagator, MirrorTrajectories) {
  const SpinHalfStates& h = spin_half();
  const Propagator p(h.config);
  const double d = 3.0 * 2 * M_PI / h.splitting;
  const NoisyTrajectory l = evolve_noisy(p, h.pair.left.coefficients, {}, d, 600, 1);
  const NoisyTrajectory r = evolve_noisy(p, h.pair.right.coefficients, {}, d, 600, 1);
  for (std::size_t k = 0; k < l.fz.size(); ++k) EXPECT_NEAR(l.fz[k], -r.fz[k], 1e-8);
}

TEST(Propagator, EnergyConservedOverManyPeriods) {
  const SpinHalfStates& h = spin_half();
  const Propagator p(h.config);
  const CVec psi0 = h.pair.right.coefficients;
  const double e0 = p.energy(psi0);
  const CVec psi = p.evolve_static(psi0, 1000.0 * 2 * M_PI / h.splitting);
  EXPECT_LT(std::abs(p.energy(psi) - e0), 1e-6);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
}

TEST(Propagator, SplitStepMatchesExactEvolution) {
  const SpinHalfStates& h = spin_half();
  const Propagator p(h.config);
  DoubleWellConfig shifted = h.config;
  shifted.b_z = 0.3;
  CVec psi = h.pair.right.coefficients;
  const int steps = 2000;
  const double total = 2.0;
  for (int k = 0; k < steps; ++k) psi = p.step(psi, total / steps, shifted, 0.0);
  const Propagator exact(shifted);
  const CVec ref = exact.evolve_static(h.pair.right.coefficients, total);
  EXPECT_NEAR(std::norm(ref.dot(psi)), 1.0, 1e-6);
}

TEST(Noise, DeterministicPerSeed) {
  const SpinHalfStates& h = spin_half();
  const Propagator p(h.config);
  const NoiseSpec noise{0.02, 0.5};
  const NoisyTrajectory a = evolve_noisy(p, h.pair.right.coefficients, noise, 20.0, 400, 42, 4);
  const NoisyTrajectory b = evolve_noisy(p, h.pair.right.coefficients, noise, 20.0, 400, 42, 4);
  const NoisyTrajectory c = evolve_noisy(p, h.pair.right.coefficients, noise, 20.0, 400, 43, 4);
  EXPECT_EQ(a.fz, b.fz);
  EXPECT_NE(a.fz, c.fz);
}

TEST(Noise, EnsembleIndependentOfThreadCount) {
  const SpinHalfStates& h = spin_half();
  const Propagator p(h.config);
  const std::vector<std::uint64_t> seeds{5, 6, 7, 8};
  const Ensemble a = evolve_ensemble(p, h.pair.right.coefficients, {0.02, 0.5}, 10.0, 200, seeds, 5, 1);
  const Ensemble b = evolve_ensemble(p, h.pair.right.coefficients, {0.02, 0.5}, 10.0, 200, seeds, 5, 3);
  EXPECT_EQ(a.mean.fz, b.mean.fz);
  ASSERT_EQ(a.runs.size(), 4u);
  EXPECT_EQ(a.runs[2].seed, 7u);
}

TEST(Noise, StrongNoiseWashesOutContrast) {
  const SpinHalfStates& h = spin_half();
  const Propagator p(h.config);
  const double period = 2 * M_PI / h.splitting;
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 32; ++s) seeds.push_back(100 + s);
  const Ensemble e = evolve_ensemble(p, h.pair.right.coefficients, {0.05, 0.2}, 8.0 * period, 3200, seeds, 4, 1);
  const auto window_contrast = [&](double t0, double t1) {
    double m = 0.0;
    for (std::size_t k = 0; k < e.mean.t.size(); ++k)
      if (e.mean.t[k] >= t0 && e.mean.t[k] < t1) m = std::max(m, std::abs(e.mean.fz[k]));
    return m;
  };
  const double early = window_contrast(0.0, 1.0 * period);
  const double late = window_contrast(6.0 * period, 8.0 * period);
  EXPECT_GT(early, 0.9 * std::abs(magnetization(h.pair.right)));
  EXPECT_LT(late, 0.5 * early);
  const Ensemble quiet = evolve_ensemble(p, h.pair.right.coefficients, {}, 8.0 * period, 3200, {1, 2}, 4, 1);
  double quiet_late = 0.0;
  for (std::size_t k = 0; k < quiet.mean.t.size(); ++k)
    if (quiet.mean.t[k] >= 6.0 * period) quiet_late = std::max(quiet_late, std::abs(quiet.mean.fz[k]));
  EXPECT_NEAR(quiet_late, early, 1e-3);
}

TEST(Noise, RejectsBadInputs) {
  const SpinHalfStates& h = spin_half();
  const Propagator p(h.config);
  EXPECT_THROW(evolve_noisy(p, h.pair.right.coefficients, {-1.0, 1.0}, 1.0, 10, 1), InputError);
  EXPECT_THROW(evolve_noisy(p, CVec::Zero(3), {}, 1.0, 10, 1), InputError);
  EXPECT_THROW(evolve_ensemble(p, h.pair.right.coefficients, {}, 1.0, 10, {}), InputError);
}

TEST(FitOscillation, CosineFrequency) {
  std::vector<double> t, y;
  for (int k = 0; k <= 2000; ++k) {
    t.push_back(0.01 * k);
    y.push_back(2.5 * std::cos(1.7 * t.back()));
  }
  const OscillationFit f = fit_oscillation(t, y);
  EXPECT_NEAR(f.angular_frequency, 1.7, 1e-4);
  EXPECT_NEAR(f.amplitude, 2.5, 1e-12);
}
