#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qlat/cooling.hpp"
#include "qlat/errors.hpp"

using namespace qlat;

namespace {

CoolingConfig five_step() {
  CoolingConfig c;
  c.schedule = descending_schedule(5);
  return c;
}

}  // namespace

TEST(CoolingParameters, WellFrequencies) {
  const CoolingParameters p = cooling_parameters(five_step());
  EXPECT_NEAR(p.omega4, 4.0 * std::sqrt(500.0 / 3.0), 1e-8);
  EXPECT_NEAR(p.omega2, 2.0 * std::sqrt(1000.0 / 3.0), 1e-8);
  EXPECT_NEAR(p.gamma_p, 10.0 * p.gamma_s, 1e-15);
  // Rabi oscillations are overdamped at these parameters.
  EXPECT_LE(p.u_r / p.gamma_s, 1.0);
}

TEST(BlockHamiltonian, ResonanceMakesDiagonalEqual) {
  const CoolingParameters p = cooling_parameters(five_step());
  for (int n = 1; n <= 5; ++n) {
    const Eigen::Matrix2cd h = block_hamiltonian(n, resonant_bz(n, p), p);
    EXPECT_NEAR(std::abs(h(0, 0) - h(1, 1)), 0.0, 1e-12);
    EXPECT_NEAR(h(0, 1).real(), p.u_r * std::sqrt(double(n)), 1e-12);
    EXPECT_NEAR(std::abs(h(0, 1) - std::conj(h(1, 0))), 0.0, 1e-15);
  }
}

TEST(BlockHamiltonian, ResonanceRootMatchesNumericSolve) {
  const CoolingParameters p = cooling_parameters(five_step());
  const auto diff = [&](double b) {
    const Eigen::Matrix2cd h = block_hamiltonian(1, b, p);
    return (h(0, 0) - h(1, 1)).real();
  };
  double lo = -200.0, hi = 200.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (diff(lo) * diff(mid) <= 0 ? hi : lo) = mid;
  }
  EXPECT_NEAR(resonant_bz(1, p), 0.5 * (lo + hi), 1e-10);
  const Eigen::Matrix2cd h2 = block_hamiltonian(2, resonant_bz(1, p), p);
  EXPECT_GE(std::abs((h2(0, 0) - h2(1, 1)).real()), std::abs(p.omega4 - p.omega2) - 1e-9);
}

TEST(BlockHamiltonian, ResonancesSpacedByFrequencyMismatch) {
  const CoolingParameters p = cooling_parameters(five_step());
  EXPECT_NEAR(resonant_bz(5, p) - resonant_bz(1, p), 4.0 * (p.omega2 - p.omega4) / 2.0, 1e-10);
}

TEST(BlockHamiltonian, EqualFrequenciesRejected) {
  CoolingParameters p = cooling_parameters(five_step());
  p.omega2 = p.omega4;
  EXPECT_THROW(resonant_bz(1, p), UnsupportedConfigError);
}

TEST(BlockHamiltonian, NoCouplingIsDiagonal) {
  CoolingConfig c = five_step();
  c.u_r = 0.0;
  const Eigen::Matrix2cd h = block_hamiltonian(3, 1.5, c);
  EXPECT_EQ(std::abs(h(0, 1)), 0.0);
  EXPECT_EQ(std::abs(h(1, 0)), 0.0);
}

TEST(PumpingRates, GroundStateRates) {
  const CoolingParameters p = cooling_parameters(five_step());
  const RateTable t = pumping_rates(p);
  const double e2 = p.eta * p.eta;
  auto find = [](const std::vector<Transfer>& v, int a, int b) {
    for (const auto& x : v)
      if (x.from_n == a && x.to_n == b) return x.rate;
    return -1.0;
  };
  EXPECT_NEAR(find(t.pump, 0, 0), p.gamma_p, 1e-15);
  EXPECT_NEAR(find(t.pump, 0, 1), 21.0 / 5.0 * e2 * p.gamma_p, 1e-15);
  EXPECT_NEAR(find(t.lattice, 0, 1), 11.0 / 15.0 * e2 * p.gamma_s, 1e-15);
  EXPECT_NEAR(find(t.pump, 3, 2), 21.0 / 5.0 * e2 * 3 * p.gamma_p, 1e-15);
  for (const auto& x : t.pump) EXPECT_LE(std::abs(x.to_n - x.from_n), 1);
}

TEST(PumpingRates, LambDickeLimit) {
  CoolingParameters p = cooling_parameters(five_step());
  p.eta = 0.0;
  const RateTable t = pumping_rates(p);
  for (const auto& x : t.pump)
    if (x.from_n != x.to_n) EXPECT_EQ(x.rate, 0.0);
  for (const auto& x : t.lattice)
    if (x.from_n != x.to_n) EXPECT_EQ(x.rate, 0.0);
}

TEST(PumpingRates, TruncationGuard) {
  CoolingParameters p = cooling_parameters(five_step());
  p.n_max = 80;
  EXPECT_THROW(pumping_rates(p), TruncationError);
}

TEST(ThermalInitial, Populations) {
  const BlockDensityMatrix r = thermal_initial(0.5, 40);
  EXPECT_NEAR(r.pi(0), 0.5, 1e-12);
  EXPECT_NEAR(r.pi(1), 0.25, 1e-12);
  EXPECT_NEAR(r.trace(), 1.0, 1e-15);
  EXPECT_NEAR(thermal_initial(1e-9, 5).pi(0), 1.0, 1e-8);
  for (double q : {0.1, 0.5, 0.9}) EXPECT_NEAR(thermal_initial(q, 12).trace(), 1.0, 1e-14);
  EXPECT_NEAR(thermal_truncation_loss(0.5, 12), std::pow(0.5, 13), 1e-18);
  EXPECT_THROW(thermal_initial(1.0, 5), InputError);
}

TEST(Evolve, RabiOscillationWithoutDissipation) {
  CoolingConfig c = five_step();
  c.gamma_p = 0.0;
  c.gamma_s = 0.0;
  c.n_max = 4;
  const double tmax = 15.0;
  c.schedule = {{2, tmax}};
  c.samples_per_step = 150;
  c.tolerance = 1e-11;
  BlockDensityMatrix rho = thermal_initial(0.5, c.n_max);
  for (auto& b : rho.blocks) b.setZero();
  rho.ground_pop = 0.0;
  rho.blocks[1](1, 1) = 1.0;  // |2, 4>
  const CoolingTrajectory tr = evolve(c, rho);
  const double v = tr.params.u_r * std::sqrt(2.0);
  double worst = 0.0;
  for (const auto& s : tr.samples) worst = std::max(worst, std::abs(s.state.pi_m2(1) - oracle::rabi_transfer(v, s.t)));
  EXPECT_LT(worst, 1e-3);
  EXPECT_LT(tr.max_trace_drift, 1e-9);
}

TEST(Evolve, FrozenWithoutCouplingOrRates) {
  CoolingConfig c = five_step();
  c.gamma_p = 0.0;
  c.gamma_s = 0.0;
  c.u_r = 0.0;
  c.schedule = {{1, 5.0}};
  const BlockDensityMatrix rho = thermal_initial(0.5, c.n_max);
  const CoolingTrajectory tr = evolve(c, rho);
  const BlockDensityMatrix& f = tr.final_state();
  EXPECT_EQ(f.ground_pop, rho.ground_pop);
  for (int n = 1; n <= c.n_max; ++n) EXPECT_NEAR(std::abs(f.blocks[n - 1](1, 1) - rho.blocks[n - 1](1, 1)), 0.0, 1e-15);
}

TEST(Evolve, InputValidation) {
  CoolingConfig c = five_step();
  EXPECT_THROW(evolve(c, thermal_initial(0.5, 5)), InputError);
  c.schedule.clear();
  EXPECT_THROW(evolve(c, thermal_initial(0.5, c.n_max)), InputError);
  c = five_step();
  c.q_boltzmann = 1.5;
  EXPECT_THROW(c.validate(), InputError);
}

TEST(Evolve, FiveStepScheduleConservesTraceAndPositivity) {
  const CoolingConfig c = five_step();
  const CoolingTrajectory tr = evolve(c, thermal_initial(c.q_boltzmann, c.n_max));
  EXPECT_LT(tr.max_trace_drift, 1e-9);
  EXPECT_GE(tr.min_block_eigenvalue, -1e-9);
  EXPECT_GT(tr.final_state().ground_pop, tr.samples.front().state.ground_pop);
  EXPECT_EQ(tr.step_end_pi0.size(), 5u);
}

TEST(Evolve, PumpNotRateLimitingAboveTenfold) {
  CoolingConfig c = five_step();
  const CoolingParameters p = cooling_parameters(c);
  c.gamma_p = 10.0 * p.gamma_s;
  const double a = evolve(c, thermal_initial(c.q_boltzmann, c.n_max)).final_state().ground_pop;
  c.gamma_p = 20.0 * p.gamma_s;
  const double b = evolve(c, thermal_initial(c.q_boltzmann, c.n_max)).final_state().ground_pop;
  EXPECT_LT(std::abs(b - a) / a, 0.02) << "pi0 " << a << " -> " << b;
}
