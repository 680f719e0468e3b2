#pragma once

// Resolved-sideband Raman cooling of Cs in a 1D lin-perp-lin lattice.
//
// The state space is the m=4 ladder |n, 4> (n = 0..n_max) and the m=2 ladder
// |n, 2> (n = 0..n_max-1). Block n >= 1 is the Raman-coupled pair
// {|n-1, 2>, |n, 4>}; |0, 4> is uncoupled. Optical pumping and lattice photon
// scattering move population between blocks.

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "qlat/angular.hpp"

namespace qlat {

struct CoolingStep {
  int target_n = 1;
  /// hbar/E_R; <= 0 selects duration_scale / transfer rate.
  double duration = 0.0;
};

struct CoolingConfig {
  AtomSpec atom = AtomSpec::cesium_d2();
  double u1 = 500.0;
  double delta = -2000.0;
  /// Pump rate in E_R/hbar; unset means gamma_p_ratio * gamma_s.
  std::optional<double> gamma_p;
  double gamma_p_ratio = 10.0;
  double q_boltzmann = 0.5;
  int n_max = 12;
  std::vector<CoolingStep> schedule;
  double duration_scale = 5.0;
  int samples_per_step = 40;
  double tolerance = 1e-8;
  /// Overrides of derived quantities, for controlled experiments.
  std::optional<double> gamma_s;
  std::optional<double> u_r;

  void validate() const;
};

/// The five-step n = 5 -> 1 sequence.
std::vector<CoolingStep> descending_schedule(int from_n, double duration = 0.0);

struct CoolingParameters {
  double omega2 = 0.0, omega4 = 0.0;
  double eta = 0.0;
  double u_r = 0.0;
  double gamma_s = 0.0, gamma_p = 0.0;
  /// 4 U_R^2 / (gamma_p + gamma_s), overdamped two-level transfer rate.
  double transfer_rate = 0.0;
  int n_max = 0;
};

CoolingParameters cooling_parameters(const CoolingConfig& config);

/// Larmor shift hbar gamma B_z (E_R) that makes block n degenerate.
/// Throws UnsupportedConfigError when omega2 == omega4.
double resonant_bz(int n, const CoolingParameters& params);
double resonant_bz(int n, const CoolingConfig& config);

/// Rows/columns: |n-1, m=2>, |n, m=4>.
Eigen::Matrix2cd block_hamiltonian(int n, double b_z, const CoolingParameters& params);
Eigen::Matrix2cd block_hamiltonian(int n, double b_z, const CoolingConfig& config);

struct Transfer {
  int from_n;
  int to_n;
  double rate;
};

struct RateTable {
  /// |n, 2> -> |n', 4>.
  std::vector<Transfer> pump;
  /// |n, 4> -> |n', 4>, including the elastic n -> n entries.
  std::vector<Transfer> lattice;
};

/// First-order-in-eta^2 rates with |dn| <= 1. Throws TruncationError if a
/// diagonal rate turns negative inside the ladder.
RateTable pumping_rates(const CoolingParameters& params);
RateTable pumping_rates(const CoolingConfig& config);

struct BlockDensityMatrix {
  /// blocks[n-1] for n = 1..n_max.
  std::vector<Eigen::Matrix2cd> blocks;
  double ground_pop = 0.0;

  int n_max() const { return static_cast<int>(blocks.size()); }
  double trace() const;
  /// Population of |n, 4>.
  double pi(int n) const;
  /// Population of |n, 2>.
  double pi_m2(int n) const;
  double min_eigenvalue() const;
};

/// pi_n proportional to q^n on the m=4 ladder, normalized over n <= n_max.
BlockDensityMatrix thermal_initial(double q_b, int n_max);
/// Fraction of the untruncated thermal distribution above n_max.
double thermal_truncation_loss(double q_b, int n_max);

struct CoolingSample {
  double t = 0.0;
  int step = 0;
  BlockDensityMatrix state;
};

struct CoolingTrajectory {
  CoolingParameters params;
  std::vector<CoolingSample> samples;
  std::vector<double> step_durations;
  std::vector<double> step_end_pi0;
  double max_trace_drift = 0.0;
  double min_block_eigenvalue = 0.0;
  std::vector<std::string> warnings;

  const BlockDensityMatrix& final_state() const { return samples.back().state; }
};

/// Integrates the block master equation through the schedule with adaptive
/// Dormand-Prince stepping. Throws NumericError when the stepper fails.
CoolingTrajectory evolve(const CoolingConfig& config, const BlockDensityMatrix& initial);

}  // namespace qlat
