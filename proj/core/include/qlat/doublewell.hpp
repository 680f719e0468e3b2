#pragma once

// Magnetically coupled double wells in a 1D lin-angle-lin lattice: closed
// forms for the spin-1/2 model, the nine-level Cs potential, and unitary
// time evolution of a single lattice period under ramps and noise.

#include <cstdint>
#include <string>
#include <vector>

#include "qlat/angular.hpp"
#include "qlat/bands.hpp"
#include "qlat/operator_field.hpp"

namespace qlat {

enum class DoubleWellModel { spin_half, cesium_f4 };

struct DoubleWellConfig {
  double u1 = 50.0;
  double theta = 1.289761425292083;  // atan(2 sqrt3): wells lambda/6 apart
  /// Transverse Larmor energy hbar gamma B_perp (along x), E_R.
  double omega_perp = 5.0;
  double b_y = 0.0;
  double b_z = 0.0;
  DoubleWellModel model = DoubleWellModel::spin_half;
  int n_max = 16;

  void validate() const;
  AtomSpec atom() const;
  HalfInt spin() const;

  /// U1 = 50 E_R, wells lambda/6 apart, hbar Omega_perp = 5 E_R.
  static DoubleWellConfig spin_half_preset();
  /// Cs F=4, U1 = 150 E_R, theta = pi/2.3, transverse field 10 E_R.
  static DoubleWellConfig cesium_preset();
};

/// theta giving wells k_L dz apart in the spin-1/2 lattice.
double theta_for_separation(double k_dz);
/// k_L dz = atan(tan(theta)/2) for the spin-1/2 (or m = F) wells.
double well_separation(double theta);

/// Full lattice potential (far-detuned light shift plus Zeeman term).
OperatorField double_well_potential(const DoubleWellConfig& config);

struct HarmonicDoubleWell {
  /// Peak-to-peak modulation of each diabatic potential.
  double depth = 0.0;
  double omega = 0.0;
  double eta = 0.0;
  double k_dz = 0.0;
};

HarmonicDoubleWell spin_half_wells(const DoubleWellConfig& config);

/// hbar Omega_perp exp(-(k dz)^2 / 8 eta^2).
double splitting_estimate(const DoubleWellConfig& config);

struct BarrierReport {
  double barrier = 0.0;
  double ground_energy = 0.0;
  bool tunneling = false;
};

/// Lowest eigenvalue of the harmonic two-well model
/// (1/2) M w^2 [(z - dz/2)^2 |+><+| + (z + dz/2)^2 |-><-|] + hbar Omega (|+><-| + h.c.).
double adiabatic_curve(const DoubleWellConfig& config, double z);
BarrierReport adiabatic_barrier(const DoubleWellConfig& config);

/// Relative splitting change (k dz)^2 / (16 eta^2) * dU1/U1.
double broadening(const DoubleWellConfig& config, double du1_over_u1);

struct CesiumDoubleWell {
  OperatorField potential;
  /// Indexed by m + F.
  std::vector<double> depths;
  std::vector<double> offsets;
  /// Well centre of each diagonal in this library's orientation (m > 0 at
  /// negative z).
  std::vector<double> centers;
};

CesiumDoubleWell cesium_double_well(const DoubleWellConfig& config);

/// Pairwise-parabolic diagonal U_{p,m} [(z - c_m)^2 - 1] about the m-th centre.
double parabolic_diagonal(const CesiumDoubleWell& wells, HalfInt m, double z);

/// dU/dtheta of the lattice light shift: the polarization-angle noise
/// operator, multiplied by epsilon(t) during evolution.
OperatorField noise_operator(const DoubleWellConfig& config);

enum class RampParameter { b_z, omega_perp, theta, epsilon_noise };
enum class RampShape { linear, smoothstep };

struct RampSegment {
  RampParameter parameter = RampParameter::b_z;
  double start = 0.0;
  double end = 0.0;
  double duration = 1.0;
  RampShape shape = RampShape::linear;
};

struct RampProtocol {
  std::vector<RampSegment> segments;
  double dt = 0.01;

  void validate() const;
  double total_duration() const;
};

/// Unitary propagator on one lattice period at q = 0. The Hamiltonian at the
/// reference configuration is diagonalized once and applied exactly; any
/// deviation (ramped parameters, noise) is applied by Strang splitting as a
/// multiplication operator on a (2 n_max + 1)-point grid.
class Propagator {
 public:
  explicit Propagator(const DoubleWellConfig& reference);

  int dim() const { return static_cast<int>(energies_.size()); }
  const DoubleWellConfig& reference() const { return ref_; }
  const Eigen::VectorXd& energies() const { return energies_; }
  const CMat& eigenvectors() const { return vectors_; }

  /// Exact evolution under the reference Hamiltonian.
  CVec evolve_static(const CVec& psi, double t) const;
  /// One Strang step with parameters `mid` and noise amplitude epsilon.
  CVec step(const CVec& psi, double dt, const DoubleWellConfig& mid, double epsilon) const;

  double fz(const CVec& psi) const;
  double energy(const CVec& psi) const;

 private:
  std::vector<CMat> deviation_exponentials(const DoubleWellConfig& mid, double epsilon, double tau) const;

  DoubleWellConfig ref_;
  HalfInt spin_;
  int n_max_;
  Eigen::VectorXd energies_;
  CMat vectors_;
  CMat hamiltonian_;
  CMat dft_;  // grid <- coefficients
  OperatorField ref_potential_;
  OperatorField noise_;
  // Both sampled on the grid z_j = pi j / (2 n_max + 1).
  std::vector<CMat> ref_grid_, noise_grid_;
  bool noise_diagonal_ = true;
};

struct PreparedState {
  CVec state;
  double fidelity = 0.0;
  /// Duration times the final doublet splitting.
  double adiabaticity = 0.0;
  std::vector<std::string> warnings;
};

enum class PrepTarget { symmetric, right };

/// Starts from the ground state at the protocol's initial parameters and
/// evolves through the protocol. Fidelity is |<target|psi>|^2 against S or R
/// of the final configuration.
PreparedState prepare_state(const DoubleWellConfig& config, const RampProtocol& protocol, PrepTarget target);

struct NoiseSpec {
  double amplitude = 0.0;
  double correlation_time = 1.0;
};

struct NoisyTrajectory {
  std::uint64_t seed = 0;
  std::vector<double> t;
  std::vector<double> fz;
  std::vector<double> norm;
};

/// Fixed-step evolution with an Ornstein-Uhlenbeck epsilon(t), piecewise
/// constant per step and deterministic for a given seed. Throws NumericError
/// when the norm drifts by more than 1e-8.
NoisyTrajectory evolve_noisy(const Propagator& propagator, const CVec& initial, const NoiseSpec& noise,
                             double duration, int steps, std::uint64_t seed, int sample_every = 1);

struct OscillationFit {
  /// max |y|.
  double amplitude = 0.0;
  /// pi over the mean spacing of zero crossings; 0 with fewer than two.
  double angular_frequency = 0.0;
  int crossings = 0;
};

/// Zero crossings are located by linear interpolation between samples.
OscillationFit fit_oscillation(const std::vector<double>& t, const std::vector<double>& y);

struct Ensemble {
  std::vector<NoisyTrajectory> runs;
  NoisyTrajectory mean;
};

/// Runs one trajectory per seed (on up to `threads` threads) and averages
/// them in seed order.
Ensemble evolve_ensemble(const Propagator& propagator, const CVec& initial, const NoiseSpec& noise, double duration,
                         int steps, const std::vector<std::uint64_t>& seeds, int sample_every = 1, int threads = 1);

}  // namespace qlat
