#pragma once

// 1D spinor band structure by plane-wave diagonalization.
//
// A Bloch spinor at quasimomentum q is sum_n c_{n,m} exp(i (q + 2n) z) |m>
// with n in [-n_max, n_max]; the kinetic energy of a plane wave is (q + 2n)^2
// in recoil units. Coefficients are stored flat at index (n + n_max) * d + i_m
// with d = 2F + 1 and i_m the ascending-m index.

#include <Eigen/Core>

#include <string>
#include <vector>

#include "qlat/angular.hpp"
#include "qlat/operator_field.hpp"

namespace qlat {

struct BandOptions {
  int n_max = 24;
  /// Number of lowest bands kept per q.
  int band_count = 8;
  bool want_vectors = true;
};

struct BandSolution {
  HalfInt spin;
  int n_max = 0;
  std::vector<double> q_grid;
  /// energies[iq](band), ascending.
  std::vector<Eigen::VectorXd> energies;
  /// spinors[iq].col(band); empty when vectors were not requested.
  std::vector<CMat> spinors;

  int dim() const { return spin.twice() + 1; }
  /// Index of q = 0 in the grid; throws InputError if absent.
  int zero_index() const;
};

/// q_count evenly spaced points over [-1, 1] inclusive; odd counts contain
/// q = 0 exactly.
std::vector<double> uniform_q_grid(int q_count);

CMat bloch_hamiltonian(const OperatorField& potential, double q, int n_max);

/// Throws InputError unless the potential has period pi (in 1/k_L) along z,
/// and NumericError if the eigensolver fails.
BandSolution band_structure(const OperatorField& potential, const std::vector<double>& q_grid,
                            const BandOptions& options = {});

struct DoubletReport {
  /// E_1(0) - E_0(0).
  double splitting = 0.0;
  /// E_2(0) - E_1(0).
  double gap_to_next = 0.0;
  /// max_q E_b(q) - min_q E_b(q) for each kept band.
  std::vector<double> band_widths;
};

DoubletReport doublet_splitting(const BandSolution& solution);

struct LocalizedState {
  CVec coefficients;
  HalfInt spin;
  int n_max = 0;
  std::string label;
};

struct LocalizedPair {
  LocalizedState symmetric, antisymmetric, left, right;
  /// <psi|P|psi> for S and A, where P maps c_{n,m} to c_{-n,-m}.
  double parity_s = 0.0, parity_a = 0.0;
};

/// S and A are the two lowest q = 0 spinors. S is made real-positive at its
/// largest coefficient; A is phased so <S|F_z|A> is real and >= 0, which makes
/// L = (S + A)/sqrt2 the state of larger <F_z>. Throws DegeneracyError when
/// the gap to band 2 is below 3x the doublet splitting.
LocalizedPair localized_pair(const BandSolution& solution);

/// sum_m m * sum_n |c_{n,m}|^2.
double magnetization(const LocalizedState& state);

/// Spinor components u^{(m)}(z) at quasimomentum q.
CVec spinor_at(const LocalizedState& state, double q, double z);

/// Parity image c_{n,m} -> c_{-n,-m}.
CVec parity_image(const CVec& coefficients, HalfInt spin, int n_max);

struct HarmonicWell {
  double omega = 0.0;  // hbar omega_osc in E_R
  double z0 = 0.0;     // rms ground-state width, 1/k_L
  double eta = 0.0;    // k_L z0
  double position = 0.0;
  double curvature = 0.0;
  double minimum = 0.0;
};

/// Harmonic expansion of the m-th diagonal of a 1D lattice potential about its
/// deepest minimum. Throws InputError when the diagonal has no minimum.
HarmonicWell harmonic_well(const OperatorField& potential, HalfInt m);

/// Harmonic expansion of diagonal m along `direction` at a given point, which
/// must be a stationary point along that direction.
HarmonicWell harmonic_well_at(const OperatorField& potential, HalfInt m, const Vec3& point, const Vec3& direction);

/// Lowest `count` eigenvalues of U(z) at each z.
std::vector<Eigen::VectorXd> adiabatic_potentials(const OperatorField& potential, const std::vector<double>& z,
                                                  int count);

}  // namespace qlat
