#pragma once

// Raman couplings between vibrational manifolds of neighbouring magnetic
// sublevels, the photon scattering rate, and the figures of merit
// kappa = U_R / gamma_s and kappa' = U_R / (gamma_s (dk z0)^2).

#include <complex>
#include <vector>

#include "qlat/angular.hpp"
#include "qlat/fields.hpp"
#include "qlat/operator_field.hpp"

namespace qlat {

struct CouplingReport {
  double u_r = 0.0;
  /// hbar gamma_s in E_R.
  double gamma_s = 0.0;
  double kappa = 0.0;
  double kappa_prime = 0.0;
  /// Second axis of a 2D lattice; equals kappa_prime in 1D.
  double kappa_prime_y = 0.0;
  double eta = 0.0;
  /// (dk z0)^2 used for kappa_prime.
  double momentum_spread = 0.0;
};

/// beta_{2,4} for Cs F=4 from the closed form over F' = 5, 4, 3 with
/// interval-rule splittings 5 delta and 9 delta. `delta` is the detuning from
/// F=4 -> F'=5 in units of Gamma. With `asymptotic`, returns the leading
/// (sqrt7/6) delta_hfs/delta term. Throws PoleError on an F' resonance and
/// InputError for an atom other than a J=1/2 -> 3/2, I=7/2 line.
double beta_24(const AtomSpec& atom, double delta, bool asymptotic = false);

/// hbar gamma_s = u1 (Gamma/|Delta|) |eps(x)|^2. With width > 0 the intensity
/// is averaged over an isotropic Gaussian of that rms width centred on x.
double scattering_rate(const LatticeGeometry& geometry, double u1, double delta, const Vec3& x, double width = 0.0);

struct Dm2Options {
  /// (dk z0)^2 / eta^2 for lattice photon scattering.
  double momentum_factor = 11.0 / 15.0;
  bool asymptotic_beta = false;
};

/// Delta m = 2 coupling in a 1D lin-perp-lin lattice: U_R = 2 u1 |beta| eta,
/// eta from the far-detuned m = F well.
CouplingReport raman_dm2(double u1, const AtomSpec& atom, double delta, const Dm2Options& options = {});

struct Dm1Options {
  /// (dk z0)^2 / eta^2 along each lattice axis.
  double momentum_factor = 0.3824;
  double theta = M_PI / 3.0;
};

/// Delta m = 1 coupling in the three-beam 2D lattice with a pi admixture
/// e_pi_ratio on one beam: U_R = u1/(2 sqrt(2F)) (E_pi/E_1) eta. eta and
/// gamma_s are evaluated on the sigma lattice (e_pi -> 0) at the origin.
CouplingReport raman_dm1_2d(double u1, const AtomSpec& atom, double delta, double e_pi_ratio, double phi,
                            const Dm1Options& options = {});

/// Harmonic-oscillator product state of sublevel m, centred on `center`, with
/// quanta[i] along axes[i] and rms ground-state width widths[i].
struct OscillatorState {
  HalfInt m;
  Vec3 center = Vec3::Zero();
  std::vector<Vec3> axes;
  std::vector<int> quanta;
  std::vector<double> widths;
};

/// <bra| U_{m_bra, m_ket}(x) |ket> by quadrature over the span of the axes.
/// Both states must use the same axes. Throws InputError on mismatch.
std::complex<double> raman_matrix_element(const OperatorField& potential, const OscillatorState& bra,
                                          const OscillatorState& ket);

/// Normalized harmonic-oscillator eigenfunction with rms ground width z0.
double oscillator_function(int n, double x, double z0);

}  // namespace qlat
