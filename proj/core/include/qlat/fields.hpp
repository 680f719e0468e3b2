#pragma once

// Lattice light fields built from finite sets of plane waves.
//
// Lengths are in 1/k_L, so every beam has |k| = 1. The local polarization
// vector eps(x) is dimensionless in units of the single-beam amplitude E_1;
// the physical field is Re[E_1 eps(x) exp(-i w t)].

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <complex>
#include <vector>

namespace qlat {

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using cplx = std::complex<double>;

struct PlaneWave {
  Vec3 wavevector;
  /// Complex polarization, including any per-beam amplitude factor.
  CVec3 polarization;
  double phase = 0.0;

  /// Validates |k| = 1 and transversality (1e-12).
  static PlaneWave make(const Vec3& wavevector, const CVec3& polarization, double phase = 0.0);
};

struct LatticeGeometry {
  std::vector<PlaneWave> beams;
  /// External static field as a Larmor energy vector hbar*gamma*B, in E_R.
  Vec3 external_b = Vec3::Zero();
  Vec3 quantization_axis = Vec3::UnitZ();

  void validate() const;
};

/// Orthonormal right-handed frame (u1, u2, axis) used to define spherical
/// components about `axis`. For axis = z this is (x, y, z).
struct AxisFrame {
  Vec3 u1, u2, axis;
  static AxisFrame about(const Vec3& axis);
};

/// Spherical components of a field about an axis, eps_q = e_q^* . eps with
/// e_{+1} = -(u1 + i u2)/sqrt2, e_0 = axis, e_{-1} = (u1 - i u2)/sqrt2.
struct SphericalComponents {
  cplx sigma_plus;
  cplx sigma_minus;
  cplx pi;
};

/// a x b without conjugation (Eigen's cross() conjugates complex results).
CVec3 cross(const CVec3& a, const CVec3& b);

/// eps(x) = sum over beams of polarization * exp(i (k.x + phase)).
CVec3 field_at(const LatticeGeometry& geometry, const Vec3& x);

/// Two counterpropagating beams along +-z with linear polarizations at angle
/// theta: x-hat on the +z beam, (cos theta, sin theta, 0) on the -z beam. With
/// phase_offset = 0 the helicity standing waves are cos(z +- theta/2).
LatticeGeometry lin_angle_lin(double theta, double phase_offset = 0.0);

/// Three coplanar in-plane polarized beams 120 degrees apart for theta = pi/3
/// (one along -y, two along (+-sin theta, cos theta)), phased so the sigma+
/// maximum sits at the origin. A pi-polarized admixture of amplitude e_pi and
/// relative phase exp(i phi) rides on the -y beam.
LatticeGeometry three_beam_2d(double theta, double e_pi_amplitude, double phi);

SphericalComponents spherical_components(const CVec3& epsilon, const Vec3& axis);
/// Inverse of spherical_components.
CVec3 from_spherical(const SphericalComponents& c, const Vec3& axis);

/// Unit spherical basis vector e_q about `axis`, q in {-1, 0, +1}.
CVec3 spherical_basis(int q, const Vec3& axis);

struct EffectiveField {
  /// State-independent light shift U_J = -(2/3) U_1 |eps|^2.
  double scalar;
  /// Vector light shift B_eff = (i/3) U_1 (eps^* x eps), real.
  Vec3 b_eff;
};

/// Scalar and vector light shift of the far-detuned J=1/2 -> J'=3/2 operator.
/// u1 > 0 is the magnitude of the single-beam red-detuned light shift.
EffectiveField effective_field(const LatticeGeometry& geometry, double u1, const Vec3& x);

}  // namespace qlat
