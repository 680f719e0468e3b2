#include "qlat/fields.hpp"

#include <cmath>

#include "qlat/errors.hpp"

namespace qlat {

namespace {
constexpr double kGeomTol = 1e-12;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}  // namespace

PlaneWave PlaneWave::make(const Vec3& wavevector, const CVec3& polarization, double phase) {
  if (std::abs(wavevector.norm() - 1.0) > kGeomTol) throw InputError("plane wave: |k| must be 1 (units of k_L)");
  const cplx overlap = wavevector.cast<cplx>().dot(polarization);
  if (std::abs(overlap) > kGeomTol * std::max(1.0, polarization.norm()))
    throw InputError("plane wave: polarization is not transverse to k");
  return PlaneWave{wavevector, polarization, phase};
}

void LatticeGeometry::validate() const {
  if (beams.empty()) throw InputError("geometry: at least one beam is required");
  if (std::abs(quantization_axis.norm() - 1.0) > kGeomTol) throw InputError("geometry: quantization axis must be unit norm");
  for (const auto& b : beams) PlaneWave::make(b.wavevector, b.polarization, b.phase);
}

AxisFrame AxisFrame::about(const Vec3& axis) {
  if (std::abs(axis.norm() - 1.0) > kGeomTol) throw InputError("axis must be unit norm");
  // Project x-hat out of the axis unless nearly parallel, then fall back to y-hat.
  Vec3 seed = std::abs(axis.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  Vec3 u1 = (seed - seed.dot(axis) * axis).normalized();
  Vec3 u2 = axis.cross(u1);
  return AxisFrame{u1, u2, axis};
}

CVec3 spherical_basis(int q, const Vec3& axis) {
  const AxisFrame f = AxisFrame::about(axis);
  const cplx i(0.0, 1.0);
  switch (q) {
    case 1:
      return -(f.u1.cast<cplx>() + i * f.u2.cast<cplx>()) * kInvSqrt2;
    case 0:
      return f.axis.cast<cplx>();
    case -1:
      return (f.u1.cast<cplx>() - i * f.u2.cast<cplx>()) * kInvSqrt2;
    default:
      throw InputError("spherical index must be -1, 0 or +1");
  }
}

SphericalComponents spherical_components(const CVec3& epsilon, const Vec3& axis) {
  // dot() conjugates its first argument: e_q^* . eps
  return SphericalComponents{spherical_basis(1, axis).dot(epsilon), spherical_basis(-1, axis).dot(epsilon),
                             spherical_basis(0, axis).dot(epsilon)};
}

CVec3 from_spherical(const SphericalComponents& c, const Vec3& axis) {
  return c.sigma_plus * spherical_basis(1, axis) + c.sigma_minus * spherical_basis(-1, axis) +
         c.pi * spherical_basis(0, axis);
}

CVec3 field_at(const LatticeGeometry& geometry, const Vec3& x) {
  CVec3 eps = CVec3::Zero();
  for (const auto& b : geometry.beams) eps += b.polarization * std::polar(1.0, b.wavevector.dot(x) + b.phase);
  return eps;
}

LatticeGeometry lin_angle_lin(double theta, double phase_offset) {
  if (theta < 0.0 || theta > M_PI) throw InputError("lin_angle_lin: theta must lie in [0, pi]");
  LatticeGeometry g;
  g.beams.push_back(PlaneWave::make(Vec3::UnitZ(), CVec3(1.0, 0.0, 0.0), 0.0));
  g.beams.push_back(PlaneWave::make(-Vec3::UnitZ(), CVec3(std::cos(theta), std::sin(theta), 0.0), phase_offset));
  return g;
}

LatticeGeometry three_beam_2d(double theta, double e_pi_amplitude, double phi) {
  if (e_pi_amplitude < 0.0) throw InputError("three_beam_2d: e_pi amplitude must be >= 0");
  const double s = std::sin(theta), c = std::cos(theta);
  LatticeGeometry g;
  g.beams.push_back(PlaneWave::make(-Vec3::UnitY(), CVec3(1.0, 0.0, std::polar(e_pi_amplitude, phi)), 0.0));
  g.beams.push_back(PlaneWave::make(Vec3(s, c, 0.0), CVec3(c, -s, 0.0), -theta));
  g.beams.push_back(PlaneWave::make(Vec3(-s, c, 0.0), CVec3(c, s, 0.0), theta));
  return g;
}

CVec3 cross(const CVec3& a, const CVec3& b) {
  return CVec3(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0));
}

EffectiveField effective_field(const LatticeGeometry& geometry, double u1, const Vec3& x) {
  const CVec3 eps = field_at(geometry, x);
  const CVec3 c = cross(eps.conjugate(), eps);
  const cplx i(0.0, 1.0);
  const CVec3 b = (i / 3.0) * u1 * c;
  return EffectiveField{-(2.0 / 3.0) * u1 * eps.squaredNorm(), b.real()};
}

}  // namespace qlat
