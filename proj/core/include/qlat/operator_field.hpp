#pragma once

// Position-dependent (2F+1)x(2F+1) operators stored as finite Fourier series.

#include <Eigen/Core>

#include <map>
#include <vector>

#include "qlat/angular.hpp"
#include "qlat/fields.hpp"

namespace qlat {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Angular-momentum matrices for spin F in the basis m = -F, ..., +F
/// (index i <-> m = -F + i).
struct SpinMatrices {
  CMat fz, fplus, fminus, fx, fy, identity;
  static SpinMatrices of(HalfInt F);
};

/// Index of projection m in the ascending basis of spin F.
int m_index(HalfInt F, HalfInt m);

struct Harmonic {
  Vec3 wavevector;
  CMat coeff;
};

/// U(x) = sum_G C_G exp(i G.x). Immutable once built; equal wavevectors are
/// merged on construction.
class OperatorField {
 public:
  OperatorField(int dim, const std::vector<Harmonic>& terms);

  int dim() const { return dim_; }
  const std::vector<Harmonic>& harmonics() const { return terms_; }

  CMat at(const Vec3& x) const;
  CMat at_z(double z) const { return at(Vec3(0.0, 0.0, z)); }

  OperatorField operator+(const OperatorField& other) const;
  OperatorField scaled(double factor) const;

  /// True when every wavevector is (0, 0, 2n) for integer n.
  bool is_1d_lattice() const;
  /// n -> C_{2n z-hat}. Throws InputError unless is_1d_lattice().
  std::map<int, CMat> z_harmonics() const;

  /// max |U(x) - U(x)^dagger| over a set of sample points.
  double hermiticity_error(const std::vector<Vec3>& points) const;

 private:
  int dim_;
  std::vector<Harmonic> terms_;
};

/// A constant operator as a field.
OperatorField constant_field(const CMat& value);

}  // namespace qlat
