#pragma once

// Ground-manifold light-shift operators: the tensor polarizability of a
// hyperfine level and the full potential U(x) = -E^* . alpha . E - mu . B.

#include <array>

#include "qlat/angular.hpp"
#include "qlat/fields.hpp"
#include "qlat/operator_field.hpp"

namespace qlat {

enum class DetuningMode { finite_hyperfine, infinite_limit };

struct DetuningSpec {
  /// Detuning from the stretched F_max -> F'_max line, units of Gamma
  /// (negative = red).
  double delta_stretch = -2000.0;
  DetuningMode mode = DetuningMode::finite_hyperfine;

  void validate() const;
};

/// alpha_{q'q} / alpha~ indexed [q' + 1][q + 1], each a (2F+1)-square matrix
/// in the ascending-m basis.
using SphericalAlpha = std::array<std::array<CMat, 3>, 3>;
/// Cartesian alpha_ij / alpha~ in the frame of the quantization axis.
using CartesianAlpha = std::array<std::array<CMat, 3>, 3>;

/// Polarizability of ground level F summed over the excited multiplet, each
/// F' weighted by f_{F'F} and Delta_{Fmax,F'max} / Delta_{F,F'}. In
/// infinite_limit mode all detuning ratios are 1.
SphericalAlpha alpha_tensor(const AtomSpec& atom, HalfInt F, const DetuningSpec& det);

CartesianAlpha to_cartesian(const SphericalAlpha& alpha);

/// Far-detuned closed form for the stretched level:
/// (2/3) delta_ij I - (i/3) eps_ijk F_k / F.
CartesianAlpha stretched_limit_alpha(HalfInt F);

/// Symmetric traceless (rank-2) part of a Cartesian tensor operator.
CartesianAlpha rank2_part(const CartesianAlpha& alpha);

/// Light shift plus Zeeman term -B_ext . F as a Fourier series. Finite mode
/// contracts alpha_tensor with the beam field; infinite_limit mode uses
/// U_J I + B_eff . F / F and requires the stretched ground level.
OperatorField potential_operator(const LatticeGeometry& geometry, const AtomSpec& atom, HalfInt F, double u1,
                                 const DetuningSpec& det);

/// Zeeman term -B . F (B as a Larmor-energy vector) in the frame of `axis`.
CMat zeeman_term(HalfInt F, const Vec3& b, const Vec3& axis);

struct AppendixBReport {
  /// Tr(D^dagger . D); exactly 4.
  double trace = 0.0;
  /// (D^dagger x D)_z and the expected -(2/3) i sigma_z.
  CMat cross_z;
  CMat expected_cross_z;
  double cross_z_deviation = 0.0;
  /// Max element of the rank-2 part of alpha(1/2 -> 3/2).
  double rank2_norm = 0.0;
  /// Max deviation of alpha(1/2 -> 3/2) from (2/3) delta - (i/3) eps sigma.
  double closed_form_deviation = 0.0;
};

/// Builds the normalized dipole operators of a J=1/2 -> J'=3/2 transition and
/// evaluates the trace and vector identities of its polarizability.
AppendixBReport appendix_b_identities();

}  // namespace qlat
