#pragma once

// Angular-momentum algebra on half-integer quantum numbers.
//
// All coupling coefficients use the Condon-Shortley phase convention. The
// factorial sums are evaluated in exact rational arithmetic and only the final
// square root is taken in double precision, so results are correct to a few
// ulp even for F = 4 -> F' = 5 couplings.

#include <compare>
#include <string>
#include <vector>

namespace qlat {

/// A non-negative or signed multiple of 1/2, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int value) : twice_(2 * value) {}

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }

  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string str() const;

 private:
  int twice_ = 0;
};

/// n/2, e.g. half(7) == 7/2.
constexpr HalfInt half(int numerator) { return HalfInt::from_twice(numerator); }

/// Projections m = -j, -j+1, ..., j in ascending order.
std::vector<HalfInt> projections(HalfInt j);

/// <j1 m1; j2 m2 | J M>. Zero when M != m1 + m2 or the triangle rule fails.
/// Throws InputError for negative magnitudes, |m| > j, or a projection whose
/// parity does not match its magnitude.
double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);

/// {j1 j2 j3; j4 j5 j6}. A triad violating the triangle rule gives 0.
double wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6);

/// True when (a, b, c) can couple: |a-b| <= c <= a+b with integer perimeter.
bool triangle(HalfInt a, HalfInt b, HalfInt c);

/// Fine/hyperfine description of an alkali D line in recoil units.
struct AtomSpec {
  HalfInt j{half(1)};
  HalfInt j_excited{half(3)};
  HalfInt nuclear_spin{half(7)};
  /// Natural linewidth Gamma in E_R.
  double linewidth = 2533.0;
  /// Excited interval-rule constant delta, in units of Gamma: the splitting
  /// between F' and F'-1 is F' * delta.
  double excited_interval = 10.0;
  /// Ground interval-rule constant, in units of Gamma (only used for F below
  /// the stretched ground level).
  double ground_interval = 439.08;
  /// Larmor energy per gauss, E_R / G.
  double larmor_per_gauss = 680.0;

  /// Cs 6S_1/2 -> 6P_3/2 with the idealised interval rule delta = 10 Gamma.
  static AtomSpec cesium_d2();
  /// A J=1/2 -> J'=3/2 atom without nuclear spin.
  static AtomSpec spin_half();

  void validate() const;

  std::vector<HalfInt> ground_levels() const;
  std::vector<HalfInt> excited_levels() const;
  HalfInt stretched_ground() const { return j + nuclear_spin; }
  HalfInt stretched_excited() const { return j_excited + nuclear_spin; }
  bool is_ground_level(HalfInt F) const;
  bool is_excited_level(HalfInt Fp) const;

  /// Energy of F'_max above F', in units of Gamma (delta_{F'max,F'}).
  double excited_offset(HalfInt Fp) const;
  /// Energy of F_max above F, in units of Gamma.
  double ground_offset(HalfInt F) const;
  /// Detuning Delta_{F,F'} of the laser from F -> F', given the detuning from
  /// the stretched transition F_max -> F'_max (units of Gamma, negative = red).
  double detuning(HalfInt F, HalfInt Fp, double delta_stretch) const;
};

/// Relative oscillator strength f_{F'F} for decay F' -> F; sums to one over F.
double oscillator_strength(const AtomSpec& atom, HalfInt F, HalfInt Fp);

}  // namespace qlat
