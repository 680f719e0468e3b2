#include "qlat/angular.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "qlat/errors.hpp"

namespace qlat {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

constexpr int kMaxFactorial = 256;

const cpp_int& factorial(int n) {
  static const std::vector<cpp_int> table = [] {
    std::vector<cpp_int> t(kMaxFactorial + 1);
    t[0] = 1;
    for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (n < 0 || n > kMaxFactorial) throw InputError("factorial argument out of range: " + std::to_string(n));
  return table[n];
}

// (a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)!, i.e. the square of the triangle
// coefficient. Assumes triangle(a, b, c).
cpp_rational triangle_sq(HalfInt a, HalfInt b, HalfInt c) {
  const int A = a.twice(), B = b.twice(), C = c.twice();
  cpp_rational num = factorial((A + B - C) / 2) * factorial((A - B + C) / 2) * factorial((-A + B + C) / 2);
  return num / cpp_rational(factorial((A + B + C) / 2 + 1));
}

void check_magnitude(HalfInt j, const char* name) {
  if (j.twice() < 0) throw InputError(std::string("negative angular momentum ") + name + " = " + j.str());
}

void check_projection(HalfInt j, HalfInt m, const char* name) {
  if (std::abs(m.twice()) > j.twice())
    throw InputError(std::string("projection ") + name + " = " + m.str() + " exceeds magnitude " + j.str());
  if ((j.twice() - m.twice()) % 2 != 0)
    throw InputError(std::string("projection ") + name + " = " + m.str() + " has wrong parity for j = " + j.str());
}

double signed_sqrt(const cpp_rational& sum, const cpp_rational& prefactor_sq) {
  if (sum == 0) return 0.0;
  const cpp_rational sq = sum * sum * prefactor_sq;
  const double mag = std::sqrt(sq.convert_to<double>());
  return sum < 0 ? -mag : mag;
}

}  // namespace

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

std::vector<HalfInt> projections(HalfInt j) {
  std::vector<HalfInt> out;
  for (int tm = -j.twice(); tm <= j.twice(); tm += 2) out.push_back(HalfInt::from_twice(tm));
  return out;
}

bool triangle(HalfInt a, HalfInt b, HalfInt c) {
  const int A = a.twice(), B = b.twice(), C = c.twice();
  if (A < 0 || B < 0 || C < 0) return false;
  if ((A + B + C) % 2 != 0) return false;
  return C >= std::abs(A - B) && C <= A + B;
}

double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
  check_magnitude(j1, "j1");
  check_magnitude(j2, "j2");
  check_magnitude(J, "J");
  check_projection(j1, m1, "m1");
  check_projection(j2, m2, "m2");
  check_projection(J, M, "M");
  if (M != m1 + m2) return 0.0;
  if (!triangle(j1, j2, J)) return 0.0;

  // Racah's closed form, all indices in units of 1 after halving.
  const int a = j1.twice(), b = j2.twice(), c = J.twice();
  const int am = m1.twice(), bm = m2.twice(), cm = M.twice();

  const int k_max = std::min({(a + b - c) / 2, (a - am) / 2, (b + bm) / 2});
  const int k_min = std::max({0, (b - c - am) / 2, (a + bm - c) / 2});

  cpp_rational sum = 0;
  for (int k = k_min; k <= k_max; ++k) {
    cpp_int den = factorial(k) * factorial((a + b - c) / 2 - k) * factorial((a - am) / 2 - k) *
                  factorial((b + bm) / 2 - k) * factorial((c - b + am) / 2 + k) * factorial((c - a - bm) / 2 + k);
    cpp_rational term(cpp_int(1), den);
    sum += (k % 2 == 0) ? term : cpp_rational(-term);
  }

  cpp_rational pre = triangle_sq(j1, j2, J) * (c + 1);
  pre *= cpp_rational(factorial((c + cm) / 2) * factorial((c - cm) / 2) * factorial((a - am) / 2) *
                      factorial((a + am) / 2) * factorial((b - bm) / 2) * factorial((b + bm) / 2));
  return signed_sqrt(sum, pre);
}

double wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6) {
  if (!triangle(j1, j2, j3) || !triangle(j1, j5, j6) || !triangle(j4, j2, j6) || !triangle(j4, j5, j3))
    return 0.0;

  const int a = j1.twice(), b = j2.twice(), c = j3.twice();
  const int d = j4.twice(), e = j5.twice(), f = j6.twice();
  const int t_min = std::max({a + b + c, a + e + f, d + b + f, d + e + c}) / 2;
  const int t_max = std::min({a + b + d + e, a + c + d + f, b + c + e + f}) / 2;

  cpp_rational sum = 0;
  for (int t = t_min; t <= t_max; ++t) {
    cpp_int den = factorial(t - (a + b + c) / 2) * factorial(t - (a + e + f) / 2) * factorial(t - (d + b + f) / 2) *
                  factorial(t - (d + e + c) / 2) * factorial((a + b + d + e) / 2 - t) *
                  factorial((a + c + d + f) / 2 - t) * factorial((b + c + e + f) / 2 - t);
    cpp_rational term(factorial(t + 1), den);
    sum += (t % 2 == 0) ? term : cpp_rational(-term);
  }
  const cpp_rational pre = triangle_sq(j1, j2, j3) * triangle_sq(j1, j5, j6) * triangle_sq(j4, j2, j6) *
                           triangle_sq(j4, j5, j3);
  return signed_sqrt(sum, pre);
}

AtomSpec AtomSpec::cesium_d2() { return AtomSpec{}; }

AtomSpec AtomSpec::spin_half() {
  AtomSpec a;
  a.nuclear_spin = HalfInt(0);
  return a;
}

void AtomSpec::validate() const {
  if (j.twice() < 0 || j_excited.twice() < 0 || nuclear_spin.twice() < 0)
    throw InputError("atom: angular momenta must be non-negative");
  if (std::abs(j.twice() - j_excited.twice()) > 2) throw InputError("atom: |J - J'| must be at most 1");
  if (j == HalfInt(0) && j_excited == HalfInt(0)) throw InputError("atom: J = 0 -> J' = 0 is dipole forbidden");
  if (!(linewidth > 0.0)) throw InputError("atom: linewidth must be positive");
  if (excited_interval < 0.0 || ground_interval < 0.0) throw InputError("atom: interval constants must be >= 0");
}

namespace {
std::vector<HalfInt> coupled_levels(HalfInt a, HalfInt b) {
  std::vector<HalfInt> out;
  for (int t = std::abs(a.twice() - b.twice()); t <= a.twice() + b.twice(); t += 2) out.push_back(HalfInt::from_twice(t));
  return out;
}

// Interval rule: level F_top sits sum_{k=F+1}^{F_top} k * constant above F.
double interval_offset(HalfInt top, HalfInt F, double constant) {
  double sum = 0.0;
  for (HalfInt k = F + HalfInt(1); k <= top; k += HalfInt(1)) sum += k.value();
  return sum * constant;
}
}  // namespace

std::vector<HalfInt> AtomSpec::ground_levels() const { return coupled_levels(j, nuclear_spin); }
std::vector<HalfInt> AtomSpec::excited_levels() const { return coupled_levels(j_excited, nuclear_spin); }

bool AtomSpec::is_ground_level(HalfInt F) const {
  const auto levels = ground_levels();
  return std::find(levels.begin(), levels.end(), F) != levels.end();
}

bool AtomSpec::is_excited_level(HalfInt Fp) const {
  const auto levels = excited_levels();
  return std::find(levels.begin(), levels.end(), Fp) != levels.end();
}

double AtomSpec::excited_offset(HalfInt Fp) const {
  if (!is_excited_level(Fp)) throw InputError("F' = " + Fp.str() + " is not an excited hyperfine level");
  return interval_offset(stretched_excited(), Fp, excited_interval);
}

double AtomSpec::ground_offset(HalfInt F) const {
  if (!is_ground_level(F)) throw InputError("F = " + F.str() + " is not a ground hyperfine level");
  return interval_offset(stretched_ground(), F, ground_interval);
}

double AtomSpec::detuning(HalfInt F, HalfInt Fp, double delta_stretch) const {
  // A lower excited level lowers the resonance, raising the detuning; a lower
  // ground level raises the resonance.
  return delta_stretch + excited_offset(Fp) - ground_offset(F);
}

double oscillator_strength(const AtomSpec& atom, HalfInt F, HalfInt Fp) {
  if (!atom.is_ground_level(F)) throw InputError("F = " + F.str() + " is not a ground hyperfine level");
  if (!atom.is_excited_level(Fp)) throw InputError("F' = " + Fp.str() + " is not an excited hyperfine level");
  const double w = wigner_6j(Fp, atom.nuclear_spin, atom.j_excited, atom.j, HalfInt(1), F);
  return (atom.j_excited.twice() + 1) * (F.twice() + 1) * w * w;
}

}  // namespace qlat
