#pragma once

// Independent reference implementations used only by the tests. Nothing here
// calls into the library.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

// Quantum numbers are passed as twice their value.
inline long double fact(int n) {
  long double r = 1.0L;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

inline bool tri(int a, int b, int c) { return c >= std::abs(a - b) && c <= a + b && (a + b + c) % 2 == 0; }

/// <j1 m1; j2 m2 | J M> by the Racah single-sum formula.
inline long double cg(int j1, int m1, int j2, int m2, int J, int M) {
  if (m1 + m2 != M || !tri(j1, j2, J)) return 0.0L;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(M) > J) return 0.0L;
  const int a = (j1 + j2 - J) / 2, b = (j1 - m1) / 2, c = (j2 + m2) / 2;
  const int d = (J - j2 + m1) / 2, e = (J - j1 - m2) / 2;
  long double pre = (J + 1) * fact((J + j1 - j2) / 2) * fact((J - j1 + j2) / 2) * fact(a) / fact((j1 + j2 + J) / 2 + 1);
  pre *= fact((J + M) / 2) * fact((J - M) / 2) * fact((j1 - m1) / 2) * fact((j1 + m1) / 2) * fact((j2 - m2) / 2) *
         fact((j2 + m2) / 2);
  long double sum = 0.0L;
  for (int k = 0; k <= a; ++k) {
    if (b - k < 0 || c - k < 0 || d + k < 0 || e + k < 0) continue;
    const long double den = fact(k) * fact(a - k) * fact(b - k) * fact(c - k) * fact(d + k) * fact(e + k);
    sum += (k % 2 ? -1.0L : 1.0L) / den;
  }
  return std::sqrt(pre) * sum;
}

inline long double delta_coef(int a, int b, int c) {
  return std::sqrt(fact((a + b - c) / 2) * fact((a - b + c) / 2) * fact((-a + b + c) / 2) / fact((a + b + c) / 2 + 1));
}

/// {j1 j2 j3; j4 j5 j6} by the Racah formula.
inline long double sixj(int j1, int j2, int j3, int j4, int j5, int j6) {
  if (!tri(j1, j2, j3) || !tri(j1, j5, j6) || !tri(j4, j2, j6) || !tri(j4, j5, j3)) return 0.0L;
  const int a1 = (j1 + j2 + j3) / 2, a2 = (j1 + j5 + j6) / 2, a3 = (j4 + j2 + j6) / 2, a4 = (j4 + j5 + j3) / 2;
  const int b1 = (j1 + j2 + j4 + j5) / 2, b2 = (j2 + j3 + j5 + j6) / 2, b3 = (j3 + j1 + j6 + j4) / 2;
  const int lo = std::max({a1, a2, a3, a4}), hi = std::min({b1, b2, b3});
  long double sum = 0.0L;
  for (int t = lo; t <= hi; ++t)
    sum += (t % 2 ? -1.0L : 1.0L) * fact(t + 1) /
           (fact(t - a1) * fact(t - a2) * fact(t - a3) * fact(t - a4) * fact(b1 - t) * fact(b2 - t) * fact(b3 - t));
  return delta_coef(j1, j2, j3) * delta_coef(j1, j5, j6) * delta_coef(j4, j2, j6) * delta_coef(j4, j5, j3) * sum;
}

/// Dipole element <F' m'| d_q |F m> for J=1/2 -> J'=3/2, I=7/2, normalized so
/// the stretched element is 1 (overall sign dropped; it cancels in products).
inline long double cs_dipole(int F2, int m2, int Fp2, int mp2, int q2) {
  return std::sqrt(static_cast<long double>((F2 + 1) * 4)) * sixj(1, 3, 2, Fp2, F2, 7) * cg(F2, m2, 2, q2, Fp2, mp2);
}

/// beta_{2,4}: sum over F' of the two-photon amplitude |4,2> -> |F',3> -> |4,4>
/// weighted by Delta / Delta_{4,F'}. delta_hfs is the interval constant (Gamma).
inline double beta24(double delta, double delta_hfs = 10.0) {
  const int fps[] = {5, 4, 3};
  const double offsets[] = {0.0, 5.0 * delta_hfs, 9.0 * delta_hfs};
  long double b = 0.0L;
  for (int i = 0; i < 3; ++i) {
    const int Fp2 = 2 * fps[i];
    const long double amp = cs_dipole(8, 4, Fp2, 6, 2) * cs_dipole(8, 8, Fp2, 6, -2);
    b += amp * delta / (delta + offsets[i]);
  }
  return static_cast<double>(b);
}

/// Lowest bands of V(z) = v0 + v2 cos 2z with the same plane-wave basis.
inline Eigen::VectorXd cosine_bands(double v0, double v2, double q, int n_max) {
  const int n = 2 * n_max + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double k = q + 2.0 * (i - n_max);
    h(i, i) = k * k + v0;
    if (i + 1 < n) h(i, i + 1) = h(i + 1, i) = 0.5 * v2;
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

/// Lower eigenvalue of [[a, c], [c*, b]].
inline double lower_eigenvalue_2x2(double a, double b, std::complex<double> c) {
  return 0.5 * (a + b) - std::sqrt(0.25 * (a - b) * (a - b) + std::norm(c));
}

/// Population transferred after time t between two degenerate levels coupled
/// by v (hbar = 1).
inline double rabi_transfer(double v, double t) {
  const double s = std::sin(v * t);
  return s * s;
}

inline double derivative(const std::function<double(double)>& f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

inline double second_derivative(const std::function<double(double)>& f, double x, double h) {
  return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h);
}

}  // namespace oracle
