#include "qlat/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>

#include "qlat/errors.hpp"

namespace qlat {

namespace {

using cplx = std::complex<double>;
constexpr int kMaxSweeps = 60;

// Reduces a (copied) Hermitian matrix in place, reading and updating only the
// lower triangle; q accumulates the reflections.
void tridiagonalize(Eigen::MatrixXcd& a, Eigen::MatrixXcd* q) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXcd v, p;
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index len = n - k - 1;
    v = a.col(k).tail(len);
    const double xnorm = v.norm();
    if (xnorm == 0.0) continue;
    const cplx x0 = v(0);
    const cplx phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cplx(1.0);
    const cplx alpha = -phase * xnorm;
    v(0) -= alpha;
    const double vnorm = v.norm();
    if (vnorm == 0.0) continue;
    v /= vnorm;

    // H A H with H = 1 - 2 v v^dagger is A - 2 (v w^dagger + w v^dagger),
    // w = A v - (v^dagger A v) v.
    auto sub = a.bottomRightCorner(len, len);
    p.noalias() = sub.selfadjointView<Eigen::Lower>() * v;
    p -= v.dot(p) * v;
    sub.selfadjointView<Eigen::Lower>().rankUpdate(v, p, cplx(-2.0));
    a.col(k).tail(len).setZero();
    a(k + 1, k) = alpha;

    if (q) {
      auto qs = q->rightCols(len);
      p.noalias() = qs * v;
      qs.noalias() -= 2.0 * p * v.adjoint();
    }
  }
}

// Implicit QL on a real symmetric tridiagonal matrix. e(i) couples i and i+1.
int tql(Eigen::VectorXd& d, Eigen::VectorXd& e, Eigen::MatrixXd* z) {
  const int n = static_cast<int>(d.size());
  const double eps = std::numeric_limits<double>::epsilon();
  int worst = 0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d(m)) + std::abs(d(m + 1));
        if (std::abs(e(m)) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxSweeps)
          throw NumericError("hermitian_eigen: QL did not converge for eigenvalue " + std::to_string(l) + " after " +
                             std::to_string(kMaxSweeps) + " sweeps");
        double g = (d(l + 1) - d(l)) / (2.0 * e(l));
        double r = std::hypot(g, 1.0);
        g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e(i);
          const double b = c * e(i);
          e(i + 1) = (r = std::hypot(f, g));
          if (r == 0.0) {
            d(i + 1) -= p;
            e(m) = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d(i + 1) - p;
          r = (d(i) - g) * s + 2.0 * c * b;
          d(i + 1) = g + (p = s * r);
          g = c * r - b;
          if (z) {
            for (int k = 0; k < n; ++k) {
              f = (*z)(k, i + 1);
              (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
              (*z)(k, i) = c * (*z)(k, i) - s * f;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d(l) -= p;
        e(l) = g;
        e(m) = 0.0;
      }
    } while (m != l);
    worst = std::max(worst, iter);
  }
  return worst;
}

}  // namespace

HermitianEigen hermitian_eigen(const Eigen::MatrixXcd& h, bool want_vectors) {
  const Eigen::Index n = h.rows();
  if (h.cols() != n) throw InputError("hermitian_eigen: matrix is not square");
  HermitianEigen out;
  if (n == 0) return out;
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InputError("hermitian_eigen: matrix is not Hermitian");

  Eigen::MatrixXcd a = 0.5 * (h + h.adjoint());
  Eigen::MatrixXcd q;
  if (want_vectors) q = Eigen::MatrixXcd::Identity(n, n);
  tridiagonalize(a, want_vectors ? &q : nullptr);

  Eigen::VectorXd d = a.diagonal().real();
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  Eigen::VectorXcd phase = Eigen::VectorXcd::Ones(n);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    const cplx sub = a(k + 1, k);
    e(k) = std::abs(sub);
    phase(k + 1) = e(k) > 0.0 ? phase(k) * sub / e(k) : phase(k);
  }

  Eigen::MatrixXd z;
  if (want_vectors) z = Eigen::MatrixXd::Identity(n, n);
  out.max_iterations = tql(d, e, want_vectors ? &z : nullptr);

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return d(x) < d(y); });
  out.values.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) out.values(k) = d(order[k]);
  if (want_vectors) {
    const Eigen::MatrixXcd full = q * phase.asDiagonal() * z.cast<cplx>();
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) out.vectors.col(k) = full.col(order[k]).normalized();
  }
  return out;
}

}  // namespace qlat
