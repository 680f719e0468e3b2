#include "qlat/bands.hpp"

#include <cmath>
#include <limits>

#include "qlat/eigensolver.hpp"
#include "qlat/errors.hpp"

namespace qlat {

namespace {

HalfInt spin_of(int dim) { return half(dim - 1); }

int flat(int n, int n_max, int d, int im) { return (n + n_max) * d + im; }

struct Diagonal {
  std::vector<std::pair<Vec3, cplx>> terms;

  double value(const Vec3& x) const {
    cplx s = 0.0;
    for (const auto& [g, c] : terms) s += c * std::polar(1.0, g.dot(x));
    return s.real();
  }
  // First and second directional derivatives along unit d.
  std::pair<double, double> derivatives(const Vec3& x, const Vec3& d) const {
    cplx d1 = 0.0, d2 = 0.0;
    for (const auto& [g, c] : terms) {
      const double gd = g.dot(d);
      const cplx e = c * std::polar(1.0, g.dot(x));
      d1 += cplx(0.0, gd) * e;
      d2 += -gd * gd * e;
    }
    return {d1.real(), d2.real()};
  }
};

Diagonal diagonal_of(const OperatorField& potential, HalfInt m) {
  const int i = m_index(spin_of(potential.dim()), m);
  Diagonal out;
  for (const auto& h : potential.harmonics()) out.terms.emplace_back(h.wavevector, h.coeff(i, i));
  return out;
}

HarmonicWell well_from(double position, double curvature, double minimum) {
  HarmonicWell w;
  w.position = position;
  w.curvature = curvature;
  w.minimum = minimum;
  // M = 1/2 in recoil units, so omega = sqrt(U''/M).
  w.omega = std::sqrt(2.0 * curvature);
  w.z0 = 1.0 / std::sqrt(w.omega);
  w.eta = w.z0;
  return w;
}

}  // namespace

int BandSolution::zero_index() const {
  for (std::size_t i = 0; i < q_grid.size(); ++i)
    if (std::abs(q_grid[i]) < 1e-12) return static_cast<int>(i);
  throw InputError("q grid does not contain q = 0");
}

std::vector<double> uniform_q_grid(int q_count) {
  if (q_count < 1) throw InputError("q grid needs at least one point");
  if (q_count == 1) return {0.0};
  std::vector<double> q(q_count);
  for (int k = 0; k < q_count; ++k) q[k] = -1.0 + 2.0 * k / (q_count - 1);
  if (q_count % 2 == 1) q[q_count / 2] = 0.0;
  return q;
}

CMat bloch_hamiltonian(const OperatorField& potential, double q, int n_max) {
  if (n_max < 1) throw InputError("n_max must be >= 1");
  const auto harmonics = potential.z_harmonics();
  const int d = potential.dim();
  const int size = (2 * n_max + 1) * d;
  CMat h = CMat::Zero(size, size);
  for (int n = -n_max; n <= n_max; ++n) {
    const double k = q + 2.0 * n;
    for (int im = 0; im < d; ++im) h(flat(n, n_max, d, im), flat(n, n_max, d, im)) += k * k;
    for (const auto& [j, c] : harmonics) {
      const int np = n - j;
      if (np < -n_max || np > n_max) continue;
      h.block(flat(n, n_max, d, 0), flat(np, n_max, d, 0), d, d) += c;
    }
  }
  return h;
}

BandSolution band_structure(const OperatorField& potential, const std::vector<double>& q_grid,
                            const BandOptions& options) {
  if (q_grid.empty()) throw InputError("q grid is empty");
  BandSolution sol;
  sol.spin = spin_of(potential.dim());
  sol.n_max = options.n_max;
  sol.q_grid = q_grid;
  for (double q : q_grid) {
    const CMat h = bloch_hamiltonian(potential, q, options.n_max);
    const HermitianEigen eig = hermitian_eigen(h, options.want_vectors);
    const int keep = options.band_count > 0 ? std::min<int>(options.band_count, eig.values.size())
                                            : static_cast<int>(eig.values.size());
    sol.energies.push_back(eig.values.head(keep));
    if (options.want_vectors) sol.spinors.push_back(eig.vectors.leftCols(keep));
  }
  return sol;
}

DoubletReport doublet_splitting(const BandSolution& solution) {
  const int i0 = solution.zero_index();
  const Eigen::VectorXd& e = solution.energies[i0];
  if (e.size() < 2) throw InputError("doublet needs at least two bands");
  DoubletReport r;
  r.splitting = e(1) - e(0);
  r.gap_to_next = e.size() > 2 ? e(2) - e(1) : std::numeric_limits<double>::infinity();
  const Eigen::Index bands = e.size();
  for (Eigen::Index b = 0; b < bands; ++b) {
    double lo = e(b), hi = e(b);
    for (const auto& eq : solution.energies) {
      lo = std::min(lo, eq(b));
      hi = std::max(hi, eq(b));
    }
    r.band_widths.push_back(hi - lo);
  }
  return r;
}

CVec parity_image(const CVec& coefficients, HalfInt spin, int n_max) {
  const int d = spin.twice() + 1;
  CVec out(coefficients.size());
  for (int n = -n_max; n <= n_max; ++n)
    for (int im = 0; im < d; ++im) out(flat(-n, n_max, d, d - 1 - im)) = coefficients(flat(n, n_max, d, im));
  return out;
}

namespace {

CVec fz_apply(const CVec& c, HalfInt spin, int n_max) {
  const int d = spin.twice() + 1;
  CVec out = c;
  for (int n = -n_max; n <= n_max; ++n)
    for (int im = 0; im < d; ++im) out(flat(n, n_max, d, im)) *= (-spin.value() + im);
  return out;
}

// Largest-magnitude coefficient made real positive; ties resolved by lowest
// index so the result is reproducible.
CVec fix_phase(const CVec& c) {
  Eigen::Index best = 0;
  const double top = c.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (std::abs(c(i)) >= top * (1.0 - 1e-9)) {
      best = i;
      break;
    }
  return c * (std::abs(c(best)) / c(best));
}

}  // namespace

LocalizedPair localized_pair(const BandSolution& solution) {
  if (solution.spinors.empty()) throw InputError("localized_pair needs band vectors");
  const DoubletReport dr = doublet_splitting(solution);
  if (!(dr.gap_to_next >= 3.0 * dr.splitting))
    throw DegeneracyError("ground doublet (splitting " + std::to_string(dr.splitting) +
                          ") is not isolated from band 2 (gap " + std::to_string(dr.gap_to_next) + ")");
  const int i0 = solution.zero_index();
  const HalfInt spin = solution.spin;
  const int n_max = solution.n_max;

  CVec s = fix_phase(solution.spinors[i0].col(0));
  CVec a = solution.spinors[i0].col(1);
  const cplx overlap = s.dot(fz_apply(a, spin, n_max));
  if (std::abs(overlap) > 1e-12)
    a *= std::conj(overlap) / std::abs(overlap);
  else
    a = fix_phase(a);

  LocalizedPair p;
  p.symmetric = LocalizedState{s, spin, n_max, "S"};
  p.antisymmetric = LocalizedState{a, spin, n_max, "A"};
  p.left = LocalizedState{(s + a) / std::sqrt(2.0), spin, n_max, "L"};
  p.right = LocalizedState{(s - a) / std::sqrt(2.0), spin, n_max, "R"};
  p.parity_s = s.dot(parity_image(s, spin, n_max)).real();
  p.parity_a = a.dot(parity_image(a, spin, n_max)).real();
  return p;
}

double magnetization(const LocalizedState& state) {
  const int d = state.spin.twice() + 1;
  double total = 0.0, norm = 0.0;
  for (int n = -state.n_max; n <= state.n_max; ++n)
    for (int im = 0; im < d; ++im) {
      const double w = std::norm(state.coefficients(flat(n, state.n_max, d, im)));
      total += (-state.spin.value() + im) * w;
      norm += w;
    }
  return total / norm;
}

CVec spinor_at(const LocalizedState& state, double q, double z) {
  const int d = state.spin.twice() + 1;
  CVec u = CVec::Zero(d);
  for (int n = -state.n_max; n <= state.n_max; ++n) {
    const cplx e = std::polar(1.0, (q + 2.0 * n) * z);
    for (int im = 0; im < d; ++im) u(im) += state.coefficients(flat(n, state.n_max, d, im)) * e;
  }
  return u;
}

HarmonicWell harmonic_well(const OperatorField& potential, HalfInt m) {
  if (!potential.is_1d_lattice()) throw InputError("harmonic_well needs a 1D lattice potential");
  const Diagonal diag = diagonal_of(potential, m);
  const Vec3 ez = Vec3::UnitZ();
  constexpr int kSamples = 4096;
  double best_z = 0.0, best = std::numeric_limits<double>::infinity(), worst = -best;
  for (int k = 0; k < kSamples; ++k) {
    const double z = M_PI * k / kSamples;
    const double v = diag.value(z * ez);
    if (v < best) {
      best = v;
      best_z = z;
    }
    worst = std::max(worst, v);
  }
  if (worst - best < 1e-12) throw InputError("diagonal m = " + m.str() + " is flat; no potential minimum");
  double z = best_z;
  for (int it = 0; it < 60; ++it) {
    const auto [d1, d2] = diag.derivatives(z * ez, ez);
    if (d2 <= 0.0) break;
    const double step = d1 / d2;
    z -= step;
    if (std::abs(step) < 1e-15) break;
  }
  const auto [d1, d2] = diag.derivatives(z * ez, ez);
  if (!(d2 > 0.0)) throw InputError("diagonal m = " + m.str() + " has no quadratic minimum");
  z = std::remainder(z, M_PI);
  return well_from(z, d2, diag.value(z * ez));
}

HarmonicWell harmonic_well_at(const OperatorField& potential, HalfInt m, const Vec3& point, const Vec3& direction) {
  if (std::abs(direction.norm() - 1.0) > 1e-12) throw InputError("direction must be a unit vector");
  const Diagonal diag = diagonal_of(potential, m);
  const auto [d1, d2] = diag.derivatives(point, direction);
  const double scale = std::max(1.0, std::abs(d2));
  if (std::abs(d1) > 1e-8 * scale) throw InputError("point is not stationary along the given direction");
  if (!(d2 > 0.0)) throw InputError("diagonal m = " + m.str() + " has no minimum at the given point");
  return well_from(point.dot(direction), d2, diag.value(point));
}

std::vector<Eigen::VectorXd> adiabatic_potentials(const OperatorField& potential, const std::vector<double>& z,
                                                  int count) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(z.size());
  for (double zi : z) {
    const HermitianEigen e = hermitian_eigen(potential.at_z(zi), false);
    const int keep = std::min<int>(count, e.values.size());
    out.push_back(e.values.head(keep));
  }
  return out;
}

}  // namespace qlat
