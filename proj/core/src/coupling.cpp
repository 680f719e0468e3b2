#include "qlat/coupling.hpp"

#include <cmath>

#include "qlat/bands.hpp"
#include "qlat/errors.hpp"
#include "qlat/polarizability.hpp"

namespace qlat {

double beta_24(const AtomSpec& atom, double delta, bool asymptotic) {
  atom.validate();
  if (atom.j != half(1) || atom.j_excited != half(3) || atom.nuclear_spin != half(7))
    throw InputError("beta_24 closed form is defined for the Cs-like J=1/2 -> J'=3/2, I=7/2 line");
  if (!std::isfinite(delta) || delta == 0.0) throw InputError("detuning must be finite and non-zero");
  const double d = atom.excited_interval;
  if (asymptotic) return std::sqrt(7.0) / 6.0 * d / delta;
  const double d54 = delta + 5.0 * d, d53 = delta + 9.0 * d;
  if (std::abs(d54) < 1e-12 * std::max(1.0, d)) throw PoleError("detuning sits on the F'=4 resonance");
  if (std::abs(d53) < 1e-12 * std::max(1.0, d)) throw PoleError("detuning sits on the F'=3 resonance");
  return std::sqrt(7.0) / 360.0 * (16.0 - 21.0 * delta / d54 + 5.0 * delta / d53);
}

double scattering_rate(const LatticeGeometry& geometry, double u1, double delta, const Vec3& x, double width) {
  if (!std::isfinite(delta) || delta == 0.0) throw InputError("detuning must be finite and non-zero");
  if (width < 0.0) throw InputError("averaging width must be >= 0");
  double intensity = 0.0;
  for (const auto& bp : geometry.beams)
    for (const auto& b : geometry.beams) {
      const Vec3 g = b.wavevector - bp.wavevector;
      const cplx amp = bp.polarization.dot(b.polarization) * std::polar(1.0, b.phase - bp.phase + g.dot(x));
      intensity += amp.real() * std::exp(-0.5 * g.squaredNorm() * width * width);
    }
  return u1 * intensity / std::abs(delta);
}

CouplingReport raman_dm2(double u1, const AtomSpec& atom, double delta, const Dm2Options& options) {
  if (!(u1 > 0.0)) throw InputError("u1 must be positive");
  const HalfInt F = atom.stretched_ground();
  const LatticeGeometry geom = lin_angle_lin(M_PI / 2.0);
  const OperatorField u = potential_operator(geom, atom, F, u1, {delta, DetuningMode::infinite_limit});
  const HarmonicWell well = harmonic_well(u, F);

  CouplingReport r;
  r.eta = well.eta;
  r.u_r = 2.0 * u1 * std::abs(beta_24(atom, delta, options.asymptotic_beta)) * r.eta;
  r.gamma_s = scattering_rate(geom, u1, delta, Vec3(0.0, 0.0, well.position));
  r.kappa = r.u_r / r.gamma_s;
  r.momentum_spread = options.momentum_factor * r.eta * r.eta;
  r.kappa_prime = r.u_r / (r.gamma_s * r.momentum_spread);
  r.kappa_prime_y = r.kappa_prime;
  return r;
}

CouplingReport raman_dm1_2d(double u1, const AtomSpec& atom, double delta, double e_pi_ratio, double phi,
                            const Dm1Options& options) {
  if (!(u1 > 0.0)) throw InputError("u1 must be positive");
  if (e_pi_ratio < 0.0) throw InputError("e_pi ratio must be >= 0");
  const HalfInt F = atom.stretched_ground();
  const LatticeGeometry sigma = three_beam_2d(options.theta, 0.0, phi);
  const OperatorField u = potential_operator(sigma, atom, F, u1, {delta, DetuningMode::infinite_limit});
  const HarmonicWell well = harmonic_well_at(u, F, Vec3::Zero(), Vec3::UnitX());

  CouplingReport r;
  r.eta = well.eta;
  r.u_r = u1 / (2.0 * std::sqrt(2.0 * F.value())) * e_pi_ratio * r.eta;
  r.gamma_s = scattering_rate(sigma, u1, delta, Vec3::Zero());
  r.kappa = r.u_r / r.gamma_s;
  r.momentum_spread = options.momentum_factor * r.eta * r.eta;
  r.kappa_prime = r.u_r / (r.gamma_s * r.momentum_spread);
  r.kappa_prime_y = 3.0 * r.kappa_prime;
  return r;
}

double oscillator_function(int n, double x, double z0) {
  if (n < 0) throw InputError("oscillator quantum number must be >= 0");
  const double a = std::sqrt(2.0) * z0;
  const double xi = x / a;
  double prev = 0.0;
  double cur = std::pow(M_PI, -0.25) * std::exp(-0.5 * xi * xi);
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * xi * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur / std::sqrt(a);
}

std::complex<double> raman_matrix_element(const OperatorField& potential, const OscillatorState& bra,
                                          const OscillatorState& ket) {
  const std::size_t dims = bra.axes.size();
  if (dims == 0 || dims > 3) throw InputError("oscillator state needs 1 to 3 axes");
  if (ket.axes.size() != dims || bra.quanta.size() != dims || ket.quanta.size() != dims ||
      bra.widths.size() != dims || ket.widths.size() != dims)
    throw InputError("bra and ket must specify quanta and widths on the same axes");
  for (std::size_t i = 0; i < dims; ++i) {
    if ((bra.axes[i] - ket.axes[i]).norm() > 1e-12) throw InputError("bra and ket axes differ");
    if (std::abs(bra.axes[i].norm() - 1.0) > 1e-12) throw InputError("axes must be unit vectors");
    if (!(bra.widths[i] > 0.0) || !(ket.widths[i] > 0.0)) throw InputError("widths must be positive");
  }
  const HalfInt spin = half(potential.dim() - 1);
  const int ib = m_index(spin, bra.m), ik = m_index(spin, ket.m);

  Vec3 base = bra.center;
  for (const auto& a : bra.axes) base -= base.dot(a) * a;
  Vec3 base_k = ket.center;
  for (const auto& a : ket.axes) base_k -= base_k.dot(a) * a;
  if ((base - base_k).norm() > 1e-9) throw InputError("bra and ket centres differ off the quadrature axes");

  std::vector<std::pair<Vec3, cplx>> terms;
  for (const auto& h : potential.harmonics()) terms.emplace_back(h.wavevector, h.coeff(ib, ik));

  const int points = dims == 1 ? 801 : (dims == 2 ? 241 : 81);
  std::vector<std::vector<double>> grid(dims), wb(dims), wk(dims);
  std::vector<double> step(dims);
  for (std::size_t i = 0; i < dims; ++i) {
    const double cb = bra.center.dot(bra.axes[i]), ck = ket.center.dot(ket.axes[i]);
    const double reach = 12.0 * std::max(bra.widths[i] * std::sqrt(1.0 + bra.quanta[i]),
                                         ket.widths[i] * std::sqrt(1.0 + ket.quanta[i]));
    const double lo = std::min(cb, ck) - reach, hi = std::max(cb, ck) + reach;
    step[i] = (hi - lo) / (points - 1);
    for (int p = 0; p < points; ++p) {
      const double s = lo + p * step[i];
      grid[i].push_back(s);
      wb[i].push_back(oscillator_function(bra.quanta[i], s - cb, bra.widths[i]));
      wk[i].push_back(oscillator_function(ket.quanta[i], s - ck, ket.widths[i]));
    }
  }

  cplx total = 0.0;
  std::vector<int> idx(dims, 0);
  while (true) {
    Vec3 x = base;
    double w = 1.0;
    for (std::size_t i = 0; i < dims; ++i) {
      x += grid[i][idx[i]] * bra.axes[i];
      w *= wb[i][idx[i]] * wk[i][idx[i]] * step[i];
    }
    if (w != 0.0) {
      cplx u = 0.0;
      for (const auto& [g, c] : terms) u += c * std::polar(1.0, g.dot(x));
      total += w * u;
    }
    std::size_t k = 0;
    while (k < dims && ++idx[k] == points) idx[k++] = 0;
    if (k == dims) break;
  }
  return total;
}

}  // namespace qlat
