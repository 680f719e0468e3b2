#include "qlat/doublewell.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <random>
#include <thread>

#include "qlat/eigensolver.hpp"
#include "qlat/errors.hpp"
#include "qlat/fields.hpp"
#include "qlat/polarizability.hpp"

namespace qlat {

namespace {

const cplx kI(0.0, 1.0);

double ramp_shape(RampShape shape, double s) {
  s = std::clamp(s, 0.0, 1.0);
  return shape == RampShape::smoothstep ? s * s * (3.0 - 2.0 * s) : s;
}

double& field_of(DoubleWellConfig& c, RampParameter p, double& epsilon) {
  switch (p) {
    case RampParameter::b_z:
      return c.b_z;
    case RampParameter::omega_perp:
      return c.omega_perp;
    case RampParameter::theta:
      return c.theta;
    case RampParameter::epsilon_noise:
      return epsilon;
  }
  return epsilon;
}

// Parameter values at time t: each parameter follows its own segments in
// order, holding the first start value before and the last end value after.
std::pair<DoubleWellConfig, double> params_at(const DoubleWellConfig& base, const RampProtocol& protocol, double t) {
  DoubleWellConfig c = base;
  double epsilon = 0.0;
  for (RampParameter p : {RampParameter::b_z, RampParameter::omega_perp, RampParameter::theta,
                          RampParameter::epsilon_noise}) {
    double start = 0.0;
    bool seen = false;
    double& target = field_of(c, p, epsilon);
    for (const auto& seg : protocol.segments) {
      const double end = start + seg.duration;
      if (seg.parameter == p) {
        if (!seen && t < start) {
          target = seg.start;
          seen = true;
          break;
        }
        seen = true;
        if (t < end) {
          target = seg.start + (seg.end - seg.start) * ramp_shape(seg.shape, (t - start) / seg.duration);
          break;
        }
        target = seg.end;
      }
      start = end;
    }
  }
  return {c, epsilon};
}

CMat hermitian_exp(const CMat& v, double tau) {
  const int d = static_cast<int>(v.rows());
  double off = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) off = std::max(off, std::abs(v(i, j)));
  if (off == 0.0) {
    CMat out = CMat::Zero(d, d);
    for (int i = 0; i < d; ++i) out(i, i) = std::polar(1.0, -v(i, i).real() * tau);
    return out;
  }
  const HermitianEigen e = hermitian_eigen(v);
  CVec ph(d);
  for (int i = 0; i < d; ++i) ph(i) = std::polar(1.0, -e.values(i) * tau);
  return e.vectors * ph.asDiagonal() * e.vectors.adjoint();
}

}  // namespace

void DoubleWellConfig::validate() const {
  if (!(u1 > 0.0)) throw InputError("double well: u1 must be positive");
  if (!(theta > 0.0 && theta < M_PI)) throw InputError("double well: theta must lie in (0, pi)");
  if (n_max < 1) throw InputError("double well: n_max must be >= 1");
  for (double v : {omega_perp, b_y, b_z})
    if (!std::isfinite(v)) throw InputError("double well: field components must be finite");
}

AtomSpec DoubleWellConfig::atom() const {
  return model == DoubleWellModel::spin_half ? AtomSpec::spin_half() : AtomSpec::cesium_d2();
}

HalfInt DoubleWellConfig::spin() const { return atom().stretched_ground(); }

DoubleWellConfig DoubleWellConfig::spin_half_preset() { return DoubleWellConfig{}; }

DoubleWellConfig DoubleWellConfig::cesium_preset() {
  DoubleWellConfig c;
  c.model = DoubleWellModel::cesium_f4;
  c.u1 = 150.0;
  c.theta = M_PI / 2.3;
  c.omega_perp = 10.0;
  c.n_max = 24;
  return c;
}

double theta_for_separation(double k_dz) {
  if (!(k_dz > 0.0 && k_dz < M_PI / 2.0)) throw InputError("well separation must lie in (0, pi/2) / k_L");
  return std::atan(2.0 * std::tan(k_dz));
}

double well_separation(double theta) { return std::atan2(std::sin(theta), 2.0 * std::cos(theta)); }

OperatorField double_well_potential(const DoubleWellConfig& config) {
  config.validate();
  LatticeGeometry g = lin_angle_lin(config.theta);
  g.external_b = Vec3(config.omega_perp, config.b_y, config.b_z);
  const AtomSpec atom = config.atom();
  return potential_operator(g, atom, atom.stretched_ground(), config.u1, {-1.0, DetuningMode::infinite_limit});
}

HarmonicDoubleWell spin_half_wells(const DoubleWellConfig& config) {
  config.validate();
  if (config.model != DoubleWellModel::spin_half) throw InputError("closed forms need the spin-1/2 model");
  HarmonicDoubleWell w;
  const double c = std::cos(config.theta), s = std::sin(config.theta);
  w.depth = 4.0 / 3.0 * config.u1 * std::sqrt(4.0 * c * c + s * s);
  w.omega = 2.0 * std::sqrt(w.depth);
  w.eta = 1.0 / std::sqrt(w.omega);
  w.k_dz = well_separation(config.theta);
  return w;
}

double splitting_estimate(const DoubleWellConfig& config) {
  const HarmonicDoubleWell w = spin_half_wells(config);
  return config.omega_perp * std::exp(-w.k_dz * w.k_dz / (8.0 * w.eta * w.eta));
}

double adiabatic_curve(const DoubleWellConfig& config, double z) {
  const HarmonicDoubleWell w = spin_half_wells(config);
  const double a = w.omega * w.omega / 4.0;  // M w^2 / 2 with M = 1/2
  const double d = w.k_dz;
  return a * (z * z + d * d / 4.0) - std::hypot(a * z * d, config.omega_perp);
}

BarrierReport adiabatic_barrier(const DoubleWellConfig& config) {
  const HarmonicDoubleWell w = spin_half_wells(config);
  BarrierReport r;
  r.barrier = adiabatic_curve(config, 0.0);
  r.ground_energy = 0.5 * w.omega;
  r.tunneling = r.ground_energy < r.barrier;
  return r;
}

double broadening(const DoubleWellConfig& config, double du1_over_u1) {
  const HarmonicDoubleWell w = spin_half_wells(config);
  return w.k_dz * w.k_dz / (16.0 * w.eta * w.eta) * du1_over_u1;
}

CesiumDoubleWell cesium_double_well(const DoubleWellConfig& config) {
  config.validate();
  if (config.model != DoubleWellModel::cesium_f4) throw InputError("cesium_double_well needs the cesium_f4 model");
  CesiumDoubleWell w{double_well_potential(config), {}, {}, {}};
  const HalfInt F = config.spin();
  const double c = std::cos(config.theta), s = std::sin(config.theta);
  for (HalfInt m : projections(F)) {
    const double r = m.value() / F.value();
    w.depths.push_back(4.0 / 3.0 * config.u1 * std::sqrt(4.0 * c * c + r * r * s * s));
    const double off = std::atan2(m.value() * s, 2.0 * F.value() * c);
    w.offsets.push_back(off);
    w.centers.push_back(-0.5 * off);
  }
  return w;
}

double parabolic_diagonal(const CesiumDoubleWell& wells, HalfInt m, double z) {
  const int F2 = static_cast<int>(wells.depths.size()) - 1;
  const int i = m_index(HalfInt::from_twice(F2), m);
  const double dz = z - wells.centers[i];
  return wells.depths[i] * (dz * dz - 1.0);
}

OperatorField noise_operator(const DoubleWellConfig& config) {
  config.validate();
  const HalfInt F = config.spin();
  const SpinMatrices s = SpinMatrices::of(F);
  const double pre = 2.0 * config.u1 / 3.0;
  const double st = std::sin(config.theta), ct = std::cos(config.theta);
  // pre * [2 sin(theta) cos(2z) I + cos(theta) sin(2z) F_z / F]
  const CMat cos_part = pre * 2.0 * st * s.identity * 0.5;
  const CMat sin_part = pre * ct * s.fz / F.value() / (2.0 * kI);
  return OperatorField(s.identity.rows(), {Harmonic{Vec3(0, 0, 2), cos_part + sin_part},
                                           Harmonic{Vec3(0, 0, -2), cos_part - sin_part}});
}

void RampProtocol::validate() const {
  if (!(dt > 0.0)) throw InputError("ramp protocol: dt must be positive");
  for (const auto& s : segments) {
    if (!(s.duration > 0.0)) throw InputError("ramp protocol: segment durations must be positive");
    if (s.parameter == RampParameter::theta && !(std::min(s.start, s.end) > 0.0 && std::max(s.start, s.end) < M_PI))
      throw InputError("ramp protocol: theta must stay in (0, pi)");
  }
}

double RampProtocol::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

Propagator::Propagator(const DoubleWellConfig& reference)
    : ref_(reference),
      spin_(reference.spin()),
      n_max_(reference.n_max),
      ref_potential_(double_well_potential(reference)),
      noise_(noise_operator(reference)) {
  hamiltonian_ = bloch_hamiltonian(ref_potential_, 0.0, n_max_);
  const HermitianEigen e = hermitian_eigen(hamiltonian_);
  energies_ = e.values;
  vectors_ = e.vectors;
  const int nz = 2 * n_max_ + 1;
  dft_.resize(nz, nz);
  for (int j = 0; j < nz; ++j) {
    for (int n = -n_max_; n <= n_max_; ++n) dft_(j, n + n_max_) = std::polar(1.0, 2.0 * n * M_PI * j / nz);
    const double z = M_PI * j / nz;
    ref_grid_.push_back(ref_potential_.at_z(z));
    noise_grid_.push_back(noise_.at_z(z));
    const CMat& v = noise_grid_.back();
    noise_diagonal_ = noise_diagonal_ && (v - CMat(v.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
  }
}

CVec Propagator::evolve_static(const CVec& psi, double t) const {
  CVec c = vectors_.adjoint() * psi;
  for (int k = 0; k < dim(); ++k) c(k) *= std::polar(1.0, -energies_(k) * t);
  return vectors_ * c;
}

std::vector<CMat> Propagator::deviation_exponentials(const DoubleWellConfig& mid, double epsilon, double tau) const {
  const bool same = mid.u1 == ref_.u1 && mid.theta == ref_.theta && mid.omega_perp == ref_.omega_perp &&
                    mid.b_y == ref_.b_y && mid.b_z == ref_.b_z && mid.model == ref_.model;
  if (same && epsilon == 0.0) return {};
  if (mid.model != ref_.model || mid.n_max != ref_.n_max) throw InputError("propagator: model and n_max are fixed");
  const int nz = 2 * n_max_ + 1;
  std::vector<CMat> out;
  out.reserve(nz);
  if (same && noise_diagonal_) {
    for (int j = 0; j < nz; ++j) {
      const Eigen::VectorXd v = epsilon * noise_grid_[j].diagonal().real();
      CMat e = CMat::Zero(v.size(), v.size());
      for (Eigen::Index i = 0; i < v.size(); ++i) e(i, i) = std::polar(1.0, -v(i) * tau);
      out.push_back(std::move(e));
    }
    return out;
  }
  const std::optional<OperatorField> u = same ? std::nullopt : std::optional(double_well_potential(mid));
  for (int j = 0; j < nz; ++j) {
    CMat v = epsilon * noise_grid_[j];
    if (u) v += u->at_z(M_PI * j / nz) - ref_grid_[j];
    out.push_back(hermitian_exp(0.5 * (v + v.adjoint()), tau));
  }
  return out;
}

namespace {

CVec apply_grid(const CMat& dft, const std::vector<CMat>& ops, const CVec& psi, int d) {
  const int nz = static_cast<int>(dft.rows());
  const Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> coeff(psi.data(), nz, d);
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> grid = dft * coeff;
  for (int j = 0; j < nz; ++j) grid.row(j) = (ops[j] * grid.row(j).transpose()).transpose();
  Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> back = dft.adjoint() * grid / double(nz);
  return Eigen::Map<CVec>(back.data(), nz * d);
}

}  // namespace

CVec Propagator::step(const CVec& psi, double dt, const DoubleWellConfig& mid, double epsilon) const {
  const std::vector<CMat> half = deviation_exponentials(mid, epsilon, dt / 2.0);
  if (half.empty()) return evolve_static(psi, dt);
  const int d = spin_.twice() + 1;
  CVec x = apply_grid(dft_, half, psi, d);
  x = evolve_static(x, dt);
  return apply_grid(dft_, half, x, d);
}

double Propagator::fz(const CVec& psi) const {
  const int d = spin_.twice() + 1;
  double total = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) total += (-spin_.value() + i % d) * std::norm(psi(i));
  return total / psi.squaredNorm();
}

double Propagator::energy(const CVec& psi) const { return psi.dot(hamiltonian_ * psi).real() / psi.squaredNorm(); }

PreparedState prepare_state(const DoubleWellConfig& config, const RampProtocol& protocol, PrepTarget target) {
  config.validate();
  protocol.validate();
  const double total = protocol.total_duration();
  const DoubleWellConfig initial = params_at(config, protocol, 0.0).first;
  const DoubleWellConfig final_cfg = params_at(config, protocol, total).first;

  const HermitianEigen e0 = hermitian_eigen(bloch_hamiltonian(double_well_potential(initial), 0.0, config.n_max));
  CVec psi = e0.vectors.col(0);

  const Propagator prop(final_cfg);
  double t = 0.0;
  while (t < total - 1e-12) {
    const double h = std::min(protocol.dt, total - t);
    const auto [mid, eps] = params_at(config, protocol, t + 0.5 * h);
    psi = prop.step(psi, h, mid, eps);
    t += h;
  }

  BandOptions opts;
  opts.n_max = config.n_max;
  opts.band_count = 3;
  const BandSolution sol = band_structure(double_well_potential(final_cfg), {0.0}, opts);
  CVec ref;
  if (target == PrepTarget::symmetric) {
    ref = sol.spinors[0].col(0);
  } else {
    ref = localized_pair(sol).right.coefficients;
  }
  PreparedState out;
  out.state = psi;
  out.fidelity = std::norm(ref.dot(psi)) / (ref.squaredNorm() * psi.squaredNorm());
  out.adiabaticity = total * doublet_splitting(sol).splitting;
  if (total > 0.0 && out.adiabaticity > 0.1 && out.adiabaticity < 10.0)
    out.warnings.push_back("ramp duration x splitting = " + std::to_string(out.adiabaticity) +
                           " is neither adiabatic (>> 1) nor sudden (<< 1)");
  return out;
}

NoisyTrajectory evolve_noisy(const Propagator& propagator, const CVec& initial, const NoiseSpec& noise,
                             double duration, int steps, std::uint64_t seed, int sample_every) {
  if (steps < 1 || !(duration >= 0.0)) throw InputError("evolve_noisy: need steps >= 1 and duration >= 0");
  if (sample_every < 1) throw InputError("evolve_noisy: sample_every must be >= 1");
  if (noise.amplitude < 0.0 || !(noise.correlation_time > 0.0))
    throw InputError("evolve_noisy: noise amplitude must be >= 0 and correlation time > 0");
  if (initial.size() != propagator.dim()) throw InputError("evolve_noisy: initial state has the wrong dimension");

  const double dt = duration / steps;
  const CMat& w = propagator.eigenvectors();
  CVec c = w.adjoint() * initial;
  const double norm0 = c.squaredNorm();
  CVec phase(propagator.dim());
  for (int k = 0; k < propagator.dim(); ++k) phase(k) = std::polar(1.0, -propagator.energies()(k) * dt);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double a = std::exp(-dt / noise.correlation_time);
  const double kick = noise.amplitude * std::sqrt(1.0 - a * a);
  double eps = noise.amplitude > 0.0 ? noise.amplitude * gauss(rng) : 0.0;

  NoisyTrajectory traj;
  traj.seed = seed;
  auto record = [&](double t) {
    const CVec psi = w * c;
    traj.t.push_back(t);
    traj.fz.push_back(propagator.fz(psi));
    traj.norm.push_back(c.squaredNorm());
  };
  record(0.0);
  for (int s = 1; s <= steps; ++s) {
    if (eps == 0.0) {
      c = c.cwiseProduct(phase);
    } else {
      c = w.adjoint() * propagator.step(w * c, dt, propagator.reference(), eps);
    }
    if (noise.amplitude > 0.0) eps = a * eps + kick * gauss(rng);
    if (std::abs(c.squaredNorm() - norm0) > 1e-8)
      throw NumericError("evolve_noisy: norm drifted by " + std::to_string(c.squaredNorm() - norm0) + " at step " +
                         std::to_string(s));
    if (s % sample_every == 0 || s == steps) record(s * dt);
  }
  return traj;
}

OscillationFit fit_oscillation(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size()) throw InputError("fit_oscillation: t and y differ in length");
  OscillationFit fit;
  std::vector<double> zeros;
  for (std::size_t k = 0; k < y.size(); ++k) {
    fit.amplitude = std::max(fit.amplitude, std::abs(y[k]));
    if (k > 0 && ((y[k - 1] < 0.0 && y[k] >= 0.0) || (y[k - 1] > 0.0 && y[k] <= 0.0)))
      zeros.push_back(t[k - 1] + (t[k] - t[k - 1]) * y[k - 1] / (y[k - 1] - y[k]));
  }
  fit.crossings = static_cast<int>(zeros.size());
  if (zeros.size() >= 2) fit.angular_frequency = M_PI * (zeros.size() - 1) / (zeros.back() - zeros.front());
  return fit;
}

Ensemble evolve_ensemble(const Propagator& propagator, const CVec& initial, const NoiseSpec& noise, double duration,
                         int steps, const std::vector<std::uint64_t>& seeds, int sample_every, int threads) {
  if (seeds.empty()) throw InputError("evolve_ensemble: no seeds");
  Ensemble ens;
  ens.runs.resize(seeds.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(seeds.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      try {
        ens.runs[i] = evolve_noisy(propagator, initial, noise, duration, steps, seeds[i], sample_every);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(seeds.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < n_threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ens.mean = ens.runs.front();
  ens.mean.seed = 0;
  for (std::size_t r = 1; r < ens.runs.size(); ++r)
    for (std::size_t k = 0; k < ens.mean.fz.size(); ++k) {
      ens.mean.fz[k] += ens.runs[r].fz[k];
      ens.mean.norm[k] += ens.runs[r].norm[k];
    }
  for (std::size_t k = 0; k < ens.mean.fz.size(); ++k) {
    ens.mean.fz[k] /= ens.runs.size();
    ens.mean.norm[k] /= ens.runs.size();
  }
  return ens;
}

}  // namespace qlat
