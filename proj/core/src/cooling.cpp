#include "qlat/cooling.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>

#include "qlat/bands.hpp"
#include "qlat/coupling.hpp"
#include "qlat/errors.hpp"
#include "qlat/fields.hpp"
#include "qlat/polarizability.hpp"

namespace qlat {

namespace {

constexpr double kPumpSpread = 21.0 / 5.0;
constexpr double kLatticeSpread = 11.0 / 15.0;

using State = std::vector<double>;

struct Layout {
  int n;  // n_max
  int m2(int k) const { return k; }             // |k, 2>, k < n
  int m4(int k) const { return n + k; }         // |k, 4>, k <= n
  int re(int block) const { return 2 * n + 1 + (block - 1); }
  int im(int block) const { return 3 * n + 1 + (block - 1); }
  int size() const { return 4 * n + 1; }
};

struct Link {
  int src, dst;
  double rate;
};

class BlockSystem {
 public:
  BlockSystem(const CoolingParameters& p, const RateTable& rates, double b_z) : lay_{p.n_max} {
    const int n = p.n_max;
    std::vector<double> out(lay_.size(), 0.0);
    for (const auto& t : rates.pump) {
      links_.push_back({lay_.m2(t.from_n), lay_.m4(t.to_n), t.rate});
      out[lay_.m2(t.from_n)] += t.rate;
    }
    for (const auto& t : rates.lattice) {
      if (t.from_n == t.to_n) continue;
      links_.push_back({lay_.m4(t.from_n), lay_.m4(t.to_n), t.rate});
      out[lay_.m4(t.from_n)] += t.rate;
    }
    for (int b = 1; b <= n; ++b) {
      const Eigen::Matrix2cd h = block_hamiltonian(b, b_z, p);
      detuning_.push_back((h(0, 0) - h(1, 1)).real());
      coupling_.push_back(h(0, 1).real());
      decay_.push_back(0.5 * (out[lay_.m2(b - 1)] + out[lay_.m4(b)]));
    }
  }

  void operator()(const State& y, State& dy, double) const {
    std::fill(dy.begin(), dy.end(), 0.0);
    for (const auto& l : links_) {
      const double f = l.rate * y[l.src];
      dy[l.src] -= f;
      dy[l.dst] += f;
    }
    for (int b = 1; b <= lay_.n; ++b) {
      const double cr = y[lay_.re(b)], ci = y[lay_.im(b)];
      const double pa = y[lay_.m2(b - 1)], pb = y[lay_.m4(b)];
      const double v = coupling_[b - 1], de = detuning_[b - 1], g = decay_[b - 1];
      dy[lay_.m2(b - 1)] += -2.0 * v * ci;
      dy[lay_.m4(b)] += 2.0 * v * ci;
      // dc/dt = -i (de c + v (pb - pa)) - g c
      dy[lay_.re(b)] += de * ci - g * cr;
      dy[lay_.im(b)] += -de * cr - v * (pb - pa) - g * ci;
    }
  }

 private:
  Layout lay_;
  std::vector<Link> links_;
  std::vector<double> detuning_, coupling_, decay_;
};

State pack(const BlockDensityMatrix& rho) {
  const Layout lay{rho.n_max()};
  State y(lay.size(), 0.0);
  y[lay.m4(0)] = rho.ground_pop;
  for (int b = 1; b <= lay.n; ++b) {
    const auto& m = rho.blocks[b - 1];
    y[lay.m2(b - 1)] = m(0, 0).real();
    y[lay.m4(b)] = m(1, 1).real();
    y[lay.re(b)] = m(0, 1).real();
    y[lay.im(b)] = m(0, 1).imag();
  }
  return y;
}

BlockDensityMatrix unpack(const State& y, int n) {
  const Layout lay{n};
  BlockDensityMatrix rho;
  rho.ground_pop = y[lay.m4(0)];
  for (int b = 1; b <= n; ++b) {
    Eigen::Matrix2cd m;
    const cplx c(y[lay.re(b)], y[lay.im(b)]);
    m << y[lay.m2(b - 1)], c, std::conj(c), y[lay.m4(b)];
    rho.blocks.push_back(m);
  }
  return rho;
}

}  // namespace

void CoolingConfig::validate() const {
  atom.validate();
  if (!(u1 > 0.0)) throw InputError("cooling: u1 must be positive");
  if (!std::isfinite(delta) || delta == 0.0) throw InputError("cooling: delta must be finite and non-zero");
  if (!(q_boltzmann > 0.0 && q_boltzmann < 1.0)) throw InputError("cooling: q_boltzmann must lie in (0, 1)");
  if (n_max < 1) throw InputError("cooling: n_max must be >= 1");
  if (gamma_p && *gamma_p < 0.0) throw InputError("cooling: gamma_p must be >= 0");
  if (!(gamma_p_ratio >= 0.0)) throw InputError("cooling: gamma_p_ratio must be >= 0");
  if (gamma_s && *gamma_s < 0.0) throw InputError("cooling: gamma_s must be >= 0");
  if (samples_per_step < 1) throw InputError("cooling: samples_per_step must be >= 1");
  if (!(tolerance > 0.0)) throw InputError("cooling: tolerance must be positive");
  if (!(duration_scale > 0.0)) throw InputError("cooling: duration_scale must be positive");
  for (const auto& s : schedule)
    if (s.target_n < 1 || s.target_n > n_max) throw InputError("cooling: schedule target n outside [1, n_max]");
}

std::vector<CoolingStep> descending_schedule(int from_n, double duration) {
  std::vector<CoolingStep> out;
  for (int n = from_n; n >= 1; --n) out.push_back({n, duration});
  return out;
}

CoolingParameters cooling_parameters(const CoolingConfig& config) {
  config.validate();
  const HalfInt F = config.atom.stretched_ground();
  const OperatorField u = potential_operator(lin_angle_lin(M_PI / 2.0), config.atom, F, config.u1,
                                             {config.delta, DetuningMode::infinite_limit});
  CoolingParameters p;
  p.n_max = config.n_max;
  const HarmonicWell w4 = harmonic_well(u, F);
  p.omega4 = w4.omega;
  p.omega2 = harmonic_well(u, F - HalfInt(2)).omega;
  p.eta = w4.eta;
  const CouplingReport r = raman_dm2(config.u1, config.atom, config.delta);
  p.u_r = config.u_r.value_or(r.u_r);
  p.gamma_s = config.gamma_s.value_or(r.gamma_s);
  p.gamma_p = config.gamma_p.value_or(config.gamma_p_ratio * p.gamma_s);
  const double total = p.gamma_p + p.gamma_s;
  p.transfer_rate = total > 0.0 ? 4.0 * p.u_r * p.u_r / total : 0.0;
  return p;
}

double resonant_bz(int n, const CoolingParameters& params) {
  if (n < 1) throw InputError("resonant_bz: n must be >= 1");
  if (std::abs(params.omega4 - params.omega2) < 1e-12 * std::max(1.0, params.omega4))
    throw UnsupportedConfigError("omega2 == omega4: every block would be resonant at once");
  return (params.omega2 * (n - 0.5) - params.omega4 * (n + 0.5)) / 2.0;
}

double resonant_bz(int n, const CoolingConfig& config) { return resonant_bz(n, cooling_parameters(config)); }

Eigen::Matrix2cd block_hamiltonian(int n, double b_z, const CoolingParameters& params) {
  if (n < 1) throw InputError("block_hamiltonian: n must be >= 1");
  const double v = params.u_r * std::sqrt(double(n));
  Eigen::Matrix2cd h;
  h << params.omega2 * (n - 0.5) + 2.0 * b_z, v, v, params.omega4 * (n + 0.5) + 4.0 * b_z;
  return h;
}

Eigen::Matrix2cd block_hamiltonian(int n, double b_z, const CoolingConfig& config) {
  return block_hamiltonian(n, b_z, cooling_parameters(config));
}

RateTable pumping_rates(const CoolingParameters& params) {
  const double e2 = params.eta * params.eta;
  const int n_max = params.n_max;
  if (params.gamma_p > 0.0 && kPumpSpread * e2 * (n_max - 1) > 1.0)
    throw TruncationError("pump rate 1 - (21/5) eta^2 n turns negative below n_max; lower n_max or deepen the well");
  if (params.gamma_s > 0.0 && kLatticeSpread * e2 * n_max > 1.0)
    throw TruncationError("lattice rate 1 - (11/15) eta^2 n turns negative below n_max; lower n_max or deepen the well");
  RateTable t;
  for (int n = 0; n < n_max; ++n)
    for (int np = std::max(0, n - 1); np <= std::min(n_max, n + 1); ++np) {
      const double r = np == n ? params.gamma_p * (1.0 - kPumpSpread * e2 * n)
                               : params.gamma_p * kPumpSpread * e2 * std::max(n, np);
      t.pump.push_back({n, np, r});
    }
  for (int n = 0; n <= n_max; ++n)
    for (int np = std::max(0, n - 1); np <= std::min(n_max, n + 1); ++np) {
      const double r = np == n ? params.gamma_s * (1.0 - kLatticeSpread * e2 * n)
                               : params.gamma_s * kLatticeSpread * e2 * std::max(n, np);
      t.lattice.push_back({n, np, r});
    }
  return t;
}

RateTable pumping_rates(const CoolingConfig& config) { return pumping_rates(cooling_parameters(config)); }

double BlockDensityMatrix::trace() const {
  double t = ground_pop;
  for (const auto& b : blocks) t += b.trace().real();
  return t;
}

double BlockDensityMatrix::pi(int n) const {
  if (n < 0 || n > n_max()) throw InputError("pi: n outside the ladder");
  return n == 0 ? ground_pop : blocks[n - 1](1, 1).real();
}

double BlockDensityMatrix::pi_m2(int n) const {
  if (n < 0 || n >= n_max()) throw InputError("pi_m2: n outside the ladder");
  return blocks[n](0, 0).real();
}

double BlockDensityMatrix::min_eigenvalue() const {
  double lo = ground_pop;
  for (const auto& b : blocks) {
    const double a = b(0, 0).real(), d = b(1, 1).real();
    const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b(0, 1)));
    lo = std::min(lo, 0.5 * (a + d) - disc);
  }
  return lo;
}

BlockDensityMatrix thermal_initial(double q_b, int n_max) {
  if (!(q_b > 0.0 && q_b < 1.0)) throw InputError("thermal_initial: q_b must lie in (0, 1)");
  if (n_max < 1) throw InputError("thermal_initial: n_max must be >= 1");
  double norm = 0.0;
  for (int n = 0; n <= n_max; ++n) norm += std::pow(q_b, n);
  BlockDensityMatrix rho;
  rho.ground_pop = 1.0 / norm;
  for (int n = 1; n <= n_max; ++n) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(1, 1) = std::pow(q_b, n) / norm;
    rho.blocks.push_back(m);
  }
  return rho;
}

double thermal_truncation_loss(double q_b, int n_max) { return std::pow(q_b, n_max + 1); }

CoolingTrajectory evolve(const CoolingConfig& config, const BlockDensityMatrix& initial) {
  config.validate();
  if (config.schedule.empty()) throw InputError("evolve: schedule is empty");
  if (initial.n_max() != config.n_max) throw InputError("evolve: initial state ladder size differs from n_max");
  if (std::abs(initial.trace() - 1.0) > 1e-9) throw InputError("evolve: initial trace must be 1");

  CoolingTrajectory traj;
  traj.params = cooling_parameters(config);
  const CoolingParameters& p = traj.params;
  if (p.gamma_p < 5.0 * p.gamma_s) traj.warnings.push_back("gamma_p < 5 gamma_s: pump is not much faster than lattice scattering");
  if (p.eta * p.eta > 0.1) traj.warnings.push_back("eta^2 > 0.1: first-order rate expansion is unreliable");
  const RateTable rates = pumping_rates(p);

  using namespace boost::numeric::odeint;
  auto stepper = make_controlled<runge_kutta_dopri5<State>>(config.tolerance, config.tolerance);

  State y = pack(initial);
  const double trace0 = initial.trace();
  double t = 0.0;
  traj.samples.push_back({0.0, 0, initial});
  traj.min_block_eigenvalue = initial.min_eigenvalue();
  for (std::size_t s = 0; s < config.schedule.size(); ++s) {
    const CoolingStep& step = config.schedule[s];
    double duration = step.duration;
    if (duration <= 0.0) {
      if (p.transfer_rate <= 0.0) throw InputError("evolve: default step duration needs a non-zero transfer rate");
      duration = config.duration_scale / p.transfer_rate;
    }
    traj.step_durations.push_back(duration);
    const BlockSystem system(p, rates, resonant_bz(step.target_n, p));
    const double dt_sample = duration / config.samples_per_step;
    for (int k = 0; k < config.samples_per_step; ++k) {
      const double t1 = t + dt_sample;
      try {
        integrate_adaptive(stepper, std::cref(system), y, t, t1, std::min(dt_sample, 1e-3));
      } catch (const std::exception& e) {
        throw NumericError(std::string("cooling integrator failed near t = ") + std::to_string(t) + ": " + e.what() +
                           "; try a smaller tolerance-scaled step (dt < " + std::to_string(dt_sample / 10) + ")");
      }
      t = t1;
      BlockDensityMatrix rho = unpack(y, config.n_max);
      traj.max_trace_drift = std::max(traj.max_trace_drift, std::abs(rho.trace() - trace0));
      traj.min_block_eigenvalue = std::min(traj.min_block_eigenvalue, rho.min_eigenvalue());
      traj.samples.push_back({t, static_cast<int>(s) + 1, std::move(rho)});
    }
    traj.step_end_pi0.push_back(traj.samples.back().state.ground_pop);
  }
  return traj;
}

}  // namespace qlat
