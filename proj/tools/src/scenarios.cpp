#include "scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>

#include "qlat/angular.hpp"
#include "qlat/bands.hpp"
#include "qlat/cooling.hpp"
#include "qlat/coupling.hpp"
#include "qlat/doublewell.hpp"
#include "qlat/eigensolver.hpp"
#include "qlat/errors.hpp"
#include "qlat/fields.hpp"
#include "qlat/polarizability.hpp"

namespace qlat::cli {

namespace {

AtomSpec read_atom(Config& c) {
  const std::string preset = c.choice("atom", "preset", {"cesium_d2", "spin_half"}, std::string("cesium_d2"));
  AtomSpec atom = preset == "spin_half" ? AtomSpec::spin_half() : AtomSpec::cesium_d2();
  atom.excited_interval = c.quantity("atom", "interval_constant", Unit::detuning, atom.excited_interval);
  atom.linewidth = c.quantity("atom", "linewidth", Unit::energy, atom.linewidth);
  atom.larmor_per_gauss = c.quantity("atom", "larmor_per_gauss", Unit::per_gauss, atom.larmor_per_gauss);
  return atom;
}

LatticeGeometry read_lattice(Config& c) {
  const std::string kind = c.choice("lattice", "geometry", {"lin_angle_lin", "three_beam_2d"});
  LatticeGeometry g;
  if (kind == "lin_angle_lin") {
    g = lin_angle_lin(c.quantity("lattice", "theta", Unit::angle, M_PI / 2.0));
  } else {
    const double theta = c.quantity("lattice", "theta", Unit::angle, M_PI / 3.0);
    const double e_pi = c.quantity("lattice", "e_pi", Unit::none, 0.0);
    const double phi = c.quantity("lattice", "phi", Unit::angle, M_PI / 2.0);
    if (e_pi < 0.0) c.reject("lattice", "e_pi", "must be >= 0");
    g = three_beam_2d(theta, std::max(e_pi, 0.0), phi);
  }
  g.external_b = Vec3(c.quantity("lattice", "b_x", Unit::energy, 0.0), c.quantity("lattice", "b_y", Unit::energy, 0.0),
                      c.quantity("lattice", "b_z", Unit::energy, 0.0));
  return g;
}

struct PotentialSpec {
  double u1 = 0.0;
  DetuningSpec det;
  HalfInt F;
};

PotentialSpec read_potential(Config& c, const AtomSpec& atom) {
  PotentialSpec p;
  p.u1 = c.quantity("potential", "u1", Unit::energy);
  if (!(p.u1 > 0.0)) c.reject("potential", "u1", "must be positive");
  p.det.delta_stretch = c.quantity("potential", "delta", Unit::detuning, -2000.0);
  if (p.det.delta_stretch == 0.0) c.reject("potential", "delta", "must be non-zero");
  p.det.mode = c.choice("potential", "mode", {"infinite", "finite"}, std::string("infinite")) == "finite"
                   ? DetuningMode::finite_hyperfine
                   : DetuningMode::infinite_limit;
  p.F = atom.stretched_ground();
  if (c.has("potential", "F")) {
    const double f = c.quantity("potential", "F", Unit::none);
    const int twice = static_cast<int>(std::lround(2.0 * f));
    if (std::abs(2.0 * f - twice) > 1e-9 || twice < 0) c.reject("potential", "F", "must be a non-negative half-integer");
    p.F = HalfInt::from_twice(std::max(twice, 0));
  }
  return p;
}

DoubleWellConfig read_doublewell(Config& c) {
  DoubleWellConfig d;
  d.model = c.choice("doublewell", "model", {"spin_half", "cesium_f4"}, std::string("spin_half")) == "cesium_f4"
                ? DoubleWellModel::cesium_f4
                : DoubleWellModel::spin_half;
  const DoubleWellConfig base =
      d.model == DoubleWellModel::cesium_f4 ? DoubleWellConfig::cesium_preset() : DoubleWellConfig::spin_half_preset();
  d.u1 = c.quantity("doublewell", "u1", Unit::energy, base.u1);
  if (c.has("doublewell", "separation")) {
    if (c.has("doublewell", "theta")) c.reject("doublewell", "separation", "give either theta or separation");
    const double k_dz = c.quantity("doublewell", "separation", Unit::length);
    if (k_dz > 0.0 && k_dz < M_PI / 2.0)
      d.theta = theta_for_separation(k_dz);
    else
      c.reject("doublewell", "separation", "must lie in (0, pi/2) 1/k_L");
  } else {
    d.theta = c.quantity("doublewell", "theta", Unit::angle, base.theta);
  }
  d.omega_perp = c.quantity("doublewell", "omega_perp", Unit::energy, base.omega_perp);
  d.b_y = c.quantity("doublewell", "b_y", Unit::energy, 0.0);
  d.b_z = c.quantity("doublewell", "b_z", Unit::energy, 0.0);
  d.n_max = static_cast<int>(c.integer("doublewell", "n_max", base.n_max, 1, 200));
  if (!(d.u1 > 0.0)) c.reject("doublewell", "u1", "must be positive");
  if (!(d.theta > 0.0 && d.theta < M_PI)) c.reject("doublewell", "theta", "must lie in (0, pi)");
  return d;
}

std::string label_m(HalfInt m) {
  std::string s = m.str();
  std::replace(s.begin(), s.end(), '/', '_');
  return s;
}

// ----------------------------------------------------------------- potential

bool potential(Config& c, const RunContext& ctx, Summary& summary) {
  const AtomSpec atom = read_atom(c);
  const LatticeGeometry geom = read_lattice(c);
  const PotentialSpec spec = read_potential(c, atom);
  const std::string axis = c.choice("grid", "axis", {"z", "x", "y"}, std::string("z"));
  const long points = c.integer("grid", "points", 201, 2, 100000);
  const double start = c.quantity("grid", "start", Unit::length, 0.0);
  const double stop = c.quantity("grid", "stop", Unit::length, M_PI);
  const long levels = c.integer("grid", "levels", spec.F.twice() + 1, 1, spec.F.twice() + 1);
  c.finish();

  const OperatorField u = potential_operator(geom, atom, spec.F, spec.u1, spec.det);
  const int d = u.dim();
  const Vec3 dir = axis == "x" ? Vec3::UnitX() : (axis == "y" ? Vec3::UnitY() : Vec3::UnitZ());
  const std::vector<HalfInt> ms = projections(spec.F);

  std::vector<Column> cols{{axis, "1/k_L"}};
  for (int i = 0; i < d; ++i) cols.push_back({"U_" + label_m(ms[i]) + "_" + label_m(ms[i]), "E_R"});
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      cols.push_back({"re_U_" + label_m(ms[i]) + "_" + label_m(ms[j]), "E_R"});
      cols.push_back({"im_U_" + label_m(ms[i]) + "_" + label_m(ms[j]), "E_R"});
    }
  CsvWriter out(ctx.out_dir / "potential.csv", cols);
  std::vector<Column> acols{{axis, "1/k_L"}};
  for (long k = 0; k < levels; ++k) acols.push_back({"adiabatic_" + std::to_string(k), "E_R"});
  CsvWriter adia(ctx.out_dir / "adiabatic.csv", acols);

  std::vector<Vec3> sample;
  double lowest = INFINITY;
  for (long p = 0; p < points; ++p) {
    const double s = start + (stop - start) * p / (points - 1);
    const Vec3 x = s * dir;
    sample.push_back(x);
    const CMat m = u.at(x);
    std::vector<double> row{s};
    for (int i = 0; i < d; ++i) row.push_back(m(i, i).real());
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        row.push_back(m(i, j).real());
        row.push_back(m(i, j).imag());
      }
    out.row(row);
    const HermitianEigen e = hermitian_eigen(0.5 * (m + m.adjoint()), false);
    std::vector<double> arow{s};
    for (long k = 0; k < levels; ++k) arow.push_back(e.values(k));
    adia.row(arow);
    lowest = std::min(lowest, e.values(0));
  }
  out.close();
  adia.close();
  summary.add("dim", d);
  summary.add("harmonics", static_cast<double>(u.harmonics().size()));
  summary.add("hermiticity_error", u.hermiticity_error(sample));
  summary.add("lowest_adiabatic", lowest);
  return true;
}

// --------------------------------------------------------------------- bands

void write_bands(const BandSolution& grid, const RunContext& ctx, int band_count) {
  std::vector<Column> cols{{"q", "k_L"}};
  for (int b = 0; b < band_count; ++b) cols.push_back({"E" + std::to_string(b), "E_R"});
  CsvWriter out(ctx.out_dir / "bands.csv", cols);
  for (std::size_t i = 0; i < grid.q_grid.size(); ++i) {
    std::vector<double> row{grid.q_grid[i]};
    for (int b = 0; b < band_count; ++b) row.push_back(grid.energies[i](b));
    out.row(row);
  }
  out.close();
}

void localized_outputs(const BandSolution& q0, const RunContext& ctx, Summary& summary, long density_points) {
  try {
    const LocalizedPair pair = localized_pair(q0);
    summary.add("Fz_L", magnetization(pair.left));
    summary.add("Fz_R", magnetization(pair.right));
    summary.add("parity_S", pair.parity_s);
    summary.add("parity_A", pair.parity_a);
    const std::vector<HalfInt> ms = projections(q0.spin);
    std::vector<Column> cols{{"z", "1/k_L"}};
    for (const auto& m : ms) cols.push_back({"L_density_m" + label_m(m), "k_L"});
    for (const auto& m : ms) cols.push_back({"R_density_m" + label_m(m), "k_L"});
    CsvWriter out(ctx.out_dir / "densities.csv", cols);
    for (long p = 0; p < density_points; ++p) {
      const double z = -M_PI / 2.0 + M_PI * p / (density_points - 1);
      // |u|^2 normalised over one period of length pi
      const CVec l = spinor_at(pair.left, 0.0, z), r = spinor_at(pair.right, 0.0, z);
      std::vector<double> row{z};
      for (Eigen::Index i = 0; i < l.size(); ++i) row.push_back(std::norm(l(i)) / M_PI);
      for (Eigen::Index i = 0; i < r.size(); ++i) row.push_back(std::norm(r(i)) / M_PI);
      out.row(row);
    }
    out.close();
  } catch (const DegeneracyError& e) {
    summary.add("localized", std::string("unavailable: ") + e.what());
  }
}

bool bands(Config& c, const RunContext& ctx, Summary& summary) {
  const AtomSpec atom = read_atom(c);
  const LatticeGeometry geom = read_lattice(c);
  const PotentialSpec spec = read_potential(c, atom);
  BandOptions opts;
  opts.n_max = static_cast<int>(c.integer("bands", "n_max", 24, 1, 400));
  opts.band_count = static_cast<int>(c.integer("bands", "band_count", 8, 1, 10000));
  const long q_points = c.integer("bands", "q_points", 65, 1, 100000);
  const long density_points = c.integer("bands", "density_points", 201, 2, 100000);
  const bool convergence = c.flag("bands", "convergence_check", true);
  const int dim = (2 * opts.n_max + 1) * (spec.F.twice() + 1);
  if (opts.band_count > dim) c.reject("bands", "band_count", "exceeds the basis size " + std::to_string(dim));
  c.finish();

  const OperatorField u = potential_operator(geom, atom, spec.F, spec.u1, spec.det);
  BandOptions grid_opts = opts;
  grid_opts.want_vectors = false;
  const BandSolution grid = band_structure(u, uniform_q_grid(static_cast<int>(q_points)), grid_opts);
  write_bands(grid, ctx, opts.band_count);

  double widest = 0.0;
  for (int b = 0; b < opts.band_count; ++b) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& e : grid.energies) {
      lo = std::min(lo, e(b));
      hi = std::max(hi, e(b));
    }
    widest = std::max(widest, hi - lo);
    if (b < 3) summary.add("width_band" + std::to_string(b), hi - lo);
  }
  summary.add("max_band_width", widest);

  if (opts.band_count >= 2) {
    BandOptions q0_opts = opts;
    q0_opts.band_count = std::min(opts.band_count, 3);
    const BandSolution q0 = band_structure(u, {0.0}, q0_opts);
    const DoubletReport doublet = doublet_splitting(q0);
    summary.add("E0", q0.energies[0](0));
    summary.add("delta_E", doublet.splitting);
    if (q0_opts.band_count >= 3) {
      summary.add("gap_to_next", doublet.gap_to_next);
      localized_outputs(q0, ctx, summary, density_points);
    }
    if (convergence) {
      BandOptions big = q0_opts;
      big.n_max *= 2;
      big.want_vectors = false;
      const BandSolution q0_big = band_structure(u, {0.0}, big);
      summary.add("convergence_shift", std::abs(doublet_splitting(q0_big).splitting - doublet.splitting));
    }
  }
  return true;
}

// ----------------------------------------------------------------------- fom

bool fom(Config& c, const RunContext& ctx, Summary& summary) {
  const AtomSpec atom = read_atom(c);
  const std::string kind = c.choice("fom", "kind", {"dm2", "dm1_2d"});
  const std::vector<double> u1s = c.quantity_list("fom", "u1", Unit::energy);
  const std::vector<double> deltas = c.quantity_list("fom", "delta", Unit::detuning, std::vector<double>{-2000.0});
  for (double u : u1s)
    if (!(u > 0.0)) c.reject("fom", "u1", "every entry must be positive");
  for (double d : deltas)
    if (d == 0.0) c.reject("fom", "delta", "entries must be non-zero");
  Dm2Options o2;
  Dm1Options o1;
  double e_pi = 0.0, phi = M_PI / 2.0;
  if (kind == "dm2") {
    o2.momentum_factor = c.quantity("fom", "momentum_factor", Unit::none, o2.momentum_factor);
    o2.asymptotic_beta = c.flag("fom", "asymptotic_beta", false);
  } else {
    o1.momentum_factor = c.quantity("fom", "momentum_factor", Unit::none, o1.momentum_factor);
    o1.theta = c.quantity("fom", "theta", Unit::angle, o1.theta);
    e_pi = c.quantity("fom", "e_pi", Unit::none, 0.5);
    phi = c.quantity("fom", "phi", Unit::angle, M_PI / 2.0);
    if (e_pi < 0.0) c.reject("fom", "e_pi", "must be >= 0");
  }
  c.finish();

  CsvWriter out(ctx.out_dir / "fom.csv", {{"u1", "E_R"},
                                          {"delta", "Gamma"},
                                          {"u_r", "E_R"},
                                          {"gamma_s", "E_R/hbar"},
                                          {"kappa", ""},
                                          {"kappa_prime", ""},
                                          {"kappa_prime_y", ""},
                                          {"eta", ""}});
  std::optional<CouplingReport> single;
  for (double u1 : u1s)
    for (double d : deltas) {
      const CouplingReport r = kind == "dm2" ? raman_dm2(u1, atom, d, o2) : raman_dm1_2d(u1, atom, d, e_pi, phi, o1);
      out.row({u1, d, r.u_r, r.gamma_s, r.kappa, r.kappa_prime, r.kappa_prime_y, r.eta});
      single = r;
    }
  out.close();
  summary.add("points", static_cast<double>(u1s.size() * deltas.size()));
  if (u1s.size() * deltas.size() == 1) {
    summary.add("u_r", single->u_r);
    summary.add("gamma_s", single->gamma_s);
    summary.add("kappa", single->kappa);
    summary.add("kappa_prime", single->kappa_prime);
    summary.add("kappa_prime_y", single->kappa_prime_y);
    summary.add("eta", single->eta);
  }
  return true;
}

// ---------------------------------------------------------------------- cool

bool cool(Config& c, const RunContext& ctx, Summary& summary) {
  CoolingConfig cfg;
  cfg.atom = read_atom(c);
  cfg.u1 = c.quantity("cooling", "u1", Unit::energy, cfg.u1);
  cfg.delta = c.quantity("cooling", "delta", Unit::detuning, cfg.delta);
  if (c.has("cooling", "gamma_p")) {
    if (c.has("cooling", "gamma_p_ratio")) c.reject("cooling", "gamma_p", "give either gamma_p or gamma_p_ratio");
    cfg.gamma_p = c.quantity("cooling", "gamma_p", Unit::rate);
  } else {
    cfg.gamma_p_ratio = c.quantity("cooling", "gamma_p_ratio", Unit::none, cfg.gamma_p_ratio);
  }
  cfg.q_boltzmann = c.quantity("cooling", "q_boltzmann", Unit::none, cfg.q_boltzmann);
  cfg.n_max = static_cast<int>(c.integer("cooling", "n_max", cfg.n_max, 2, 1000));
  const long from_n = c.integer("cooling", "from_n", 5, 1, 1000);
  const double step = c.quantity("cooling", "step_duration", Unit::time, 0.0);
  cfg.duration_scale = c.quantity("cooling", "duration_scale", Unit::none, cfg.duration_scale);
  cfg.samples_per_step = static_cast<int>(c.integer("cooling", "samples_per_step", cfg.samples_per_step, 1, 100000));
  cfg.tolerance = c.quantity("cooling", "tolerance", Unit::none, cfg.tolerance);
  if (from_n >= cfg.n_max) c.reject("cooling", "from_n", "must be below n_max");
  cfg.schedule = descending_schedule(static_cast<int>(from_n), step);
  try {
    cfg.validate();
  } catch (const InputError& e) {
    c.reject("cooling", "*", e.what());
  }
  c.finish();

  const BlockDensityMatrix rho0 = thermal_initial(cfg.q_boltzmann, cfg.n_max);
  const CoolingTrajectory traj = evolve(cfg, rho0);

  std::vector<Column> cols{{"t", "hbar/E_R"}, {"step", ""}};
  for (int n = 0; n <= cfg.n_max; ++n) cols.push_back({"pi_" + std::to_string(n), ""});
  cols.push_back({"m2_population", ""});
  cols.push_back({"trace", ""});
  CsvWriter out(ctx.out_dir / "cooling.csv", cols);
  for (const auto& s : traj.samples) {
    std::vector<double> row{s.t, static_cast<double>(s.step)};
    double m2 = 0.0;
    for (int n = 0; n <= cfg.n_max; ++n) row.push_back(s.state.pi(n));
    for (int n = 0; n < cfg.n_max; ++n) m2 += s.state.pi_m2(n);
    row.push_back(m2);
    row.push_back(s.state.trace());
    out.row(row);
  }
  out.close();

  const CoolingParameters& p = traj.params;
  summary.add("omega4", p.omega4);
  summary.add("omega2", p.omega2);
  summary.add("eta", p.eta);
  summary.add("u_r", p.u_r);
  summary.add("gamma_s", p.gamma_s);
  summary.add("gamma_p", p.gamma_p);
  summary.add("transfer_rate", p.transfer_rate);
  summary.add("initial_pi0", rho0.pi(0));
  for (std::size_t k = 0; k < traj.step_end_pi0.size(); ++k) {
    summary.add("step" + std::to_string(k + 1) + "_duration", traj.step_durations[k]);
    summary.add("step" + std::to_string(k + 1) + "_pi0", traj.step_end_pi0[k]);
  }
  summary.add("final_pi0", traj.final_state().pi(0));
  summary.add("max_trace_drift", traj.max_trace_drift);
  summary.add("min_block_eigenvalue", traj.min_block_eigenvalue);
  summary.add("thermal_truncation_loss", thermal_truncation_loss(cfg.q_boltzmann, cfg.n_max));
  for (std::size_t k = 0; k < traj.warnings.size(); ++k) summary.add("warning" + std::to_string(k), traj.warnings[k]);
  return true;
}

// -------------------------------------------------------------------- tunnel

bool tunnel(Config& c, const RunContext& ctx, Summary& summary) {
  const DoubleWellConfig dw = read_doublewell(c);
  const std::string initial = c.choice("tunnel", "initial", {"R", "L", "S", "A"}, std::string("R"));
  std::optional<double> duration, periods;
  if (c.has("tunnel", "duration")) {
    if (c.has("tunnel", "periods")) c.reject("tunnel", "duration", "give either duration or periods");
    duration = c.quantity("tunnel", "duration", Unit::time);
    if (!(*duration > 0.0)) c.reject("tunnel", "duration", "must be positive");
  } else {
    periods = c.quantity("tunnel", "periods", Unit::none, 3.0);
    if (!(*periods > 0.0)) c.reject("tunnel", "periods", "must be positive");
  }
  const long steps = c.integer("tunnel", "steps", 10000, 1, 100000000);
  const long sample_every = c.integer("tunnel", "sample_every", 10, 1, 100000000);
  NoiseSpec noise;
  noise.amplitude = c.quantity("tunnel", "noise_amplitude", Unit::angle, 0.0);
  noise.correlation_time = c.quantity("tunnel", "correlation_time", Unit::time, 1.0);
  if (noise.amplitude < 0.0) c.reject("tunnel", "noise_amplitude", "must be >= 0");
  if (!(noise.correlation_time > 0.0)) c.reject("tunnel", "correlation_time", "must be positive");
  const long ensemble = c.integer("tunnel", "ensemble", 1, 1, 100000);
  c.finish();

  BandOptions opts;
  opts.n_max = dw.n_max;
  opts.band_count = 3;
  const BandSolution q0 = band_structure(double_well_potential(dw), {0.0}, opts);
  const double delta_e = doublet_splitting(q0).splitting;
  const LocalizedPair pair = localized_pair(q0);
  const LocalizedState& start = initial == "R"   ? pair.right
                                : initial == "L" ? pair.left
                                : initial == "S" ? pair.symmetric
                                                 : pair.antisymmetric;
  const double total = duration ? *duration : *periods * 2.0 * M_PI / delta_e;

  std::vector<std::uint64_t> seeds;
  for (long k = 0; k < ensemble; ++k) seeds.push_back(ctx.seed + static_cast<std::uint64_t>(k));
  const Propagator prop(dw);
  const Ensemble ens = evolve_ensemble(prop, start.coefficients, noise, total, static_cast<int>(steps), seeds,
                                       static_cast<int>(sample_every), ctx.threads);

  auto write = [&](const NoisyTrajectory& tr, const std::string& name) {
    CsvWriter out(ctx.out_dir / name, {{"t", "hbar/E_R"}, {"Fz", "hbar"}, {"norm", ""}});
    for (std::size_t k = 0; k < tr.t.size(); ++k) out.row({tr.t[k], tr.fz[k], tr.norm[k]});
    out.close();
  };
  double drift = 0.0;
  for (const auto& r : ens.runs) {
    write(r, "tunnel_seed_" + std::to_string(r.seed) + ".csv");
    for (double n : r.norm) drift = std::max(drift, std::abs(n - r.norm.front()));
  }
  write(ens.mean, "tunnel_mean.csv");

  const OscillationFit fit = fit_oscillation(ens.mean.t, ens.mean.fz);
  summary.add("delta_E", delta_e);
  summary.add("Fz_L", magnetization(pair.left));
  summary.add("Fz_R", magnetization(pair.right));
  summary.add("initial_Fz", ens.mean.fz.front());
  summary.add("duration", total);
  summary.add("dt", total / steps);
  summary.add("amplitude", fit.amplitude);
  summary.add("angular_frequency", fit.angular_frequency);
  summary.add("frequency_ratio", fit.angular_frequency / delta_e);
  summary.add("max_norm_drift", drift);
  double late = 0.0;
  const std::size_t tail = ens.mean.fz.size() - ens.mean.fz.size() / 4;
  for (std::size_t k = tail; k < ens.mean.fz.size(); ++k) late = std::max(late, std::abs(ens.mean.fz[k]));
  summary.add("late_contrast", late);
  return true;
}

// -------------------------------------------------------------------- dwspec

bool dwspec(Config& c, const RunContext& ctx, Summary& summary) {
  DoubleWellConfig dw = read_doublewell(c);
  const double lo = c.quantity("dwspec", "b_z_min", Unit::energy, -2.0);
  const double hi = c.quantity("dwspec", "b_z_max", Unit::energy, 2.0);
  const long points = c.integer("dwspec", "points", 41, 2, 100000);
  const long levels = c.integer("dwspec", "levels", 4, 1, 1000);
  if (!(hi > lo)) c.reject("dwspec", "b_z_max", "must exceed b_z_min");
  c.finish();

  std::vector<Column> cols{{"b_z", "E_R"}};
  for (long k = 0; k < levels; ++k) cols.push_back({"E" + std::to_string(k), "E_R"});
  cols.push_back({"Fz0", "hbar"});
  CsvWriter out(ctx.out_dir / "dwspec.csv", cols);
  BandOptions opts;
  opts.n_max = dw.n_max;
  opts.band_count = static_cast<int>(levels);
  double min_gap = INFINITY;
  for (long p = 0; p < points; ++p) {
    dw.b_z = lo + (hi - lo) * p / (points - 1);
    const BandSolution s = band_structure(double_well_potential(dw), {0.0}, opts);
    std::vector<double> row{dw.b_z};
    for (long k = 0; k < levels; ++k) row.push_back(s.energies[0](k));
    row.push_back(magnetization(LocalizedState{s.spinors[0].col(0), s.spin, s.n_max, "0"}));
    out.row(row);
    if (levels >= 2) min_gap = std::min(min_gap, s.energies[0](1) - s.energies[0](0));
  }
  out.close();
  if (levels >= 2) summary.add("min_doublet_gap", min_gap);
  return true;
}

// -------------------------------------------------------------------- verify

struct Check {
  std::string name;
  double value;
  double tolerance;
};

bool verify(Config& c, const RunContext& ctx, Summary& summary) {
  c.finish();
  std::vector<Check> checks;
  auto worst = [](double a, double b) { return std::max(a, std::abs(b)); };

  double cg = 0.0;
  for (int tj1 = 0; tj1 <= 6; ++tj1)
    for (int tj2 = 0; tj2 <= 6; ++tj2)
      for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
        for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
          double s = 0.0;
          for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
            if (std::abs(tm1 + tm2) > tJ) continue;
            const double v = clebsch_gordan(half(tj1), half(tm1), half(tj2), half(tm2), half(tJ), half(tm1 + tm2));
            s += v * v;
          }
          cg = worst(cg, s - 1.0);
        }
  checks.push_back({"cg_completeness_j<=3", cg, 1e-12});

  double sixj = 0.0;
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      for (int d = 0; d <= 6; ++d)
        for (int e = 0; e <= 6; ++e)
          for (int f = 0; f <= 6; ++f) {
            if (!triangle(half(a), half(e), half(f)) || !triangle(half(d), half(b), half(f))) continue;
            double s = 0.0;
            for (int x = 0; x <= 12; ++x) {
              const double w = wigner_6j(half(a), half(b), half(x), half(d), half(e), half(f));
              s += (x + 1) * (f + 1) * w * w;
            }
            sixj = worst(sixj, s - 1.0);
          }
  checks.push_back({"sixj_orthogonality_j<=3", sixj, 1e-12});

  double sum_rule = 0.0;
  AtomSpec synthetic = AtomSpec::cesium_d2();
  synthetic.nuclear_spin = half(3);
  for (const AtomSpec& atom : {AtomSpec::cesium_d2(), synthetic})
    for (HalfInt fp : atom.excited_levels()) {
      double s = 0.0;
      for (HalfInt f : atom.ground_levels()) s += oscillator_strength(atom, f, fp);
      sum_rule = worst(sum_rule, s - 1.0);
    }
  checks.push_back({"oscillator_sum_rule", sum_rule, 1e-12});

  const AppendixBReport b = appendix_b_identities();
  checks.push_back({"trace_DdagD_minus_4", std::abs(b.trace - 4.0), 1e-14});
  checks.push_back({"cross_z_deviation", b.cross_z_deviation, 1e-14});
  checks.push_back({"rank2_alpha_half_to_3half", b.rank2_norm, 1e-14});

  const AtomSpec cs = AtomSpec::cesium_d2();
  double beta_dev = 0.0;
  for (double delta : {-2000.0, -500.0, -150.0, 3000.0}) {
    const OperatorField u =
        potential_operator(lin_angle_lin(M_PI / 2.0), cs, half(8), 1.0, {delta, DetuningMode::finite_hyperfine});
    const auto h = u.z_harmonics();
    const double elem = std::abs(h.at(1)(m_index(half(8), HalfInt(4)), m_index(half(8), HalfInt(2))));
    const double beta = std::abs(beta_24(cs, delta));
    beta_dev = worst(beta_dev, (elem - 0.5 * beta) / beta);
  }
  checks.push_back({"beta24_vs_potential_contraction", beta_dev, 1e-10});
  checks.push_back({"beta24_asymptote_minus_4.41", std::abs(std::abs(beta_24(cs, -1e6)) * 1e6 - std::sqrt(7.0) / 6.0 * 10.0),
                    0.0441});

  CsvWriter out(ctx.out_dir / "verify.csv", {{"index", ""}, {"value", ""}, {"tolerance", ""}, {"pass", ""}});
  bool all = true;
  std::printf("%-36s %-14s %-10s %s\n", "check", "value", "tolerance", "result");
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const bool pass = checks[k].value <= checks[k].tolerance;
    all = all && pass;
    std::printf("%-36s %-14.3e %-10.1e %s\n", checks[k].name.c_str(), checks[k].value, checks[k].tolerance,
                pass ? "PASS" : "FAIL");
    out.row({static_cast<double>(k), checks[k].value, checks[k].tolerance, pass ? 1.0 : 0.0});
    summary.add("check." + checks[k].name, pass ? "pass" : "fail");
  }
  out.close();
  summary.add("all_pass", all ? "true" : "false");
  return all;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"potential", "bands", "fom", "cool", "tunnel", "dwspec", "verify"};
  return names;
}

bool run_scenario(const std::string& name, Config& config, const RunContext& ctx, Summary& summary) {
  static const std::map<std::string, bool (*)(Config&, const RunContext&, Summary&)> table{
      {"potential", potential}, {"bands", bands},   {"fom", fom},      {"cool", cool},
      {"tunnel", tunnel},       {"dwspec", dwspec}, {"verify", verify}};
  return table.at(name)(config, ctx, summary);
}

}  // namespace qlat::cli
