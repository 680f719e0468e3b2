// qlat: scenario runner for the optical-lattice library.
//
//   qlat --config replications/fig7_cesium_doublewell.ini --out out/fig7
//
// Exit codes: 0 success, 2 invalid configuration or input, 3 numeric failure.

#include <CLI11.hpp>

#include <Eigen/Core>
#include <boost/version.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include "config.hpp"
#include "output.hpp"
#include "qlat/errors.hpp"
#include "scenarios.hpp"

#ifndef QLAT_VERSION
#define QLAT_VERSION "unknown"
#endif

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kNumeric = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace qlat::cli;

  CLI::App app{"Optical-lattice potentials, Raman cooling and double-well tunneling"};
  std::string config_path, out_dir = "out";
  std::optional<std::uint64_t> seed_override;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("--config", config_path, "Scenario configuration file")->required();
  app.add_option("--seed", seed_override, "Override [run] seed");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--threads", threads, "Worker threads for ensembles")->check(CLI::PositiveNumber);
  app.set_version_flag("--version", QLAT_VERSION);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Summary summary;
  RunContext ctx;
  std::string scenario;
  Config config;
  try {
    config = Config::load(config_path);
    scenario = config.choice("run", "scenario", scenario_names());
    ctx.seed = config.seed("run", "seed", 0);
    if (seed_override) ctx.seed = *seed_override;
    ctx.threads = threads;
    ctx.out_dir = out_dir;
    std::filesystem::create_directories(ctx.out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "qlat: " << e.what() << '\n';
    return kValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "qlat: " << e.what() << '\n';
    return kValidation;
  }

  int status = kOk;
  try {
    if (!run_scenario(scenario, config, ctx, summary)) status = kNumeric;
  } catch (const ConfigError& e) {
    std::cerr << "qlat: " << e.what() << '\n';
    return kValidation;
  } catch (const qlat::InputError& e) {
    std::cerr << "qlat: input error: " << e.what() << '\n';
    return kValidation;
  } catch (const qlat::NumericError& e) {
    std::cerr << "qlat: numeric error: " << e.what() << '\n';
    return kNumeric;
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream manifest;
  manifest << "scenario=" << scenario << '\n'
           << "config=" << config_path << '\n'
           << "qlat_version=" << QLAT_VERSION << '\n'
           << "eigen_version=" << EIGEN_WORLD_VERSION << '.' << EIGEN_MAJOR_VERSION << '.' << EIGEN_MINOR_VERSION
           << '\n'
           << "boost_version=" << BOOST_VERSION / 100000 << '.' << BOOST_VERSION / 100 % 1000 << '\n'
           << "seed=" << ctx.seed << '\n'
           << "threads=" << ctx.threads << '\n';
  for (const auto& [k, v] : config.echo()) manifest << "config." << k << '=' << v << '\n';
  for (const auto& [k, v] : summary.entries()) {
    manifest << k << '=' << v << '\n';
    std::cout << k << '=' << v << '\n';
  }
  manifest << "wall_time_s=" << num(wall) << '\n';
  write_text_atomic(ctx.out_dir / "manifest.txt", manifest.str());
  return status;
}
