#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"
#include "output.hpp"

namespace qlat::cli {

struct RunContext {
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;
  int threads = 1;
};

const std::vector<std::string>& scenario_names();

/// Reads the scenario's keys, validates (throws ConfigError), then runs and
/// writes its CSV files into ctx.out_dir. Returns false when a verify check
/// fails.
bool run_scenario(const std::string& name, Config& config, const RunContext& ctx, Summary& summary);

}  // namespace qlat::cli
