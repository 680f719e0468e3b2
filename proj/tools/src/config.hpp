#pragma once

// INI-style scenario configuration with unit-tagged quantities.
//
//   [potential]
//   u1 = 150 E_R
//   delta = -2000 Gamma
//   theta = pi/2.3 rad
//
// Every key read by a scenario is marked as used; finish() rejects the rest.

#include <boost/property_tree/ptree.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qlat::cli {

enum class Unit { none, energy, detuning, angle, time, length, rate, per_gauss };

const char* unit_tag(Unit u);

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

class Config {
 public:
  static Config load(const std::string& path);
  static Config parse(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;

  double quantity(const std::string& section, const std::string& key, Unit unit,
                  std::optional<double> fallback = std::nullopt);
  std::vector<double> quantity_list(const std::string& section, const std::string& key, Unit unit,
                                    std::optional<std::vector<double>> fallback = std::nullopt);
  long integer(const std::string& section, const std::string& key, std::optional<long> fallback = std::nullopt,
               long min = 0, long max = 1L << 40);
  std::uint64_t seed(const std::string& section, const std::string& key, std::uint64_t fallback);
  bool flag(const std::string& section, const std::string& key, bool fallback);
  std::string choice(const std::string& section, const std::string& key, const std::vector<std::string>& allowed,
                     std::optional<std::string> fallback = std::nullopt);

  /// Records a problem without reading a key (cross-key validation).
  void reject(const std::string& section, const std::string& key, const std::string& why);

  /// Throws ConfigError listing every problem, including unused keys.
  void finish() const;

  /// section.key=value for every entry, in file order.
  std::vector<std::pair<std::string, std::string>> echo() const;

 private:
  std::optional<std::string> raw(const std::string& section, const std::string& key);
  void problem(const std::string& section, const std::string& key, const std::string& why);

  boost::property_tree::ptree tree_;
  std::set<std::string> used_;
  std::vector<std::string> problems_;
};

/// A number, "pi", "pi/x", "x*pi" or "x pi".
std::optional<double> parse_number(const std::string& text);

}  // namespace qlat::cli
