#include "config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace qlat::cli {

const char* unit_tag(Unit u) {
  switch (u) {
    case Unit::none:
      return "";
    case Unit::energy:
      return "E_R";
    case Unit::detuning:
      return "Gamma";
    case Unit::angle:
      return "rad";
    case Unit::time:
      return "hbar/E_R";
    case Unit::length:
      return "1/k_L";
    case Unit::rate:
      return "E_R/hbar";
    case Unit::per_gauss:
      return "E_R/G";
  }
  return "";
}

namespace {

std::string join(const std::vector<std::string>& lines) {
  std::string out = "invalid configuration:";
  for (const auto& l : lines) out += "\n  " + l;
  return out;
}

std::optional<double> strict_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

std::optional<double> parse_number(const std::string& text) {
  std::string s = boost::algorithm::trim_copy(text);
  if (s == "pi") return M_PI;
  if (boost::algorithm::starts_with(s, "pi/")) {
    const auto d = strict_double(s.substr(3));
    if (!d || *d == 0.0) return std::nullopt;
    return M_PI / *d;
  }
  for (const std::string suffix : {"*pi", " pi", "pi"}) {
    if (boost::algorithm::ends_with(s, suffix) && s.size() > suffix.size()) {
      const auto f = strict_double(boost::algorithm::trim_copy(s.substr(0, s.size() - suffix.size())));
      if (f) return *f * M_PI;
    }
  }
  return strict_double(s);
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, c.tree_);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError({std::string("parse error: ") + e.message() + " (line " + std::to_string(e.line()) + ")"});
  }
  for (const auto& [name, node] : c.tree_)
    if (node.empty() && !node.data().empty()) c.problems_.push_back(name + ": keys must live inside a [section]");
  return c;
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto sec = tree_.get_child_optional(section);
  return sec && sec->get_child_optional(key);
}

std::optional<std::string> Config::raw(const std::string& section, const std::string& key) {
  used_.insert(section + "." + key);
  const auto sec = tree_.get_child_optional(section);
  if (!sec) return std::nullopt;
  const auto v = sec->get_optional<std::string>(key);
  if (!v) return std::nullopt;
  std::string s = *v;
  const auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  return boost::algorithm::trim_copy(s);
}

void Config::problem(const std::string& section, const std::string& key, const std::string& why) {
  problems_.push_back(section + "." + key + ": " + why);
}

void Config::reject(const std::string& section, const std::string& key, const std::string& why) {
  problem(section, key, why);
}

double Config::quantity(const std::string& section, const std::string& key, Unit unit,
                        std::optional<double> fallback) {
  const auto text = raw(section, key);
  if (!text) {
    if (fallback) return *fallback;
    problem(section, key, std::string("missing (expects a value in ") + (unit == Unit::none ? "no unit" : unit_tag(unit)) + ")");
    return std::nan("");
  }
  std::string value = *text, tag;
  const std::string expected = unit_tag(unit);
  if (!expected.empty()) {
    const auto pos = value.find_last_of(" \t");
    if (pos == std::string::npos) {
      problem(section, key, "missing unit tag, expected '" + expected + "'");
      return std::nan("");
    }
    tag = value.substr(pos + 1);
    value = boost::algorithm::trim_copy(value.substr(0, pos));
    if (unit == Unit::angle && tag == "deg") {
      const auto v = parse_number(value);
      if (!v) {
        problem(section, key, "not a number: '" + value + "'");
        return std::nan("");
      }
      return *v * M_PI / 180.0;
    }
    if (tag != expected) {
      problem(section, key, "unit '" + tag + "' does not match expected '" + expected + "'");
      return std::nan("");
    }
  }
  const auto v = parse_number(value);
  if (!v) {
    problem(section, key, "not a number: '" + value + "'");
    return std::nan("");
  }
  return *v;
}

std::vector<double> Config::quantity_list(const std::string& section, const std::string& key, Unit unit,
                                          std::optional<std::vector<double>> fallback) {
  const auto text = raw(section, key);
  if (!text) {
    if (fallback) return *fallback;
    problem(section, key, "missing");
    return {};
  }
  std::string body = *text;
  const std::string expected = unit_tag(unit);
  if (!expected.empty()) {
    if (!boost::algorithm::ends_with(body, " " + expected)) {
      problem(section, key, "list must end with the unit tag '" + expected + "'");
      return {};
    }
    body.erase(body.size() - expected.size() - 1);
  }
  std::vector<std::string> parts;
  boost::algorithm::split(parts, body, boost::algorithm::is_any_of(","));
  std::vector<double> out;
  for (const auto& p : parts) {
    const auto v = parse_number(p);
    if (!v) {
      problem(section, key, "not a number: '" + boost::algorithm::trim_copy(p) + "'");
      return {};
    }
    out.push_back(*v);
  }
  return out;
}

long Config::integer(const std::string& section, const std::string& key, std::optional<long> fallback, long min,
                     long max) {
  const auto text = raw(section, key);
  if (!text) {
    if (fallback) return *fallback;
    problem(section, key, "missing");
    return 0;
  }
  try {
    std::size_t pos = 0;
    const long v = std::stol(*text, &pos);
    if (pos != text->size()) throw std::invalid_argument("trailing");
    if (v < min || v > max) {
      problem(section, key, "must lie in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
      return 0;
    }
    return v;
  } catch (const std::exception&) {
    problem(section, key, "not an integer: '" + *text + "'");
    return 0;
  }
}

std::uint64_t Config::seed(const std::string& section, const std::string& key, std::uint64_t fallback) {
  const auto text = raw(section, key);
  if (!text) return fallback;
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(*text, &pos);
    if (pos != text->size() || text->front() == '-') throw std::invalid_argument("bad");
    return v;
  } catch (const std::exception&) {
    problem(section, key, "not an unsigned 64-bit integer: '" + *text + "'");
    return fallback;
  }
}

bool Config::flag(const std::string& section, const std::string& key, bool fallback) {
  const auto text = raw(section, key);
  if (!text) return fallback;
  if (*text == "true" || *text == "yes" || *text == "1") return true;
  if (*text == "false" || *text == "no" || *text == "0") return false;
  problem(section, key, "expected true or false, got '" + *text + "'");
  return fallback;
}

std::string Config::choice(const std::string& section, const std::string& key, const std::vector<std::string>& allowed,
                           std::optional<std::string> fallback) {
  const auto text = raw(section, key);
  if (!text) {
    if (fallback) return *fallback;
    problem(section, key, "missing (one of " + boost::algorithm::join(allowed, ", ") + ")");
    return allowed.front();
  }
  for (const auto& a : allowed)
    if (*text == a) return a;
  problem(section, key, "'" + *text + "' is not one of " + boost::algorithm::join(allowed, ", "));
  return allowed.front();
}

void Config::finish() const {
  std::vector<std::string> all = problems_;
  for (const auto& [section, node] : tree_)
    for (const auto& [key, value] : node)
      if (!used_.count(section + "." + key)) all.push_back(section + "." + key + ": unknown key for this scenario");
  if (!all.empty()) throw ConfigError(all);
}

std::vector<std::pair<std::string, std::string>> Config::echo() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [section, node] : tree_)
    for (const auto& [key, value] : node) out.emplace_back(section + "." + key, value.data());
  return out;
}

}  // namespace qlat::cli
