#include "stripwave/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "stripwave/common.hpp"
#include "stripwave/errors.hpp"

namespace stripwave {

void ProblemConfig::validate() const {
  if (!(a0 >= 0.0) || !std::isfinite(a0)) throw ConfigError("a0 must be finite and >= 0");
  const bool sigma_ok = full_strip_oracle ? (sigma > 0.0 && sigma <= 1.0) : (sigma > 0.0 && sigma < 1.0);
  if (!sigma_ok) throw ConfigError("sigma must lie in (0, 1)");
  if (!(c0 > 0.0 && c0 < pi * pi)) throw ConfigError("c0 must lie in (0, pi^2)");
  if (!(regime_c > 0.0 && regime_c < 1.0 && regime_C > 1.0))
    throw ConfigError("regime constants need 0 < regime_c < 1 < regime_C");
  if (!(s0 > 0.0)) throw ConfigError("s0 must be positive");
  if (quad_points < 2) throw ConfigError("quad_points must be >= 2");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view v) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("bad number for " + std::string(key) + ": '" + std::string(v) + "'");
  return x;
}

int parse_int(std::string_view key, std::string_view v) {
  int x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("bad integer for " + std::string(key) + ": '" + std::string(v) + "'");
  return x;
}

}  // namespace

void apply_config_entry(ProblemConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "a0") cfg.a0 = parse_double(key, value);
  else if (key == "sigma") cfg.sigma = parse_double(key, value);
  else if (key == "c0") cfg.c0 = parse_double(key, value);
  else if (key == "regime_c") cfg.regime_c = parse_double(key, value);
  else if (key == "regime_C") cfg.regime_C = parse_double(key, value);
  else if (key == "s0") cfg.s0 = parse_double(key, value);
  else if (key == "quad_points") cfg.quad_points = parse_int(key, value);
  else if (key == "quadrature") {
    if (value == "trapezoid") cfg.quadrature = Quadrature::Trapezoid;
    else if (value == "corrected") cfg.quadrature = Quadrature::CorrectedTrapezoid;
    else throw ConfigError("quadrature must be 'trapezoid' or 'corrected'");
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

ProblemConfig load_config_file(const std::string& path, ProblemConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = line;
    if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
    sv = trim(sv);
    if (sv.empty()) continue;
    const auto eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    apply_config_entry(base, sv.substr(0, eq), sv.substr(eq + 1));
  }
  return base;
}

std::string_view quadrature_name(Quadrature q) noexcept {
  return q == Quadrature::Trapezoid ? "trapezoid" : "corrected";
}

int sigma_node(double sigma, int intervals) {
  const double x = sigma * intervals;
  const double j = std::round(x);
  if (std::abs(x - j) > 1e-9 * std::max(1.0, x))
    throw ConfigError("sigma = " + std::to_string(sigma) + " is not a node of a grid with " +
                      std::to_string(intervals) + " intervals");
  return static_cast<int>(j);
}

int aligned_intervals(double sigma, int min_intervals) {
  for (int n = std::max(min_intervals, 2); n < min_intervals + 100000; ++n) {
    const double x = sigma * n;
    if (std::abs(x - std::round(x)) <= 1e-9 * std::max(1.0, x)) return n;
  }
  throw ConfigError("sigma = " + std::to_string(sigma) + " does not align with any grid");
}

}  // namespace stripwave
