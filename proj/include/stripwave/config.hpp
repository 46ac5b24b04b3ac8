#pragma once

#include <string>
#include <string_view>

namespace stripwave {

enum class Quadrature {
  Trapezoid,           // plain composite trapezoid, O(h^2)
  CorrectedTrapezoid,  // trapezoid plus the closed-form Richardson step, O(h^4)
};

struct ProblemConfig {
  double a0 = 1.0;
  double sigma = 0.5;
  double c0 = 1.0;
  double regime_c = 0.1;
  double regime_C = 10.0;
  double s0 = 10.0;  // regimes are only assigned for s >= s0
  int quad_points = 2048;
  Quadrature quadrature = Quadrature::CorrectedTrapezoid;
  // Relaxes the strip to sigma in (0, 1]; sigma = 1 damps the whole interval.
  // Only the closed-form oracle tests use it.
  bool full_strip_oracle = false;

  void validate() const;
  bool undamped() const noexcept { return a0 == 0.0; }
};

// key=value lines, '#' comments. Keys mirror the struct fields.
ProblemConfig load_config_file(const std::string& path, ProblemConfig base = {});
void apply_config_entry(ProblemConfig& cfg, std::string_view key, std::string_view value);

std::string_view quadrature_name(Quadrature q) noexcept;

// Smallest interval count >= min_intervals that puts sigma on a node.
int aligned_intervals(double sigma, int min_intervals);
// Index j with j / intervals == sigma; throws ConfigError if there is none.
int sigma_node(double sigma, int intervals);

}  // namespace stripwave
