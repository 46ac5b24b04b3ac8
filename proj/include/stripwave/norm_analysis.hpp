#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stripwave/config.hpp"
#include "stripwave/linalg.hpp"
#include "stripwave/modal_core.hpp"

namespace stripwave {

enum class Regime { Forbidden, I, II, III, IV };

struct RegimeLabel {
  Regime regime;
  double c;
  double C;
};

std::string_view regime_name(Regime r) noexcept;

// Ordered matching: Forbidden, then I: k <= c sqrt(s), II: k <= C sqrt(s),
// III: k <= c s, otherwise IV. Requires s >= cfg.s0.
RegimeLabel classify_regime(const ProblemConfig& cfg, double s, const ModeContext& ctx);
RegimeLabel classify_regime(const ProblemConfig& cfg, double s, double k, bool forbidden);

// e^{|Im k'| sigma} / |k' det M| (1 + |k'|/k^2) + 1/k. Needs real k > 0;
// returns +inf when det M vanishes.
double bound_value(const ModeContext& ctx);

enum class NormMethod { AnalyticPower, Fd };

struct NormOptions {
  NormMethod method = NormMethod::AnalyticPower;
  int fd_intervals = 4096;
  int quad_points = 0;  // 0: resolution rule, max(cfg.quad_points, 8 max(|k|, |k'|))
  PowerOptions power;
};

// Intervals the analytic method uses for this context.
int resolvent_intervals(const ProblemConfig& cfg, const ModeContext& ctx, int quad_points = 0);

// ||P_n(s)^{-1}|| on L^2(0,1), via the top eigenvalue of G G* with
// G = P_n(s)^{-1} and G* = P_n(-s)^{-1}.
double mode_norm(const ProblemConfig& cfg, double s, int n, const NormOptions& opt = {});

struct ModeRecord {
  int n = 0;
  double norm = 0.0;
  std::optional<RegimeLabel> regime;  // empty below s0
  double bound = 0.0;                 // NaN for forbidden modes
  cplx k;
  bool ok = true;
  std::string error;
};

struct SweepRecord {
  double s = 0.0;
  int n_star = 0;
  double full_norm = 0.0;
  std::vector<ModeRecord> per_mode;
  double tail_bound = 0.0;  // sup of ||P_n^{-1}|| over the modes not computed
  std::chrono::duration<double> elapsed{};
};

struct FullNormOptions {
  NormOptions norm;
  int n_pad = 3;
  unsigned threads = 1;
};

SweepRecord full_norm(const ProblemConfig& cfg, double s, const FullNormOptions& opt = {});

struct ModeSample {
  double s;
  int n;
  Regime regime;
};

struct SampleSet {
  std::vector<ModeSample> samples;
  std::vector<Regime> uncovered;  // regimes with no admissible (s, n) in range
};

// Seeded (s, n) draws spread evenly over regimes I-IV with s in [s_min, s_max].
// For each draw a target k inside the regime is picked, n = round(sqrt(s^2 -
// k^2)/pi), and s is recomputed from (n, k) so the mode sits where intended.
SampleSet stratified_samples(const ProblemConfig& cfg, int count, double s_min, double s_max,
                             std::uint64_t seed);

struct ScalingFit {
  double slope;
  double band_ratio;
};

// Needs >= 6 records spanning >= 2 decades.
ScalingFit scaling_fit(std::span<const SweepRecord> records);
// max/min of full_norm / (1 + sqrt(s)); 1 for a single record.
double band_ratio(std::span<const SweepRecord> records);

}  // namespace stripwave
