#include "stripwave/norm_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "stripwave/errors.hpp"
#include "stripwave/fd_oracle.hpp"
#include "stripwave/parallel.hpp"

namespace stripwave {

std::string_view regime_name(Regime r) noexcept {
  switch (r) {
    case Regime::Forbidden: return "forbidden";
    case Regime::I: return "I";
    case Regime::II: return "II";
    case Regime::III: return "III";
    case Regime::IV: return "IV";
  }
  return "?";
}

RegimeLabel classify_regime(const ProblemConfig& cfg, double s, double k, bool forbidden) {
  if (s < cfg.s0) throw DomainError("classify_regime: s below s0");
  const double c = cfg.regime_c, C = cfg.regime_C;
  if (forbidden) return {Regime::Forbidden, c, C};
  const double rs = std::sqrt(s);
  if (k <= c * rs) return {Regime::I, c, C};
  if (k <= C * rs) return {Regime::II, c, C};
  if (k <= c * s) return {Regime::III, c, C};
  return {Regime::IV, c, C};
}

RegimeLabel classify_regime(const ProblemConfig& cfg, double s, const ModeContext& ctx) {
  return classify_regime(cfg, s, ctx.k.real(), ctx.forbidden);
}

double bound_value(const ModeContext& ctx) {
  if (!(ctx.k2 > 0.0)) throw DomainError("bound_value: needs real k > 0");
  const double k = ctx.k.real();
  const auto ms = matching_matrix(ctx);
  const double denom = std::abs(ctx.kprime * ms.det);
  if (denom == 0.0) return std::numeric_limits<double>::infinity();
  const double kp = std::abs(ctx.kprime);
  return std::exp(std::abs(ctx.kprime.imag()) * ctx.sigma) / denom * (1.0 + kp / (k * k)) + 1.0 / k;
}

int resolvent_intervals(const ProblemConfig& cfg, const ModeContext& ctx, int quad_points) {
  int want = quad_points;
  if (want <= 0) {
    const double kmax = std::max(std::abs(ctx.k), std::abs(ctx.kprime));
    want = std::max(cfg.quad_points, int(std::ceil(8.0 * kmax)));
  }
  return aligned_intervals(ctx.sigma, want);
}

double mode_norm(const ProblemConfig& cfg, double s, int n, const NormOptions& opt) {
  if (opt.method == NormMethod::Fd) {
    const int intervals = aligned_intervals(cfg.sigma, opt.fd_intervals);
    return norm_fd(build_pn_matrix(cfg, s, n, intervals), opt.power);
  }
  const auto ctx = make_mode_context(cfg, s, n);
  const auto adj = make_mode_context(cfg, -s, n);
  const int intervals = resolvent_intervals(cfg, ctx, opt.quad_points);
  const ModeResolvent g(ctx, intervals, cfg.quadrature);
  const ModeResolvent gstar(adj, intervals, cfg.quadrature);

  const std::size_t dim = std::size_t(intervals) - 1;
  std::vector<cplx> full(std::size_t(intervals) + 1), tmp(full.size());
  auto apply = [&](std::span<const cplx> x, std::span<cplx> y) {
    std::copy(x.begin(), x.end(), full.begin() + 1);
    full.front() = full.back() = 0.0;
    gstar.apply(full, tmp);
    g.apply(tmp, full);
    std::copy(full.begin() + 1, full.end() - 1, y.begin());
  };
  return std::sqrt(dominant_eigenvalue(dim, apply, opt.power).eigenvalue);
}

SweepRecord full_norm(const ProblemConfig& cfg, double s, const FullNormOptions& opt) {
  cfg.validate();
  if (!(s >= 1.0)) throw DomainError("full_norm: needs s >= 1");
  const auto start = std::chrono::steady_clock::now();
  const int n_max = int(std::ceil(s / pi)) + opt.n_pad;

  SweepRecord rec;
  rec.s = s;
  rec.per_mode.resize(std::size_t(n_max));
  parallel_for(std::size_t(n_max), opt.threads, [&](std::size_t i) {
    ModeRecord& m = rec.per_mode[i];
    m.n = int(i) + 1;
    try {
      const auto ctx = make_mode_context(cfg, s, m.n);
      m.k = ctx.k;
      if (s >= cfg.s0) m.regime = classify_regime(cfg, s, ctx);
      m.bound = ctx.forbidden ? std::numeric_limits<double>::quiet_NaN() : bound_value(ctx);
      m.norm = mode_norm(cfg, s, m.n, opt.norm);
    } catch (const Error& e) {
      m.ok = false;
      m.error = e.what();
    }
  });

  for (const auto& m : rec.per_mode) {
    if (m.ok && m.norm > rec.full_norm) {
      rec.full_norm = m.norm;
      rec.n_star = m.n;
    }
  }
  // Every mode past n_max is deep in the forbidden band, where
  // Re <P u, u> >= (pi^2 - k^2) ||u||^2.
  const double np = (n_max + 1) * pi;
  rec.tail_bound = 1.0 / (pi * pi - (s - np) * (s + np));
  rec.elapsed = std::chrono::steady_clock::now() - start;
  return rec;
}

SampleSet stratified_samples(const ProblemConfig& cfg, int count, double s_min, double s_max,
                             std::uint64_t seed) {
  cfg.validate();
  if (count < 1 || !(s_min >= cfg.s0) || !(s_max > s_min))
    throw DomainError("stratified_samples: needs count >= 1 and s0 <= s_min < s_max");
  static constexpr Regime kOrder[] = {Regime::I, Regime::II, Regime::III, Regime::IV};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SampleSet out;
  std::vector<bool> dead(4, false);
  for (int i = 0; static_cast<int>(out.samples.size()) < count; ++i) {
    const int slot = i % 4;
    if (dead[slot]) {
      if (std::all_of(dead.begin(), dead.end(), [](bool d) { return d; }))
        throw DomainError("stratified_samples: no regime is reachable in the range");
      continue;
    }
    const Regime want = kOrder[slot];
    bool placed = false;
    for (int attempt = 0; attempt < 2000 && !placed; ++attempt) {
      const double s = s_min * std::pow(s_max / s_min, unit(rng));
      const double rs = std::sqrt(s);
      double lo = std::sqrt(cfg.c0), hi = s;
      switch (want) {
        case Regime::I: hi = cfg.regime_c * rs; break;
        case Regime::II: lo = std::max(lo, cfg.regime_c * rs); hi = cfg.regime_C * rs; break;
        case Regime::III: lo = std::max(lo, cfg.regime_C * rs); hi = cfg.regime_c * s; break;
        case Regime::IV: lo = std::max(lo, cfg.regime_c * s); break;
        case Regime::Forbidden: break;
      }
      if (!(hi > lo)) continue;
      const double k = lo + (hi - lo) * unit(rng);
      const int n = int(std::lround(std::sqrt(std::max(s * s - k * k, 0.0)) / pi));
      if (n < 1) continue;
      const double s_fit = std::sqrt((n * pi) * (n * pi) + k * k);
      if (s_fit < s_min || s_fit > s_max) continue;
      const auto ctx = make_mode_context(cfg, s_fit, n);
      if (classify_regime(cfg, s_fit, ctx).regime != want) continue;
      out.samples.push_back({s_fit, n, want});
      placed = true;
    }
    if (!placed) {
      dead[slot] = true;
      out.uncovered.push_back(want);
    }
  }
  return out;
}

double band_ratio(std::span<const SweepRecord> records) {
  if (records.empty()) throw DomainError("band_ratio: no records");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& r : records) {
    const double q = r.full_norm / (1.0 + std::sqrt(r.s));
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  return hi / lo;
}

ScalingFit scaling_fit(std::span<const SweepRecord> records) {
  if (records.size() < 6) throw DomainError("scaling_fit: needs at least 6 records");
  double smin = records.front().s, smax = smin;
  for (const auto& r : records) {
    smin = std::min(smin, r.s);
    smax = std::max(smax, r.s);
    if (!(r.full_norm > 0.0)) throw DomainError("scaling_fit: nonpositive norm");
  }
  if (std::log10(smax / smin) < 2.0 - 1e-12) throw DomainError("scaling_fit: records span less than 2 decades");
  double mx = 0.0, my = 0.0;
  for (const auto& r : records) {
    mx += std::log(r.s);
    my += std::log(r.full_norm);
  }
  mx /= double(records.size());
  my /= double(records.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& r : records) {
    const double dx = std::log(r.s) - mx;
    sxy += dx * (std::log(r.full_norm) - my);
    sxx += dx * dx;
  }
  return {sxy / sxx, band_ratio(records)};
}

}  // namespace stripwave
