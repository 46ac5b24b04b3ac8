#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "stripwave/errors.hpp"
#include "stripwave/fd_oracle.hpp"
#include "stripwave/norm_analysis.hpp"

using namespace stripwave;
using oracle::pi;

namespace {

ProblemConfig undamped() {
  ProblemConfig cfg;
  cfg.a0 = 0.0;
  return cfg;
}

SweepRecord synthetic(double s, double norm) {
  SweepRecord r;
  r.s = s;
  r.full_norm = norm;
  return r;
}

}  // namespace

TEST_SUITE("norm_analysis") {
  TEST_CASE("regime boundaries use ordered matching") {
    ProblemConfig cfg;
    const double s = 400.0;
    // Defaults: c s = 40 sits below C sqrt(s) = 200, so II wins the overlap.
    CHECK(classify_regime(cfg, s, cfg.regime_c * s, false).regime == Regime::II);
    cfg.regime_c = 0.3;
    cfg.regime_C = 3.0;
    CHECK(classify_regime(cfg, s, cfg.regime_c * std::sqrt(s), false).regime == Regime::I);
    CHECK(classify_regime(cfg, s, cfg.regime_C * std::sqrt(s), false).regime == Regime::II);
    CHECK(classify_regime(cfg, s, cfg.regime_c * s, false).regime == Regime::III);
    CHECK(classify_regime(cfg, s, 399.0, false).regime == Regime::IV);
    CHECK(classify_regime(cfg, s, 1.0, true).regime == Regime::Forbidden);
    CHECK_THROWS_AS(classify_regime(cfg, 5.0, 1.0, false), DomainError);
  }

  TEST_CASE("just above the forbidden band is regime I") {
    ProblemConfig cfg;
    const int n = 100;
    const double s = std::sqrt(std::pow(n * pi, 2) + 2.0 * cfg.c0);
    const auto ctx = make_mode_context(cfg, s, n);
    CHECK_FALSE(ctx.forbidden);
    CHECK(classify_regime(cfg, s, ctx).regime == Regime::I);
  }

  TEST_CASE("bound value: undamped closed form") {
    const double k = pi / 2.0;
    const int n = 2;
    const double s = std::sqrt(k * k + std::pow(n * pi, 2));
    const auto ctx = make_mode_context(undamped(), s, n);
    const double det = std::sin(k) / k;
    const double ref = 1.0 / (std::abs(det) * k) * (1.0 + 1.0 / k) + 1.0 / k;
    CHECK(bound_value(ctx) == doctest::Approx(ref).epsilon(1e-12));
    CHECK_THROWS_AS(bound_value(make_mode_context(ProblemConfig{}, 5.0, 2)), DomainError);
  }

  TEST_CASE("regime IV determinant identity at s = 500, n = 1") {
    ProblemConfig cfg;
    const auto ctx = make_mode_context(cfg, 500.0, 1);
    CHECK(classify_regime(cfg, 500.0, ctx).regime == Regime::IV);
    const double lhs = std::abs(ctx.kprime * matching_matrix(ctx).det);
    const double rhs = std::abs(std::sin(ctx.k + (ctx.kprime - ctx.k) * cfg.sigma));
    CHECK(lhs >= rhs / 3.0);
    CHECK(lhs <= rhs * 3.0);
  }

  TEST_CASE("undamped mode norm equals the eigen-expansion value") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> us(10.0, 150.0);
    for (int t = 0; t < 12; ++t) {
      const double s = us(rng);
      const int n = 1 + int(rng() % 20);
      CAPTURE(s);
      CAPTURE(n);
      CHECK(mode_norm(undamped(), s, n) == doctest::Approx(oracle::undamped_mode_norm(s, n)).epsilon(1e-6));
    }
  }

  TEST_CASE("analytic vs FD at s = 120, n = 30") {
    NormOptions fd;
    fd.method = NormMethod::Fd;
    fd.fd_intervals = 4096;
    const double a = mode_norm(ProblemConfig{}, 120.0, 30);
    const double b = mode_norm(ProblemConfig{}, 120.0, 30, fd);
    CHECK(std::abs(a - b) / a <= 1e-3);
  }

  TEST_CASE("forbidden modes respect the uniform bound") {
    ProblemConfig cfg;
    for (auto [s, n] : {std::pair{5.0, 2}, std::pair{30.0, 10}, std::pair{100.0, 32}, std::pair{100.0, 60}}) {
      const auto ctx = make_mode_context(cfg, s, n);
      REQUIRE(ctx.forbidden);
      CHECK(mode_norm(cfg, s, n) <= 1.0 / (pi * pi - cfg.c0) * (1.0 + 1e-6));
    }
  }

  TEST_CASE("norm is even in s") {
    for (auto [s, n] : {std::pair{33.0, 4}, std::pair{120.0, 30}, std::pair{250.0, 79}}) {
      CHECK(mode_norm(ProblemConfig{}, -s, n) == doctest::Approx(mode_norm(ProblemConfig{}, s, n)).epsilon(1e-6));
    }
  }

  TEST_CASE("full norm bookkeeping") {
    const auto rec = full_norm(ProblemConfig{}, 40.0);
    CHECK(rec.per_mode.size() == std::size_t(std::ceil(40.0 / pi)) + 3);
    double best = 0.0;
    int arg = 0;
    for (const auto& m : rec.per_mode) {
      CHECK(m.ok);
      if (m.norm > best) {
        best = m.norm;
        arg = m.n;
      }
      if (m.regime && m.regime->regime == Regime::Forbidden) CHECK(std::isnan(m.bound));
    }
    CHECK(rec.full_norm == best);
    CHECK(rec.n_star == arg);
    CHECK(rec.tail_bound > 0.0);
    CHECK(rec.tail_bound < 1.0 / (pi * pi));
    CHECK_THROWS_AS(full_norm(ProblemConfig{}, 0.5), DomainError);
  }

  TEST_CASE("full norm is thread-count independent") {
    FullNormOptions one, many;
    many.threads = 4;
    const auto a = full_norm(ProblemConfig{}, 55.0, one), b = full_norm(ProblemConfig{}, 55.0, many);
    REQUIRE(a.per_mode.size() == b.per_mode.size());
    for (std::size_t i = 0; i < a.per_mode.size(); ++i) CHECK(a.per_mode[i].norm == b.per_mode[i].norm);
  }

  TEST_CASE("undamped full norm equals the lattice distance") {
    for (double s : {21.3, 47.0}) {
      double dist = 1e300;
      for (int m = 1; m < 200; ++m)
        for (int n = 1; n < 200; ++n) dist = std::min(dist, std::abs(s * s - pi * pi * (m * m + n * n)));
      CHECK(full_norm(undamped(), s).full_norm == doctest::Approx(1.0 / dist).epsilon(1e-6));
    }
  }

  TEST_CASE("near-resonant argmax sits next to s / pi") {
    const double s = 200.5 * pi / 200.0 * 20.0;
    const auto rec = full_norm(ProblemConfig{}, s);
    MESSAGE("s = " << s << ", n* = " << rec.n_star << ", round(s/pi) = " << std::lround(s / pi));
  }

  TEST_CASE("scaling fit on synthetic records") {
    std::vector<SweepRecord> sq, flat;
    for (int j = 0; j < 8; ++j) {
      const double s = 10.0 * std::pow(2.0, j);
      sq.push_back(synthetic(s, std::sqrt(s)));
      flat.push_back(synthetic(s, 3.0));
    }
    CHECK(scaling_fit(sq).slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(band_ratio(sq) < 1.3);
    CHECK(std::abs(scaling_fit(flat).slope) < 1e-12);
    std::vector<SweepRecord> exact;
    for (int j = 0; j < 8; ++j) exact.push_back(synthetic(10.0 * std::pow(2.0, j), 2.0 * (1.0 + std::sqrt(10.0 * std::pow(2.0, j)))));
    CHECK(band_ratio(exact) == doctest::Approx(1.0));
    CHECK(band_ratio(std::vector<SweepRecord>{synthetic(40.0, 7.0)}) == 1.0);

    CHECK_THROWS_AS(scaling_fit(std::vector<SweepRecord>(sq.begin(), sq.begin() + 5)), DomainError);
    std::vector<SweepRecord> narrow;
    for (int j = 0; j < 6; ++j) narrow.push_back(synthetic(100.0 + j, 1.0));
    CHECK_THROWS_AS(scaling_fit(narrow), DomainError);
  }

  TEST_CASE("stratified samples land in their regime") {
    ProblemConfig cfg;
    cfg.regime_c = 0.3;
    cfg.regime_C = 3.0;
    const auto a = stratified_samples(cfg, 200, 50.0, 1000.0, 77);
    const auto b = stratified_samples(cfg, 200, 50.0, 1000.0, 77);
    REQUIRE(a.samples.size() == 200);
    CHECK(a.uncovered.empty());
    int counts[5] = {};
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
      const auto& smp = a.samples[i];
      CHECK(smp.s == b.samples[i].s);
      CHECK(smp.s >= 50.0);
      CHECK(smp.s <= 1000.0);
      CHECK(classify_regime(cfg, smp.s, make_mode_context(cfg, smp.s, smp.n)).regime == smp.regime);
      ++counts[int(smp.regime)];
    }
    for (auto r : {Regime::I, Regime::II, Regime::III, Regime::IV}) CHECK(counts[int(r)] == 50);
  }

  TEST_CASE("default regime constants leave III empty at desk scale") {
    const auto set = stratified_samples(ProblemConfig{}, 40, 50.0, 1000.0, 5);
    CHECK(set.uncovered.size() == 1);
    CHECK(set.uncovered.front() == Regime::III);
  }
}
