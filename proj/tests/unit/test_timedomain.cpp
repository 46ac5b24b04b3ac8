#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "stripwave/errors.hpp"
#include "stripwave/spectrum.hpp"
#include "stripwave/timedomain.hpp"

using namespace stripwave;
using oracle::pi;

namespace {

ProblemConfig undamped() {
  ProblemConfig cfg;
  cfg.a0 = 0.0;
  return cfg;
}

GridFunction smooth_zero_ends(std::mt19937_64& rng, int intervals) {
  std::normal_distribution<double> g;
  std::vector<cplx> c(5);
  for (int m = 0; m < 5; ++m) c[m] = cplx(g(rng), g(rng)) / double(m + 1);
  auto f = GridFunction::sample(0.0, 1.0, std::size_t(intervals) + 1, [&](double x) {
    cplx acc = 0.0;
    for (int m = 0; m < 5; ++m) acc += c[m] * std::sin((m + 1) * pi * x);
    return acc;
  });
  std::vector<cplx> v(f.values().begin(), f.values().end());
  v.front() = v.back() = 0.0;
  return GridFunction(0.0, 1.0, std::move(v));
}

ModalState random_state(std::mt19937_64& rng, int n, int intervals) {
  return make_state(n, smooth_zero_ends(rng, intervals), smooth_zero_ends(rng, intervals));
}

double max_gap(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.count(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("timedomain") {
  TEST_CASE("state validation") {
    const auto z = GridFunction::zeros(0.0, 1.0, 65);
    CHECK_THROWS_AS(make_state(0, z, z), DomainError);
    CHECK_THROWS_AS(make_state(1, z, GridFunction::zeros(0.0, 1.0, 33)), DomainError);
    CHECK_THROWS_AS(make_state(1, GridFunction(0.0, 1.0, {cplx(1.0), cplx(0.0)}), GridFunction::zeros(0.0, 1.0, 2)),
                    DomainError);
    CHECK_THROWS_AS(ModeStepper(ProblemConfig{}, 1, 64, 0.0), DomainError);
  }

  TEST_CASE("energy of a single sine mode") {
    const double eps = 0.3;
    auto err = [&](int N) {
      const auto u = GridFunction::sample(0.0, 1.0, N + 1, [&](double x) { return cplx(eps * std::sin(pi * x)); });
      std::vector<cplx> uu(u.values().begin(), u.values().end());
      uu.back() = 0.0;
      const auto st = make_state(1, GridFunction(0.0, 1.0, uu), GridFunction::zeros(0.0, 1.0, N + 1));
      return std::abs(mode_energy(st) - eps * eps * pi * pi / 2.0) / (eps * eps * pi * pi / 2.0);
    };
    CHECK(err(1024) <= 1e-5);
    CHECK(err(128) / err(256) == doctest::Approx(4.0).epsilon(0.01));
    const auto zero = make_state(3, GridFunction::zeros(0.0, 1.0, 65), GridFunction::zeros(0.0, 1.0, 65));
    CHECK(mode_energy(zero) == 0.0);
    const std::vector<ModalState> states{zero};
    CHECK(energy(ProblemConfig{}, states) == 0.0);
  }

  TEST_CASE("undamped step conserves energy") {
    std::mt19937_64 rng(61);
    const auto st = random_state(rng, 3, 256);
    const ModeStepper stepper(undamped(), 3, 256, 1e-3);
    auto cur = st;
    const double e0 = mode_energy(st);
    for (int j = 0; j < 200; ++j) {
      const auto next = stepper.step(cur);
      CHECK(std::abs(mode_energy(next) - mode_energy(cur)) <= 1e-10 * e0);
      cur = next;
    }
    CHECK(cur.t == doctest::Approx(0.2));
  }

  TEST_CASE("zero state stays zero") {
    const auto z = make_state(2, GridFunction::zeros(0.0, 1.0, 129), GridFunction::zeros(0.0, 1.0, 129));
    const auto next = step(ProblemConfig{}, z, 0.01);
    CHECK(next.u.max_abs() == 0.0);
    CHECK(next.v.max_abs() == 0.0);
  }

  TEST_CASE("time reversibility without damping") {
    std::mt19937_64 rng(62);
    const auto st = random_state(rng, 2, 256);
    const ModeStepper stepper(undamped(), 2, 256, 2e-3);
    auto cur = st;
    for (int j = 0; j < 100; ++j) cur = stepper.step(cur);
    auto flip = [](const ModalState& s) {
      std::vector<cplx> v(s.v.values().begin(), s.v.values().end());
      for (auto& x : v) x = -x;
      return make_state(s.n, s.u, GridFunction(0.0, 1.0, std::move(v)), s.t);
    };
    cur = flip(cur);
    for (int j = 0; j < 100; ++j) cur = stepper.step(cur);
    cur = flip(cur);
    CHECK(max_gap(cur.u, st.u) <= 1e-8 * st.u.max_abs());
    CHECK(max_gap(cur.v, st.v) <= 1e-8 * st.v.max_abs());
  }

  TEST_CASE("simulate: undamped trace is flat") {
    std::mt19937_64 rng(63);
    const std::vector<ModalState> init{random_state(rng, 1, 256), random_state(rng, 4, 256)};
    const auto trace = simulate(undamped(), init, 0.5, 1e-3);
    CHECK(trace.times.size() == 501);
    CHECK(trace.times.back() == doctest::Approx(0.5));
    for (double e : trace.energies) CHECK(std::abs(e - trace.energies.front()) <= 1e-8 * trace.energies.front());
  }

  TEST_CASE("simulate: damped random data dissipates") {
    std::mt19937_64 rng(64);
    std::vector<ModalState> init;
    for (int n : {1, 2, 7}) init.push_back(random_state(rng, n, 512));
    const auto trace = simulate(ProblemConfig{}, init, 0.3, 7e-4);
    for (std::size_t j = 1; j < trace.energies.size(); ++j) CHECK(trace.energies[j] <= trace.energies[j - 1]);
    CHECK(trace.energies.back() < trace.energies.front());
    CHECK(trace.times.back() == doctest::Approx(0.3).epsilon(1e-14));
  }

  TEST_CASE("mode decoupling and thread independence") {
    std::mt19937_64 rng(65);
    const std::vector<ModalState> init{random_state(rng, 1, 256), random_state(rng, 3, 256), random_state(rng, 5, 256)};
    const auto joint = simulate(ProblemConfig{}, init, 0.1, 1e-3, 1);
    const auto threaded = simulate(ProblemConfig{}, init, 0.1, 1e-3, 3);
    CHECK(joint.energies == threaded.energies);
    std::vector<double> sum(joint.energies.size(), 0.0);
    for (const auto& st : init) {
      const auto solo = simulate(ProblemConfig{}, std::vector<ModalState>{st}, 0.1, 1e-3);
      for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += solo.energies[j];
    }
    CHECK(sum == joint.energies);
  }

  TEST_CASE("simulate preconditions") {
    std::mt19937_64 rng(66);
    const std::vector<ModalState> init{random_state(rng, 1, 64)};
    CHECK_THROWS_AS(simulate(ProblemConfig{}, init, 0.1, 0.2), DomainError);
    CHECK_THROWS_AS(simulate(ProblemConfig{}, {}, 0.1, 0.01), DomainError);
  }

  TEST_CASE("decay fit on an exact exponential") {
    EnergyTrace tr;
    for (int j = 0; j <= 100; ++j) {
      tr.times.push_back(0.01 * j);
      tr.energies.push_back(3.0 * std::exp(-0.7 * 0.01 * j));
    }
    CHECK(fit_decay_rate(tr, 1.0) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK_THROWS_AS(fit_decay_rate(tr, -1.0), DomainError);
  }

  TEST_CASE("quasimode data decays at twice Re z") {
    ProblemConfig cfg;
    const auto rec = least_damped_root(cfg, 10);
    REQUIRE(rec);
    const auto st = quasimode_state(cfg, *rec, 1024);
    CHECK(st.u.max_abs() == doctest::Approx(1.0));
    const double T = 0.5 / rec->z.real();
    const auto trace = simulate(cfg, std::vector<ModalState>{st}, T, std::min(1e-3, 0.1 / (10 * pi)));
    const double rate = fit_decay_rate(trace, T);
    CHECK(std::abs(rate - 2.0 * rec->z.real()) <= 0.05 * 2.0 * rec->z.real());
  }
}
