#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "stripwave/errors.hpp"
#include "stripwave/fd_oracle.hpp"
#include "stripwave/norm_analysis.hpp"

using namespace stripwave;
using oracle::pi;
using oracle::rel_l2;

namespace {

std::vector<cplx> interior_sine(int m, int N) {
  std::vector<cplx> u(N - 1);
  for (int j = 1; j < N; ++j) u[j - 1] = std::sin(m * pi * double(j) / N);
  return u;
}

bool same_multiset(std::vector<cplx> a, std::vector<cplx> b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](cplx p, cplx q) { return std::abs(p - x) < std::abs(q - x); });
    if (std::abs(*it - x) > tol * std::max(1.0, std::abs(x))) return false;
    b.erase(it);
  }
  return true;
}

}  // namespace

TEST_SUITE("fd_oracle") {
  TEST_CASE("stencil structure") {
    const auto op = build_pn_matrix(ProblemConfig{}, 30.0, 4, 64);
    CHECK(op.size() == 63);
    CHECK(op.off.size() == 62);
    CHECK(op.sigma_row == 31);
    for (const auto& o : op.off) CHECK(o == op.off.front());
    CHECK(op.off.front().real() == doctest::Approx(-64.0 * 64.0));
    const auto a = damping_samples(ProblemConfig{}, 64);
    CHECK(a[30] == 1.0);
    CHECK(a[31] == 0.5);
    CHECK(a[32] == 0.0);
    CHECK_THROWS_AS(build_pn_matrix(ProblemConfig{}, 30.0, 4, 8), ConfigError);
    ProblemConfig odd;
    odd.sigma = 0.3;
    CHECK_THROWS_AS(build_pn_matrix(odd, 30.0, 4, 64), ConfigError);
  }

  TEST_CASE("undamped stencil is diagonal in the discrete sine basis") {
    ProblemConfig cfg;
    cfg.a0 = 0.0;
    const int N = 128;
    const double s = 17.0;
    const double k2 = s * s - std::pow(2 * pi, 2);
    const auto op = build_pn_matrix(cfg, s, 2, N);
    for (int m : {1, 3, 40}) {
      const auto u = interior_sine(m, N);
      auto ref = u;
      for (auto& x : ref) x *= oracle::fd_laplace_eig(m, N) - k2;
      CHECK(rel_l2(op.apply(u), ref) <= 1e-10);
    }
    CHECK(oracle::fd_laplace_eig(1, 4096) == doctest::Approx(pi * pi).epsilon(1e-6));
  }

  TEST_CASE("Taylor remainder away from sigma is second order") {
    ProblemConfig cfg;
    const double s = 25.0;
    const int n = 3, m = 2;
    const double k2 = s * s - std::pow(n * pi, 2);
    auto err = [&](int N) {
      const auto op = build_pn_matrix(cfg, s, n, N);
      const auto u = interior_sine(m, N);
      const auto au = op.apply(u);
      double worst = 0.0;
      for (int j = 1; j < N; ++j) {
        const double x = double(j) / N;
        if (std::abs(x - 0.5) < 1e-12) continue;
        const double a = x < 0.5 ? cfg.a0 : 0.0;
        const cplx ref = (std::pow(m * pi, 2) - k2 + cplx(0.0, 2.0 * s * a)) * u[j - 1];
        worst = std::max(worst, std::abs(au[j - 1] - ref));
      }
      return worst;
    };
    CHECK(err(64) / err(128) == doctest::Approx(4.0).epsilon(0.02));
  }

  TEST_CASE("tridiagonal solve: round trip and zero data") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g;
    const auto op = build_pn_matrix(ProblemConfig{}, 90.0, 7, 512);
    std::vector<cplx> u(op.size());
    for (auto& x : u) x = cplx(g(rng), g(rng));
    const auto f = op.apply(u);
    const auto back = solve_fd(op, f);
    CHECK(rel_l2(back, u) <= 1e-10);
    CHECK(relative_residual(op, back, f, false) <= 1e-12);
    const auto zero = solve_fd(op, std::vector<cplx>(op.size(), 0.0));
    CHECK(std::all_of(zero.begin(), zero.end(), [](cplx x) { return x == cplx(0.0); }));
    CHECK_THROWS_AS(solve_fd(op, std::vector<cplx>(3)), DomainError);

    const auto fg = GridFunction::sample(0.0, 1.0, 513, oracle::random_smooth(rng));
    const auto ug = solve_fd(op, fg);
    CHECK(ug.front() == cplx(0.0));
    CHECK(ug.back() == cplx(0.0));
  }

  TEST_CASE("undamped norm equals the discrete eigen-expansion value") {
    ProblemConfig cfg;
    cfg.a0 = 0.0;
    for (int N : {256, 2048}) {
      for (double s : {12.3, 57.9}) {
        const auto op = build_pn_matrix(cfg, s, 3, N);
        CAPTURE(N);
        CAPTURE(s);
        CHECK(norm_fd(op) == doctest::Approx(oracle::undamped_fd_norm(s, 3, N)).epsilon(1e-6));
      }
    }
  }

  TEST_CASE("dense and iterative paths agree; homogeneity; adjoint identity") {
    const auto op = build_pn_matrix(ProblemConfig{}, 63.0, 11, 400);
    const double dense = norm_fd_dense(op);
    CHECK(norm_fd_iterative(op) == doctest::Approx(dense).epsilon(1e-6));
    CHECK(norm_fd(op.scaled(2.0)) == doctest::Approx(dense / 2.0).epsilon(1e-10));

    const auto minus = build_pn_matrix(ProblemConfig{}, -63.0, 11, 400);
    const auto adj = op.adjoint();
    for (std::size_t i = 0; i < op.size(); ++i) CHECK(std::abs(adj.diag[i] - minus.diag[i]) <= 1e-12 * std::abs(minus.diag[i]));
    CHECK(norm_fd(minus) == doctest::Approx(dense).epsilon(1e-10));

    const auto big = build_pn_matrix(ProblemConfig{}, 63.0, 11, 2048);
    const auto big_minus = build_pn_matrix(ProblemConfig{}, -63.0, 11, 2048);
    CHECK(norm_fd(big_minus) == doctest::Approx(norm_fd(big)).epsilon(1e-6));
  }

  TEST_CASE("FD norm converges toward the analytic norm") {
    const double analytic = mode_norm(ProblemConfig{}, 120.0, 30);
    double prev_gap = 1e300;
    for (int N : {1024, 2048, 4096}) {
      const double gap = std::abs(norm_fd(build_pn_matrix(ProblemConfig{}, 120.0, 30, N)) - analytic) / analytic;
      CAPTURE(N);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
    CHECK(prev_gap <= 1e-3);
  }

  TEST_CASE("quadratic pencil: undamped spectrum") {
    ProblemConfig cfg;
    cfg.a0 = 0.0;
    const int N = 60, n = 2;
    const auto z = eigs_quadratic(cfg, n, N);
    std::vector<cplx> ref;
    for (int m = 1; m < N; ++m) {
      const double w = std::sqrt(oracle::fd_laplace_eig(m, N) + std::pow(n * pi, 2));
      ref.emplace_back(0.0, w);
      ref.emplace_back(0.0, -w);
    }
    for (const auto& x : z) CHECK(std::abs(x.real()) <= 1e-8 * std::abs(x));
    CHECK(same_multiset(z, ref, 1e-9));
  }

  TEST_CASE("quadratic pencil: fully damped strip") {
    ProblemConfig cfg;
    cfg.sigma = 1.0;
    cfg.full_strip_oracle = true;
    cfg.a0 = 1.3;
    const int N = 50, n = 1;
    const auto z = eigs_quadratic(cfg, n, N);
    std::vector<cplx> ref;
    for (int m = 1; m < N; ++m) {
      const cplx root = std::sqrt(cplx(cfg.a0 * cfg.a0 - oracle::fd_laplace_eig(m, N) - std::pow(n * pi, 2)));
      ref.push_back(cfg.a0 + root);
      ref.push_back(cfg.a0 - root);
    }
    CHECK(same_multiset(z, ref, 1e-9));
  }

  TEST_CASE("quadratic pencil: closed under conjugation, right half-plane") {
    const auto z = eigs_quadratic(ProblemConfig{}, 3, 100);
    CHECK(z.size() == 2 * 99);
    std::vector<cplx> conj(z.size());
    std::transform(z.begin(), z.end(), conj.begin(), [](cplx x) { return std::conj(x); });
    CHECK(same_multiset(z, conj, 1e-9));
    for (const auto& x : z) CHECK(x.real() >= -1e-10 * std::max(1.0, std::abs(x)));
    CHECK_THROWS_AS(eigs_quadratic(ProblemConfig{}, 3, 401), DomainError);
  }
}
