#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "oracles.hpp"
#include "stripwave/errors.hpp"
#include "stripwave/linalg.hpp"

using namespace stripwave;

TEST_SUITE("linalg") {
  TEST_CASE("pivoted tridiagonal LU against a dense solve") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int n : {1, 2, 3, 5, 40}) {
      CAPTURE(n);
      std::vector<cplx> lo(std::max(n - 1, 0)), di(n), up(std::max(n - 1, 0)), b(n);
      Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        // weak diagonal forces row swaps
        di[i] = cplx(0.1 * g(rng), 0.1 * g(rng));
        dense(i, i) = di[i];
        b[i] = cplx(g(rng), g(rng));
      }
      for (int i = 0; i + 1 < n; ++i) {
        lo[i] = cplx(g(rng), g(rng));
        up[i] = cplx(g(rng), g(rng));
        dense(i + 1, i) = lo[i];
        dense(i, i + 1) = up[i];
      }
      Eigen::VectorXcd rhs = Eigen::Map<Eigen::VectorXcd>(b.data(), n);
      Eigen::VectorXcd ref = dense.fullPivLu().solve(rhs);
      TridiagonalLU lu(lo, di, up);
      lu.solve(b);
      for (int i = 0; i < n; ++i) CHECK(std::abs(b[i] - ref(i)) <= 1e-10 * (1.0 + std::abs(ref(i))));
    }
  }

  TEST_CASE("singular tridiagonal") {
    CHECK_THROWS_AS(TridiagonalLU({cplx(0.0)}, {cplx(0.0), cplx(0.0)}, {cplx(0.0)}), SingularSystemError);
  }

  TEST_CASE("dominant eigenvalue of a Hermitian matrix") {
    const int n = 60;
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = 1.0 / (1.0 + i);
    // Q diag Q* with a fixed unitary built from a QR factorization
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
    Eigen::MatrixXcd q = a.householderQr().householderQ();
    Eigen::MatrixXcd h = q * Eigen::Map<Eigen::VectorXd>(eig.data(), n).cast<cplx>().asDiagonal() * q.adjoint();
    auto apply = [&](std::span<const cplx> x, std::span<cplx> y) {
      Eigen::Map<Eigen::VectorXcd>(y.data(), n) = h * Eigen::Map<const Eigen::VectorXcd>(x.data(), n);
    };
    const auto r = dominant_eigenvalue(n, apply);
    CHECK(r.eigenvalue == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("non-convergence carries the last estimate") {
    // Two nearly equal top eigenvalues and very few iterations.
    const int n = 50;
    auto apply = [&](std::span<const cplx> x, std::span<cplx> y) {
      for (int i = 0; i < n; ++i) y[i] = x[i] * (i < 6 ? 1.0 - 1e-9 * i : 0.5);
    };
    PowerOptions opt;
    opt.block = 1;
    opt.max_iterations = 2;
    opt.restarts = 0;
    opt.tolerance = 1e-15;
    try {
      dominant_eigenvalue(n, apply, opt);
      FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
      CHECK(e.last_estimate() > 0.5);
      CHECK(e.iterations() >= 1);
    }
  }
}
