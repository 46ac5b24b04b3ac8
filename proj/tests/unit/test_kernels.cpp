#include <doctest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "stripwave/kernels.hpp"

using namespace stripwave;

namespace {

std::vector<cplx> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(g(rng), g(rng));
  return v;
}

// Restores the backend picked at startup.
struct BackendGuard {
  kernels::Backend saved = kernels::active_backend();
  ~BackendGuard() { kernels::set_backend(saved); }
};

template <class F>
auto on(kernels::Backend b, F&& f) {
  kernels::set_backend(b);
  return f();
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar reference against direct loops") {
    BackendGuard guard;
    kernels::set_backend(kernels::Backend::Scalar);
    std::mt19937_64 rng(7);
    const auto a = random_vec(rng, 9), b = random_vec(rng, 9);
    std::vector<cplx> out(9);
    kernels::cmul(a, b, out);
    cplx dot = 0.0;
    double n2 = 0.0, d2 = 0.0;
    for (int i = 0; i < 9; ++i) {
      CHECK(std::abs(out[i] - a[i] * b[i]) < 1e-15);
      dot += std::conj(a[i]) * b[i];
      n2 += std::norm(a[i]);
      if (i > 0) d2 += std::norm(a[i] - a[i - 1]);
    }
    CHECK(std::abs(kernels::cdot(a, b) - dot) < 1e-13);
    CHECK(kernels::norm2_sq(a) == doctest::Approx(n2).epsilon(1e-14));
    CHECK(kernels::diff_norm2_sq(a) == doctest::Approx(d2).epsilon(1e-14));

    std::vector<cplx> y(9);
    const std::vector<cplx> off(a.begin(), a.begin() + 8);
    kernels::tridiag_apply(b, off, a, y);
    for (int i = 0; i < 9; ++i) {
      cplx ref = b[i] * a[i];
      if (i > 0) ref += off[i - 1] * a[i - 1];
      if (i < 8) ref += off[i] * a[i + 1];
      CHECK(std::abs(y[i] - ref) < 1e-13);
    }
  }

  TEST_CASE("AVX2 variants match the scalar reference") {
    if (!kernels::backend_available(kernels::Backend::Avx2)) {
      MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
      CHECK_THROWS(kernels::set_backend(kernels::Backend::Avx2));
      return;
    }
    BackendGuard guard;
    using kernels::Backend;
    std::mt19937_64 rng(11);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 63u, 64u, 1000u, 4097u}) {
      CAPTURE(n);
      const auto a = random_vec(rng, n), b = random_vec(rng, n), c = random_vec(rng, n), d = random_vec(rng, n),
                 f = random_vec(rng, n);
      const auto off = random_vec(rng, n > 0 ? n - 1 : 0);
      const cplx alpha(0.3, -1.7);

      auto run_cmul = [&] {
        std::vector<cplx> o(n);
        kernels::cmul(a, b, o);
        return o;
      };
      auto run_green = [&] {
        std::vector<cplx> o(n);
        kernels::green_combine(a, b, c, d, alpha, 0.125, f, o);
        return o;
      };
      auto run_tri = [&] {
        std::vector<cplx> o(n);
        kernels::tridiag_apply(a, off, b, o);
        return o;
      };
      auto run_axpy = [&] {
        auto o = c;
        kernels::caxpy(alpha, a, o);
        return o;
      };
      auto run_scale = [&] {
        auto o = d;
        kernels::cscale(alpha, o);
        return o;
      };
      for (auto run : {std::function<std::vector<cplx>()>(run_cmul), std::function<std::vector<cplx>()>(run_green),
                       std::function<std::vector<cplx>()>(run_tri), std::function<std::vector<cplx>()>(run_axpy),
                       std::function<std::vector<cplx>()>(run_scale)}) {
        const auto s = on(Backend::Scalar, run);
        const auto v = on(Backend::Avx2, run);
        REQUIRE(s.size() == v.size());
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(s[i] - v[i]) <= 1e-14 * (1.0 + std::abs(s[i])));
      }

      const cplx ds = on(Backend::Scalar, [&] { return kernels::cdot(a, b); });
      const cplx dv = on(Backend::Avx2, [&] { return kernels::cdot(a, b); });
      CHECK(std::abs(ds - dv) <= 1e-13 * (1.0 + std::sqrt(double(n)) * 4.0));
      const double ns = on(Backend::Scalar, [&] { return kernels::norm2_sq(a); });
      const double nv = on(Backend::Avx2, [&] { return kernels::norm2_sq(a); });
      CHECK(std::abs(ns - nv) <= 1e-13 * (1.0 + ns));
      const double fs = on(Backend::Scalar, [&] { return kernels::diff_norm2_sq(a); });
      const double fv = on(Backend::Avx2, [&] { return kernels::diff_norm2_sq(a); });
      CHECK(std::abs(fs - fv) <= 1e-13 * (1.0 + fs));
    }
  }

  TEST_CASE("backend names") {
    CHECK(kernels::backend_name(kernels::Backend::Scalar) == "scalar");
    CHECK(kernels::backend_name(kernels::Backend::Avx2) == "avx2");
  }
}
