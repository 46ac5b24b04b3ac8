#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stripwave/common.hpp"

namespace stripwave {

// LU with partial pivoting of a general complex tridiagonal matrix
// (same elimination order as LAPACK zgttrf/zgttrs).
class TridiagonalLU {
 public:
  // lower/upper have length n-1, diag length n.
  TridiagonalLU(std::vector<cplx> lower, std::vector<cplx> diag, std::vector<cplx> upper);

  std::size_t size() const noexcept { return d_.size(); }
  // Solves A x = b in place.
  void solve(std::span<cplx> b) const;

 private:
  std::vector<cplx> dl_, d_, du_, du2_;
  std::vector<std::uint8_t> swapped_;
};

struct PowerOptions {
  int block = 4;
  int max_iterations = 600;
  int restarts = 2;
  double tolerance = 1e-10;  // on the Ritz residual, relative to the eigenvalue
  std::uint64_t seed = 0x5eedULL;
};

struct PowerResult {
  double eigenvalue = 0.0;
  int iterations = 0;
};

using LinearMap = std::function<void(std::span<const cplx>, std::span<cplx>)>;

// Largest eigenvalue of a Hermitian positive semidefinite operator by block
// subspace iteration with Rayleigh-Ritz. Throws ConvergenceError carrying the
// last Rayleigh quotient after the allowed restarts.
PowerResult dominant_eigenvalue(std::size_t dim, const LinearMap& apply, const PowerOptions& opt = {});

}  // namespace stripwave
