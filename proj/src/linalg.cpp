#include "stripwave/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "stripwave/errors.hpp"
#include "stripwave/kernels.hpp"

namespace stripwave {
namespace {

double cabs1(cplx z) { return std::abs(z.real()) + std::abs(z.imag()); }

}  // namespace

TridiagonalLU::TridiagonalLU(std::vector<cplx> lower, std::vector<cplx> diag, std::vector<cplx> upper)
    : dl_(std::move(lower)), d_(std::move(diag)), du_(std::move(upper)) {
  const std::size_t n = d_.size();
  if (n == 0) throw DomainError("TridiagonalLU: empty matrix");
  if (dl_.size() + 1 != n || du_.size() + 1 != n) throw DomainError("TridiagonalLU: bad band lengths");
  du2_.assign(n > 2 ? n - 2 : 0, cplx{});
  swapped_.assign(n > 1 ? n - 1 : 0, 0);

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (cabs1(d_[i]) >= cabs1(dl_[i])) {
      if (cabs1(d_[i]) != 0.0) {
        const cplx fact = dl_[i] / d_[i];
        dl_[i] = fact;
        d_[i + 1] -= fact * du_[i];
      }
    } else {
      const cplx fact = d_[i] / dl_[i];
      d_[i] = dl_[i];
      dl_[i] = fact;
      const cplx temp = du_[i];
      du_[i] = d_[i + 1];
      d_[i + 1] = temp - fact * d_[i + 1];
      if (i + 2 < n) {
        du2_[i] = du_[i + 1];
        du_[i + 1] = -fact * du_[i + 1];
      }
      swapped_[i] = 1;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (cabs1(d_[i]) == 0.0) throw SingularSystemError("tridiagonal solve: zero pivot at row " + std::to_string(i));
}

void TridiagonalLU::solve(std::span<cplx> b) const {
  const std::size_t n = d_.size();
  if (b.size() != n) throw DomainError("TridiagonalLU::solve: length mismatch");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!swapped_[i]) {
      b[i + 1] -= dl_[i] * b[i];
    } else {
      const cplx temp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = temp - dl_[i] * b[i];
    }
  }
  b[n - 1] /= d_[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
  if (n > 2)
    for (std::size_t i = n - 2; i-- > 0;) b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
}

namespace {

using Block = std::vector<std::vector<cplx>>;

void fill_random(std::vector<cplx>& v, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  for (auto& z : v) z = cplx(gauss(rng), gauss(rng));
}

// Modified Gram-Schmidt, two passes. Columns that collapse are refilled.
void orthonormalize(Block& x, std::mt19937_64& rng) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (int attempt = 0; attempt < 4; ++attempt) {
      const double before = std::sqrt(kernels::norm2_sq(x[j]));
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t i = 0; i < j; ++i) kernels::caxpy(-kernels::cdot(x[i], x[j]), x[i], x[j]);
      const double after = std::sqrt(kernels::norm2_sq(x[j]));
      if (after > 1e-10 * before && after > 0.0) {
        kernels::cscale(1.0 / after, x[j]);
        break;
      }
      fill_random(x[j], rng);
    }
  }
}

}  // namespace

PowerResult dominant_eigenvalue(std::size_t dim, const LinearMap& apply, const PowerOptions& opt) {
  if (dim == 0) throw DomainError("dominant_eigenvalue: empty operator");
  double theta = 0.0;
  int total = 0;

  // A stalled run usually means a small gap below the block; widen it.
  for (int attempt = 0; attempt <= opt.restarts; ++attempt) {
    const std::size_t p = std::min<std::size_t>(std::size_t(std::max(opt.block, 1)) << attempt, dim);
    std::mt19937_64 rng(opt.seed + 0x9e3779b97f4a7c15ULL * std::uint64_t(attempt));
    Block x(p, std::vector<cplx>(dim)), y(p, std::vector<cplx>(dim));
    for (auto& col : x) fill_random(col, rng);
    orthonormalize(x, rng);

    double previous = -1.0;
    int steady = 0;
    for (int it = 1; it <= opt.max_iterations; ++it) {
      ++total;
      for (std::size_t j = 0; j < p; ++j) apply(x[j], y[j]);

      Eigen::MatrixXcd h(p, p);
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) h(i, j) = kernels::cdot(x[i], y[j]);
      h = (0.5 * (h + h.adjoint())).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
      const auto& vals = eig.eigenvalues();
      const Eigen::MatrixXcd q = eig.eigenvectors().rowwise().reverse();  // descending
      theta = vals(Eigen::Index(p) - 1);
      if (theta <= 0.0) return {0.0, total};

      std::vector<cplx> r(dim);
      for (std::size_t j = 0; j < p; ++j) {
        kernels::caxpy(q(Eigen::Index(j), 0), y[j], r);
        kernels::caxpy(-theta * q(Eigen::Index(j), 0), x[j], r);
      }
      const double rel = std::sqrt(kernels::norm2_sq(r)) / theta;
      if (rel <= opt.tolerance) return {theta, total};

      steady = std::abs(theta - previous) <= 1e-14 * theta ? steady + 1 : 0;
      if (steady >= 5 && rel <= 1e-6) return {theta, total};
      previous = theta;

      Block next(p, std::vector<cplx>(dim));
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t j = 0; j < p; ++j) kernels::caxpy(q(Eigen::Index(j), Eigen::Index(k)), y[j], next[k]);
      x.swap(next);
      orthonormalize(x, rng);
    }
  }
  throw ConvergenceError("dominant_eigenvalue: no convergence after restarts", theta, total);
}

}  // namespace stripwave
