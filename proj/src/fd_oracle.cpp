#include "stripwave/fd_oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "stripwave/errors.hpp"
#include "stripwave/kernels.hpp"

namespace stripwave {

std::vector<cplx> TridiagonalOperator::apply(std::span<const cplx> x) const {
  std::vector<cplx> y(diag.size());
  kernels::tridiag_apply(diag, off, x, y);
  return y;
}

TridiagonalOperator TridiagonalOperator::scaled(cplx factor) const {
  TridiagonalOperator out = *this;
  for (auto& d : out.diag) d *= factor;
  for (auto& o : out.off) o *= factor;
  return out;
}

TridiagonalOperator TridiagonalOperator::adjoint() const {
  TridiagonalOperator out = *this;
  for (auto& d : out.diag) d = std::conj(d);
  for (auto& o : out.off) o = std::conj(o);
  return out;
}

std::vector<double> damping_samples(const ProblemConfig& cfg, int intervals) {
  const int js = sigma_node(cfg.sigma, intervals);
  std::vector<double> a(std::size_t(std::max(intervals - 1, 0)));
  for (int i = 1; i < intervals; ++i) a[i - 1] = i < js ? cfg.a0 : (i == js ? 0.5 * cfg.a0 : 0.0);
  return a;
}

TridiagonalOperator assemble_pn(const ProblemConfig& cfg, double s, int n, int intervals) {
  cfg.validate();
  if (n < 1) throw DomainError("mode index n must be >= 1");
  if (intervals < 2) throw ConfigError("FD grid needs at least 2 intervals");
  TridiagonalOperator op;
  op.intervals = intervals;
  op.spacing = 1.0 / intervals;
  const int js = sigma_node(cfg.sigma, intervals);
  op.sigma_row = (js > 0 && js < intervals) ? js - 1 : -1;
  const double inv_h2 = double(intervals) * double(intervals);
  const double np = n * pi;
  const double k2 = (s - np) * (s + np);
  const auto a = damping_samples(cfg, intervals);
  op.diag.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) op.diag[i] = cplx(2.0 * inv_h2 - k2, 2.0 * s * a[i]);
  op.off.assign(a.empty() ? 0 : a.size() - 1, cplx(-inv_h2, 0.0));
  return op;
}

TridiagonalOperator build_pn_matrix(const ProblemConfig& cfg, double s, int n, int intervals) {
  if (intervals < 16) throw ConfigError("FD oracle needs at least 16 intervals");
  return assemble_pn(cfg, s, n, intervals);
}

namespace {

TridiagonalLU factor(const TridiagonalOperator& op) {
  return TridiagonalLU(op.off, op.diag, op.off);
}

}  // namespace

std::vector<cplx> solve_fd(const TridiagonalOperator& op, std::span<const cplx> f) {
  if (f.size() != op.size()) throw DomainError("solve_fd: length mismatch");
  std::vector<cplx> u(f.begin(), f.end());
  factor(op).solve(u);
  return u;
}

GridFunction solve_fd(const TridiagonalOperator& op, const GridFunction& f) {
  if (f.count() != op.size() + 2) throw DomainError("solve_fd: grid does not match operator");
  auto inner = solve_fd(op, f.values().subspan(1, op.size()));
  std::vector<cplx> u(f.count());
  std::copy(inner.begin(), inner.end(), u.begin() + 1);
  return GridFunction(f.lo(), f.hi(), std::move(u));
}

double relative_residual(const TridiagonalOperator& op, std::span<const cplx> u,
                         std::span<const cplx> f, bool skip_sigma_row) {
  if (u.size() != op.size() || f.size() != op.size()) throw DomainError("relative_residual: length mismatch");
  auto r = op.apply(u);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (skip_sigma_row && int(i) == op.sigma_row) continue;
    num += std::norm(r[i] - f[i]);
    den += std::norm(f[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double norm_fd_dense(const TridiagonalOperator& op) {
  const auto m = Eigen::Index(op.size());
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    a(i, i) = op.diag[i];
    if (i + 1 < m) a(i, i + 1) = a(i + 1, i) = op.off[i];
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
  const double smin = svd.singularValues()(m - 1);
  if (!(smin > 0.0)) throw SingularSystemError("norm_fd: operator is singular");
  return 1.0 / smin;
}

double norm_fd_iterative(const TridiagonalOperator& op, const PowerOptions& opt) {
  const auto lu = factor(op);
  const std::size_t m = op.size();
  auto apply = [&](std::span<const cplx> x, std::span<cplx> y) {
    // y = A^{-1} A^{-*} x, with A^{-*} x = conj(A^{-1} conj(x)) since A = A^T.
    for (std::size_t i = 0; i < m; ++i) y[i] = std::conj(x[i]);
    lu.solve(y);
    for (std::size_t i = 0; i < m; ++i) y[i] = std::conj(y[i]);
    lu.solve(y);
  };
  return std::sqrt(dominant_eigenvalue(m, apply, opt).eigenvalue);
}

double norm_fd(const TridiagonalOperator& op, const PowerOptions& opt) {
  if (op.intervals > 8192) throw DomainError("norm_fd: grid larger than 8192 intervals");
  return op.size() <= 512 ? norm_fd_dense(op) : norm_fd_iterative(op, opt);
}

std::vector<cplx> eigs_quadratic(const ProblemConfig& cfg, int n, int intervals) {
  cfg.validate();
  if (n < 1) throw DomainError("mode index n must be >= 1");
  if (intervals < 4 || intervals > 400) throw DomainError("eigs_quadratic: intervals must lie in [4, 400]");
  const auto a = damping_samples(cfg, intervals);
  const auto m = Eigen::Index(a.size());
  const double inv_h2 = double(intervals) * double(intervals);
  const double np2 = (n * pi) * (n * pi);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    c(i, m + i) = 1.0;
    c(m + i, i) = -(2.0 * inv_h2 + np2);
    if (i + 1 < m) {
      c(m + i, i + 1) = inv_h2;
      c(m + i + 1, i) = inv_h2;
    }
    c(m + i, m + i) = 2.0 * a[i];
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  std::vector<cplx> z;
  for (Eigen::Index i = 0; i < 2 * m; ++i) {
    const cplx e = es.eigenvalues()(i);
    if (e.real() >= -1e-10 * std::max(1.0, std::abs(e))) z.push_back(e);
  }
  std::sort(z.begin(), z.end(), [](cplx x, cplx y) {
    return x.imag() != y.imag() ? x.imag() < y.imag() : x.real() < y.real();
  });
  return z;
}

}  // namespace stripwave
