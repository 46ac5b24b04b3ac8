#pragma once

// Brute-force second-order finite differences for the mode problem and the
// damped-wave generator. Kept independent of the modal solver so the two can
// check each other.
//
// Grid convention: `intervals` = N cells of width 1/N on [0,1], N-1 interior
// unknowns, sigma on node sigma*N. The damping at that node is a0/2.

#include <span>
#include <vector>

#include "stripwave/common.hpp"
#include "stripwave/config.hpp"
#include "stripwave/grid.hpp"
#include "stripwave/linalg.hpp"

namespace stripwave {

struct TridiagonalOperator {
  int intervals = 0;
  double spacing = 0.0;
  int sigma_row = -1;  // interior row sitting on x = sigma
  std::vector<cplx> diag;
  std::vector<cplx> off;

  std::size_t size() const noexcept { return diag.size(); }
  std::vector<cplx> apply(std::span<const cplx> x) const;
  TridiagonalOperator scaled(cplx factor) const;
  // Conjugate transpose; the stencil is complex symmetric so this is conj().
  TridiagonalOperator adjoint() const;
};

// Damping samples at interior nodes: a0 left of sigma, a0/2 on it, 0 right.
std::vector<double> damping_samples(const ProblemConfig& cfg, int intervals);

// -D2 - k^2 + 2 i s a(x). Requires intervals >= 16.
TridiagonalOperator build_pn_matrix(const ProblemConfig& cfg, double s, int n, int intervals);
// Same stencil without the size floor, for residual diagnostics on coarse grids.
TridiagonalOperator assemble_pn(const ProblemConfig& cfg, double s, int n, int intervals);

std::vector<cplx> solve_fd(const TridiagonalOperator& op, std::span<const cplx> f);
// f on the nodes of [0,1]; returns u on the same nodes with zero ends.
GridFunction solve_fd(const TridiagonalOperator& op, const GridFunction& f);

// ||op u - f|| / ||f|| over interior rows, optionally skipping the sigma row.
double relative_residual(const TridiagonalOperator& op, std::span<const cplx> u,
                         std::span<const cplx> f, bool skip_sigma_row);

// 1 / sigma_min(op). Dense SVD up to 512 unknowns, inverse iteration on
// (op* op)^{-1} with tridiagonal solves above.
double norm_fd(const TridiagonalOperator& op, const PowerOptions& opt = {});
double norm_fd_dense(const TridiagonalOperator& op);
double norm_fd_iterative(const TridiagonalOperator& op, const PowerOptions& opt = {});

// Eigenvalues z of z^2 - 2 a z + (-D2 + (n pi)^2) = 0 with Re z >= 0, i.e. the
// spectrum of the generator of e^{-tA}. Dense; intervals <= 400.
std::vector<cplx> eigs_quadratic(const ProblemConfig& cfg, int n, int intervals);

}  // namespace stripwave
