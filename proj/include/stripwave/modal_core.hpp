#pragma once

#include <array>
#include <span>
#include <vector>

#include "stripwave/common.hpp"
#include "stripwave/config.hpp"
#include "stripwave/grid.hpp"

namespace stripwave {

struct ModeContext {
  double s = 0.0;
  int n = 0;
  double k2 = 0.0;   // s^2 - (n pi)^2
  cplx k;            // positive real, or i|k| in the forbidden band
  cplx kprime2;      // k^2 - 2 i s a0
  cplx kprime;       // Im k' < 0 for s > 0
  bool forbidden = false;
  double a0 = 0.0;
  double sigma = 0.5;
};

ModeContext make_mode_context(const ProblemConfig& cfg, double s, int n);
// Same context with k' -> -k'. Every modal quantity must be unchanged.
ModeContext flip_branch(const ModeContext& ctx);

cplx eval_v0(const ModeContext& ctx, double x);
cplx eval_v0_deriv(const ModeContext& ctx, double x);
cplx eval_w0(const ModeContext& ctx, double x);
cplx eval_w0_deriv(const ModeContext& ctx, double x);

struct DuhamelResult {
  GridFunction value;
  GridFunction deriv;
};

// Composite trapezoid at the nodes of g (on [0, sigma]) resp. h (on [sigma, 1]).
DuhamelResult duhamel_vg(const ModeContext& ctx, const GridFunction& g);
DuhamelResult duhamel_wh(const ModeContext& ctx, const GridFunction& h);

struct MatchingSystem {
  std::array<std::array<cplx, 2>, 2> m;  // [[v0, -w0], [v0', -w0']] at sigma
  cplx det;                              // m00 m11 - m01 m10
  cplx det_closed;
};

MatchingSystem matching_matrix(const ModeContext& ctx);

struct Coefficients {
  cplx alpha;
  cplx beta;
};

// Direct 2x2 solve of M (alpha, beta) = (wh - vg, wh' - vg') at sigma.
Coefficients solve_coefficients(const ModeContext& ctx, const GridFunction& vg,
                                const GridFunction& vg_deriv, const GridFunction& wh,
                                const GridFunction& wh_deriv);
// Cramer's rule, used only as a cross-check of the direct solve.
Coefficients cramer_coefficients(const ModeContext& ctx, const GridFunction& vg,
                                 const GridFunction& vg_deriv, const GridFunction& wh,
                                 const GridFunction& wh_deriv);

struct ModeSolution {
  cplx alpha;
  cplx beta;
  GridFunction u_left;   // [0, sigma]
  GridFunction u_right;  // [sigma, 1]
  double residual_l2;
  double continuity_gap;
};

ModeSolution solve_mode(const ProblemConfig& cfg, double s, int n, const GridFunction& f);
ModeSolution solve_mode(const ProblemConfig& cfg, const ModeContext& ctx, const GridFunction& f);

// P_n(s)^{-1} on a uniform grid of [0,1] with sigma on a node, in Green's
// function form u = [phi_R * int_0^x phi_L f + phi_L * int_x^1 phi_R f] / det M.
// Same trapezoid weights as the alpha v0 + vg assembly, but without the
// cancellation that assembly suffers when |Im k| is large.
class ModeResolvent {
 public:
  ModeResolvent(const ModeContext& ctx, int intervals, Quadrature quadrature);

  int intervals() const noexcept { return intervals_; }
  const ModeContext& context() const noexcept { return ctx_; }
  cplx det() const noexcept { return det_; }

  // f and u hold the N+1 nodes of [0,1]; u[0] = u[N] = 0 on return.
  void apply(std::span<const cplx> f, std::span<cplx> u) const;

 private:
  ModeContext ctx_;
  int intervals_;
  double h_;
  double shift_;
  cplx det_;
  cplx inv_det_;
  std::vector<cplx> phi_l_;
  std::vector<cplx> phi_r_;
};

}  // namespace stripwave
