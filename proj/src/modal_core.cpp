#include "stripwave/modal_core.hpp"

#include <cmath>

#include "stripwave/errors.hpp"
#include "stripwave/fd_oracle.hpp"
#include "stripwave/kernels.hpp"
#include "stripwave/wavefunctions.hpp"

namespace stripwave {
namespace {

constexpr double kNodeTol = 1e-12;

void require_piece(const GridFunction& g, double lo, double hi, const char* what) {
  if (std::abs(g.lo() - lo) > kNodeTol || std::abs(g.hi() - hi) > kNodeTol)
    throw DomainError(std::string(what) + ": grid function is on the wrong interval");
}

void require_in(double x, double lo, double hi, const char* what) {
  if (!(x >= lo - kNodeTol && x <= hi + kNodeTol)) throw DomainError(std::string(what) + ": x outside its piece");
}

}  // namespace

ModeContext make_mode_context(const ProblemConfig& cfg, double s, int n) {
  cfg.validate();
  if (n < 1) throw DomainError("mode index n must be >= 1");
  if (s == 0.0 || !std::isfinite(s)) throw DomainError("frequency s must be finite and nonzero");
  ModeContext ctx;
  ctx.s = s;
  ctx.n = n;
  ctx.a0 = cfg.a0;
  ctx.sigma = cfg.sigma;
  const double np = n * pi;
  ctx.k2 = (s - np) * (s + np);
  ctx.forbidden = ctx.k2 <= cfg.c0;
  ctx.k = ctx.k2 >= 0.0 ? cplx(std::sqrt(ctx.k2), 0.0) : cplx(0.0, std::sqrt(-ctx.k2));
  ctx.kprime2 = cplx(ctx.k2, -2.0 * s * cfg.a0);
  ctx.kprime = cfg.a0 == 0.0 ? ctx.k : std::sqrt(ctx.kprime2);
  return ctx;
}

ModeContext flip_branch(const ModeContext& ctx) {
  ModeContext out = ctx;
  out.kprime = -ctx.kprime;
  return out;
}

cplx eval_v0(const ModeContext& ctx, double x) {
  require_in(x, 0.0, ctx.sigma, "eval_v0");
  return wave::v0(ctx.kprime, x).value;
}

cplx eval_v0_deriv(const ModeContext& ctx, double x) {
  require_in(x, 0.0, ctx.sigma, "eval_v0_deriv");
  return wave::v0(ctx.kprime, x).deriv;
}

cplx eval_w0(const ModeContext& ctx, double x) {
  require_in(x, ctx.sigma, 1.0, "eval_w0");
  return wave::w0(ctx.k, x).value;
}

cplx eval_w0_deriv(const ModeContext& ctx, double x) {
  require_in(x, ctx.sigma, 1.0, "eval_w0_deriv");
  return wave::w0(ctx.k, x).deriv;
}

// Both Duhamel integrals are carried node to node with the exact propagator of
// the homogeneous equation; the half-weight of the newest node is added last.
// The result equals the composite trapezoid sum at every node.
DuhamelResult duhamel_vg(const ModeContext& ctx, const GridFunction& g) {
  require_piece(g, 0.0, ctx.sigma, "duhamel_vg");
  const std::size_t count = g.count();
  const double h = g.spacing();
  std::vector<cplx> val(count), der(count);
  wave::Pair state{0.0, 0.0};
  for (std::size_t j = 0; j + 1 < count; ++j) {
    const double w = j == 0 ? 0.5 * h : h;
    state.deriv -= w * g[j];
    state = wave::propagate(ctx.kprime, state, h);
    val[j + 1] = state.value;
    der[j + 1] = state.deriv - 0.5 * h * g[j + 1];
  }
  return {GridFunction(g.lo(), g.hi(), std::move(val)), GridFunction(g.lo(), g.hi(), std::move(der))};
}

DuhamelResult duhamel_wh(const ModeContext& ctx, const GridFunction& hf) {
  require_piece(hf, ctx.sigma, 1.0, "duhamel_wh");
  const std::size_t count = hf.count();
  const double h = hf.spacing();
  std::vector<cplx> val(count), der(count);
  wave::Pair state{0.0, 0.0};
  for (std::size_t j = count - 1; j > 0; --j) {
    const double w = j == count - 1 ? 0.5 * h : h;
    state.deriv += w * hf[j];
    state = wave::propagate(ctx.k, state, -h);
    val[j - 1] = state.value;
    der[j - 1] = state.deriv + 0.5 * h * hf[j - 1];
  }
  return {GridFunction(hf.lo(), hf.hi(), std::move(val)), GridFunction(hf.lo(), hf.hi(), std::move(der))};
}

MatchingSystem matching_matrix(const ModeContext& ctx) {
  const auto v = wave::v0(ctx.kprime, ctx.sigma);
  const auto w = wave::w0(ctx.k, ctx.sigma);
  MatchingSystem ms;
  ms.m = {{{v.value, -w.value}, {v.deriv, -w.deriv}}};
  ms.det = ms.m[0][0] * ms.m[1][1] - ms.m[0][1] * ms.m[1][0];
  ms.det_closed = wave::det_closed(ctx.k, ctx.kprime, ctx.sigma);
  return ms;
}

namespace {

struct SigmaData {
  cplx vg, vgd, wh, whd;
};

SigmaData sigma_data(const ModeContext& ctx, const GridFunction& vg, const GridFunction& vg_deriv,
                     const GridFunction& wh, const GridFunction& wh_deriv) {
  require_piece(vg, 0.0, ctx.sigma, "solve_coefficients(vg)");
  require_piece(vg_deriv, 0.0, ctx.sigma, "solve_coefficients(vg')");
  require_piece(wh, ctx.sigma, 1.0, "solve_coefficients(wh)");
  require_piece(wh_deriv, ctx.sigma, 1.0, "solve_coefficients(wh')");
  return {vg.back(), vg_deriv.back(), wh.front(), wh_deriv.front()};
}

void check_singular(const MatchingSystem& ms) {
  // Columns can differ by exponential factors, so compare against the two
  // products that make up det rather than the largest entry squared.
  const double scale = std::abs(ms.m[0][0] * ms.m[1][1]) + std::abs(ms.m[0][1] * ms.m[1][0]);
  if (!(std::abs(ms.det) > 1e-14 * scale))
    throw SingularSystemError("matching matrix is singular (det M = 0)");
}

}  // namespace

Coefficients solve_coefficients(const ModeContext& ctx, const GridFunction& vg,
                                const GridFunction& vg_deriv, const GridFunction& wh,
                                const GridFunction& wh_deriv) {
  const auto d = sigma_data(ctx, vg, vg_deriv, wh, wh_deriv);
  const auto ms = matching_matrix(ctx);
  check_singular(ms);
  auto a = ms.m;
  std::array<cplx, 2> b{d.wh - d.vg, d.whd - d.vgd};
  if (std::abs(a[1][0]) > std::abs(a[0][0])) {
    std::swap(a[0], a[1]);
    std::swap(b[0], b[1]);
  }
  const cplx l = a[1][0] / a[0][0];
  const cplx u11 = a[1][1] - l * a[0][1];
  const cplx beta = (b[1] - l * b[0]) / u11;
  const cplx alpha = (b[0] - a[0][1] * beta) / a[0][0];
  return {alpha, beta};
}

Coefficients cramer_coefficients(const ModeContext& ctx, const GridFunction& vg,
                                 const GridFunction& vg_deriv, const GridFunction& wh,
                                 const GridFunction& wh_deriv) {
  const auto d = sigma_data(ctx, vg, vg_deriv, wh, wh_deriv);
  const auto ms = matching_matrix(ctx);
  check_singular(ms);
  const auto v = wave::v0(ctx.kprime, ctx.sigma);
  const auto w = wave::w0(ctx.k, ctx.sigma);
  const cplx dv = d.vg - d.wh;
  const cplx dd = d.vgd - d.whd;
  return {(w.deriv * dv - w.value * dd) / ms.det, (v.deriv * dv - v.value * dd) / ms.det};
}

ModeResolvent::ModeResolvent(const ModeContext& ctx, int intervals, Quadrature quadrature)
    : ctx_(ctx), intervals_(intervals) {
  if (intervals < 2) throw DomainError("ModeResolvent: need at least 2 intervals");
  const int js = sigma_node(ctx.sigma, intervals);
  h_ = 1.0 / intervals;
  shift_ = quadrature == Quadrature::CorrectedTrapezoid ? h_ * h_ / 12.0 : 0.0;
  const auto ms = matching_matrix(ctx);
  check_singular(ms);
  det_ = ms.det;
  inv_det_ = 1.0 / det_;
  phi_l_.resize(std::size_t(intervals) + 1);
  phi_r_.resize(std::size_t(intervals) + 1);
  for (int j = 0; j <= intervals; ++j) {
    const double x = j == js ? ctx.sigma : double(j) * h_;
    phi_l_[j] = wave::phi_left(ctx.k, ctx.kprime, ctx.sigma, x).value;
    phi_r_[j] = wave::phi_right(ctx.k, ctx.kprime, ctx.sigma, x).value;
  }
}

void ModeResolvent::apply(std::span<const cplx> f, std::span<cplx> u) const {
  const std::size_t count = phi_l_.size();
  if (f.size() != count || u.size() != count) throw DomainError("ModeResolvent::apply: length mismatch");
  std::vector<cplx> left(count), right(count);
  kernels::cmul(phi_l_, f, left);
  kernels::cmul(phi_r_, f, right);
  const double half = 0.5 * h_;

  // left[j] <- int_0^{x_j} phi_L f, right[j] <- int_{x_j}^1 phi_R f.
  // The corrected rule also carries the endpoint terms of the Euler-Maclaurin
  // expansion; with phi_R(0) = phi_L(1) = det they reduce to constant offsets.
  cplx prev = left[0];
  left[0] = shift_ * f[0];
  for (std::size_t j = 1; j < count; ++j) {
    const cplx cur = left[j];
    left[j] = left[j - 1] + half * (prev + cur);
    prev = cur;
  }
  prev = right[count - 1];
  right[count - 1] = shift_ * f[count - 1];
  for (std::size_t j = count - 1; j-- > 0;) {
    const cplx cur = right[j];
    right[j] = right[j + 1] + half * (prev + cur);
    prev = cur;
  }
  kernels::green_combine(phi_r_, left, phi_l_, right, inv_det_, shift_, f, u);
  u[0] = 0.0;
  u[count - 1] = 0.0;
}

ModeSolution solve_mode(const ProblemConfig& cfg, double s, int n, const GridFunction& f) {
  return solve_mode(cfg, make_mode_context(cfg, s, n), f);
}

ModeSolution solve_mode(const ProblemConfig& cfg, const ModeContext& ctx, const GridFunction& f) {
  require_piece(f, 0.0, 1.0, "solve_mode");
  const int intervals = int(f.count()) - 1;
  const int js = sigma_node(ctx.sigma, intervals);
  if (js == 0 || js == intervals) throw ConfigError("solve_mode: grid too coarse to resolve the strip");
  const auto vals = f.values();

  const GridFunction g(0.0, ctx.sigma, std::vector<cplx>(vals.begin(), vals.begin() + js + 1));
  const GridFunction hf(ctx.sigma, 1.0, std::vector<cplx>(vals.begin() + js, vals.end()));
  const auto vg = duhamel_vg(ctx, g);
  const auto wh = duhamel_wh(ctx, hf);
  const auto coef = solve_coefficients(ctx, vg.value, vg.deriv, wh.value, wh.deriv);

  const auto v = wave::v0(ctx.kprime, ctx.sigma);
  const auto w = wave::w0(ctx.k, ctx.sigma);
  const double gap = std::max(
      std::abs(coef.alpha * v.value + vg.value.back() - coef.beta * w.value - wh.value.front()),
      std::abs(coef.alpha * v.deriv + vg.deriv.back() - coef.beta * w.deriv - wh.deriv.front()));

  const ModeResolvent resolvent(ctx, intervals, cfg.quadrature);
  std::vector<cplx> u(f.count());
  resolvent.apply(vals, u);

  const auto op = assemble_pn(cfg, ctx.s, ctx.n, intervals);
  const double residual = relative_residual(op, std::span<const cplx>(u).subspan(1, intervals - 1),
                                            vals.subspan(1, intervals - 1), true);

  return {coef.alpha,
          coef.beta,
          GridFunction(0.0, ctx.sigma, std::vector<cplx>(u.begin(), u.begin() + js + 1)),
          GridFunction(ctx.sigma, 1.0, std::vector<cplx>(u.begin() + js, u.end())),
          residual,
          gap};
}

}  // namespace stripwave
