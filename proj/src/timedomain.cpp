#include "stripwave/timedomain.hpp"

#include <cmath>

#include "stripwave/errors.hpp"
#include "stripwave/fd_oracle.hpp"
#include "stripwave/kernels.hpp"
#include "stripwave/parallel.hpp"
#include "stripwave/wavefunctions.hpp"

namespace stripwave {

ModalState make_state(int n, GridFunction u, GridFunction v, double t) {
  if (n < 1) throw DomainError("mode index n must be >= 1");
  if (u.count() != v.count() || u.lo() != v.lo() || u.hi() != v.hi())
    throw DomainError("displacement and velocity must share a grid");
  if (u.lo() != 0.0 || u.hi() != 1.0) throw DomainError("modal states live on [0, 1]");
  if (u.front() != cplx(0.0) || u.back() != cplx(0.0) || v.front() != cplx(0.0) || v.back() != cplx(0.0))
    throw DomainError("modal states need zero Dirichlet ends");
  return {n, std::move(u), std::move(v), t};
}

namespace {

TridiagonalLU make_lhs(const std::vector<double>& a, int n, int intervals, double dt) {
  const double inv_h2 = double(intervals) * double(intervals);
  const double np2 = (n * pi) * (n * pi);
  const double q = 0.25 * dt * dt;
  std::vector<cplx> diag(a.size()), off(a.empty() ? 0 : a.size() - 1, cplx(-q * inv_h2));
  for (std::size_t i = 0; i < a.size(); ++i) diag[i] = 1.0 + q * (2.0 * inv_h2 + np2) + dt * a[i];
  return TridiagonalLU(off, diag, off);
}

}  // namespace

ModeStepper::ModeStepper(const ProblemConfig& cfg, int n, int intervals, double dt)
    : n_(n), intervals_(intervals), dt_(dt),
      lhs_(make_lhs(damping_samples(cfg, intervals), n, intervals, dt)) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  if (n < 1) throw DomainError("mode index n must be >= 1");
  const auto a = damping_samples(cfg, intervals);
  const double inv_h2 = double(intervals) * double(intervals);
  const double np2 = (n * pi) * (n * pi);
  const double q = 0.25 * dt * dt;
  const std::size_t m = a.size();
  k_diag_.assign(m, cplx(2.0 * inv_h2 + np2));
  k_off_.assign(m > 0 ? m - 1 : 0, cplx(-inv_h2));
  rhs_diag_.resize(m);
  rhs_off_.assign(k_off_.size(), cplx(q * inv_h2));
  for (std::size_t i = 0; i < m; ++i) rhs_diag_[i] = 1.0 - q * (2.0 * inv_h2 + np2) - dt * a[i];
}

ModalState ModeStepper::step(const ModalState& state) const {
  if (state.n != n_ || int(state.u.count()) != intervals_ + 1)
    throw DomainError("state does not match the stepper's mode or grid");
  const std::size_t m = std::size_t(intervals_) - 1;
  const auto u0 = state.u.values().subspan(1, m);
  const auto v0 = state.v.values().subspan(1, m);

  std::vector<cplx> rhs(m), ku(m);
  kernels::tridiag_apply(rhs_diag_, rhs_off_, v0, rhs);
  kernels::tridiag_apply(k_diag_, k_off_, u0, ku);
  kernels::caxpy(-dt_, ku, rhs);
  lhs_.solve(rhs);

  std::vector<cplx> u(m + 2), v(m + 2);
  for (std::size_t i = 0; i < m; ++i) {
    v[i + 1] = rhs[i];
    u[i + 1] = u0[i] + 0.5 * dt_ * (v0[i] + rhs[i]);
  }
  return {n_, GridFunction(0.0, 1.0, std::move(u)), GridFunction(0.0, 1.0, std::move(v)), state.t + dt_};
}

ModalState step(const ProblemConfig& cfg, const ModalState& state, double dt) {
  return ModeStepper(cfg, state.n, int(state.u.count()) - 1, dt).step(state);
}

double mode_energy(const ModalState& s) {
  const double h = s.u.spacing();
  const double np2 = (s.n * pi) * (s.n * pi);
  // Ends are zero, so the trapezoid sums reduce to plain sums.
  const double grad = kernels::diff_norm2_sq(s.u.values()) / h;
  const double mass = h * kernels::norm2_sq(s.u.values());
  const double kin = h * kernels::norm2_sq(s.v.values());
  return 0.5 * (grad + np2 * mass + kin);
}

double energy(const ProblemConfig& cfg, std::span<const ModalState> states) {
  cfg.validate();
  double e = 0.0;
  for (const auto& s : states) e += mode_energy(s);
  return e;
}

EnergyTrace simulate(const ProblemConfig& cfg, const std::vector<ModalState>& initial, double T, double dt,
                     unsigned threads) {
  cfg.validate();
  if (!(T > 0.0) || !(dt > 0.0) || dt > T) throw DomainError("simulate: needs 0 < dt <= T");
  if (initial.empty()) throw DomainError("simulate: no modes");
  const long steps = long(std::ceil(T / dt - 1e-9));
  const double h = T / double(steps);

  // Each mode is integrated on its own; the per-step energies are summed in
  // mode order afterwards so the trace does not depend on the thread count.
  std::vector<std::vector<double>> per_mode(initial.size(), std::vector<double>(std::size_t(steps) + 1));
  parallel_for(initial.size(), threads, [&](std::size_t i) {
    const ModeStepper stepper(cfg, initial[i].n, int(initial[i].u.count()) - 1, h);
    ModalState s = initial[i];
    per_mode[i][0] = mode_energy(s);
    for (long j = 1; j <= steps; ++j) {
      s = stepper.step(s);
      per_mode[i][std::size_t(j)] = mode_energy(s);
    }
  });

  EnergyTrace trace;
  trace.times.resize(std::size_t(steps) + 1);
  trace.energies.assign(std::size_t(steps) + 1, 0.0);
  for (long j = 0; j <= steps; ++j) {
    trace.times[std::size_t(j)] = initial.front().t + h * double(j);
    for (const auto& e : per_mode) trace.energies[std::size_t(j)] += e[std::size_t(j)];
  }
  const double slack = 1e-12 * trace.energies.front();
  for (std::size_t j = 1; j < trace.energies.size(); ++j)
    if (trace.energies[j] > trace.energies[j - 1] + slack)
      throw NumericalError("discrete energy increased at step " + std::to_string(j));
  return trace;
}

ModalState quasimode_state(const ProblemConfig& cfg, const SpectrumRecord& rec, int intervals) {
  cfg.validate();
  const int js = sigma_node(cfg.sigma, intervals);
  const double np = rec.n * pi;
  const cplx s = rec.s_root;
  const cplx k = std::sqrt((s - np) * (s + np));
  const cplx kp = std::sqrt((s - np) * (s + np) - cplx(0.0, 2.0 * cfg.a0) * s);
  std::vector<cplx> u(std::size_t(intervals) + 1);
  for (int j = 1; j < intervals; ++j) {
    const double x = j == js ? cfg.sigma : double(j) / intervals;
    u[j] = wave::phi_left(k, kp, cfg.sigma, x).value;
  }
  double peak = 0.0;
  for (const auto& x : u) peak = std::max(peak, std::abs(x));
  if (!(peak > 0.0)) throw NumericalError("quasimode_state: eigenfunction vanishes on the grid");
  std::vector<cplx> v(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    u[j] /= peak;
    v[j] = -rec.z * u[j];
  }
  return make_state(rec.n, GridFunction(0.0, 1.0, std::move(u)), GridFunction(0.0, 1.0, std::move(v)));
}

double fit_decay_rate(const EnergyTrace& trace, double t_max) {
  double mx = 0.0, my = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    if (trace.times[i] > t_max) break;
    mx += trace.times[i];
    my += std::log(trace.energies[i]);
    ++m;
  }
  if (m < 2) throw DomainError("fit_decay_rate: fewer than 2 samples in the window");
  mx /= double(m);
  my /= double(m);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = trace.times[i] - mx;
    sxy += dx * (std::log(trace.energies[i]) - my);
    sxx += dx * dx;
  }
  return -sxy / sxx;
}

}  // namespace stripwave
