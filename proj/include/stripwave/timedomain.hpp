#pragma once

// Per-mode damped wave equation u_tt - u_xx + (n pi)^2 u + 2 a(x) u_t = 0 on
// the FD grid of fd_oracle, advanced by the implicit midpoint rule.

#include <span>
#include <vector>

#include "stripwave/config.hpp"
#include "stripwave/grid.hpp"
#include "stripwave/linalg.hpp"
#include "stripwave/spectrum.hpp"

namespace stripwave {

struct ModalState {
  int n = 1;
  GridFunction u;
  GridFunction v;
  double t = 0.0;
};

ModalState make_state(int n, GridFunction u, GridFunction v, double t = 0.0);

struct EnergyTrace {
  std::vector<double> times;
  std::vector<double> energies;
};

// Factored midpoint step for one (n, grid, dt):
//   (I + dt^2/4 K + dt A) v1 = (I - dt^2/4 K - dt A) v0 - dt K u0
//   u1 = u0 + dt/2 (v0 + v1)
// with K = -D2 + (n pi)^2. The discrete energy obeys
//   E1 - E0 = -2 dt h sum a |(v0 + v1)/2|^2 <= 0.
class ModeStepper {
 public:
  ModeStepper(const ProblemConfig& cfg, int n, int intervals, double dt);

  int n() const noexcept { return n_; }
  double dt() const noexcept { return dt_; }
  ModalState step(const ModalState& state) const;

 private:
  int n_;
  int intervals_;
  double dt_;
  std::vector<cplx> k_diag_, k_off_;      // K
  std::vector<cplx> rhs_diag_, rhs_off_;  // I - dt^2/4 K - dt A
  TridiagonalLU lhs_;
};

ModalState step(const ProblemConfig& cfg, const ModalState& state, double dt);

// 1/2 sum_n [ h sum_cells |du/h|^2 + (n pi)^2 h sum |u|^2 + h sum |v|^2 ].
double energy(const ProblemConfig& cfg, std::span<const ModalState> states);
double mode_energy(const ModalState& state);

// Steps every mode to T (dt shortened so that T is hit exactly) and records
// the total energy after each step. Throws NumericalError if the energy ever
// increases beyond rounding.
EnergyTrace simulate(const ProblemConfig& cfg, const std::vector<ModalState>& initial, double T, double dt,
                     unsigned threads = 1);

// Eigenfunction of the root as initial data: phi_L on the grid, scaled to
// unit max, velocity -z u.
ModalState quasimode_state(const ProblemConfig& cfg, const SpectrumRecord& rec, int intervals);

// -slope of log E against t for samples with t <= t_max.
double fit_decay_rate(const EnergyTrace& trace, double t_max);

}  // namespace stripwave
