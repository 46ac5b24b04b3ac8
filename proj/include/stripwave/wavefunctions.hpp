#pragma once

// Homogeneous solutions of -u'' - kk^2 u = 0 on the two pieces, written with
// sinc/cos so that every value is even in the wavenumber. Wavenumbers may be
// complex (forbidden band, complex frequencies in root finding).

#include "stripwave/common.hpp"

namespace stripwave::wave {

struct Pair {
  cplx value;
  cplx deriv;
};

// sin(z)/z, Taylor series below |z| = 1e-4.
cplx sinc(cplx z) noexcept;

// Continue the solution with data `at` by a distance t.
Pair propagate(cplx kk, Pair at, double t) noexcept;

// v0 = sin(k'x)/k' and w0 = sin(k(1-x))/k with derivatives.
Pair v0(cplx kprime, double x) noexcept;
Pair w0(cplx k, double x) noexcept;

// v0 extended past sigma by the undamped equation, and w0 extended below sigma
// by the damped one. Both are global solutions of the mode equation.
Pair phi_left(cplx k, cplx kprime, double sigma, double x) noexcept;
Pair phi_right(cplx k, cplx kprime, double sigma, double x) noexcept;

// v0'(s)w0(s) - v0(s)w0'(s) at s = sigma, in closed form.
cplx det_closed(cplx k, cplx kprime, double sigma) noexcept;
// Sum of the magnitudes of the two terms of det_closed.
double det_scale(cplx k, cplx kprime, double sigma) noexcept;

}  // namespace stripwave::wave
