#include "stripwave/wavefunctions.hpp"

#include <algorithm>

namespace stripwave::wave {

cplx sinc(cplx z) noexcept {
  if (std::abs(z) < 1e-4) {
    const cplx z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

Pair propagate(cplx kk, Pair at, double t) noexcept {
  const cplx c = std::cos(kk * t);
  const cplx sn = t * sinc(kk * t);
  return {at.value * c + at.deriv * sn, -kk * kk * sn * at.value + at.deriv * c};
}

Pair v0(cplx kprime, double x) noexcept { return {x * sinc(kprime * x), std::cos(kprime * x)}; }

Pair w0(cplx k, double x) noexcept {
  const double r = 1.0 - x;
  return {r * sinc(k * r), -std::cos(k * r)};
}

Pair phi_left(cplx k, cplx kprime, double sigma, double x) noexcept {
  if (x <= sigma) return v0(kprime, x);
  return propagate(k, v0(kprime, sigma), x - sigma);
}

Pair phi_right(cplx k, cplx kprime, double sigma, double x) noexcept {
  if (x >= sigma) return w0(k, x);
  return propagate(kprime, w0(k, sigma), x - sigma);
}

cplx det_closed(cplx k, cplx kprime, double sigma) noexcept {
  const double r = 1.0 - sigma;
  return sigma * sinc(kprime * sigma) * std::cos(k * r) + r * std::cos(kprime * sigma) * sinc(k * r);
}

double det_scale(cplx k, cplx kprime, double sigma) noexcept {
  // Envelopes of cos and sinc, so the scale does not vanish with the terms.
  const double r = 1.0 - sigma;
  auto env_cos = [](cplx z) { return std::cosh(z.imag()); };
  auto env_sinc = [](cplx z) { return std::cosh(z.imag()) / std::max(1.0, std::abs(z)); };
  return sigma * env_sinc(kprime * sigma) * env_cos(k * r) + r * env_cos(kprime * sigma) * env_sinc(k * r);
}

}  // namespace stripwave::wave
