#pragma once

#include <complex>
#include <numbers>

namespace stripwave {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

}  // namespace stripwave
