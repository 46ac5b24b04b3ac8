#include "stripwave/grid.hpp"

#include <cmath>

#include "stripwave/errors.hpp"
#include "stripwave/kernels.hpp"

namespace stripwave {

GridFunction::GridFunction(double lo, double hi, std::vector<cplx> values)
    : lo_(lo), hi_(hi), values_(std::move(values)) {
  if (values_.size() < 2) throw DomainError("GridFunction needs at least 2 nodes");
  if (!(hi_ > lo_)) throw DomainError("GridFunction needs hi > lo");
}

GridFunction GridFunction::zeros(double lo, double hi, std::size_t count) {
  return GridFunction(lo, hi, std::vector<cplx>(count));
}

GridFunction GridFunction::sample(double lo, double hi, std::size_t count,
                                  const std::function<cplx(double)>& fn) {
  if (count < 2) throw DomainError("GridFunction needs at least 2 nodes");
  std::vector<cplx> v(count);
  const double h = (hi - lo) / double(count - 1);
  for (std::size_t i = 0; i < count; ++i) v[i] = fn(i + 1 == count ? hi : lo + double(i) * h);
  return GridFunction(lo, hi, std::move(v));
}

double GridFunction::node(std::size_t i) const noexcept {
  if (i + 1 == values_.size()) return hi_;
  return lo_ + double(i) * spacing();
}

double GridFunction::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : values_) m = std::max(m, std::abs(z));
  return m;
}

double GridFunction::l2_norm() const noexcept {
  const double ends = 0.5 * (std::norm(values_.front()) + std::norm(values_.back()));
  return std::sqrt(spacing() * (kernels::norm2_sq(values_) - ends));
}

}  // namespace stripwave
