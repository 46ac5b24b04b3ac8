#pragma once

#include <functional>
#include <span>
#include <vector>

#include "stripwave/common.hpp"

namespace stripwave {

// Uniform samples on [lo, hi], endpoints included.
class GridFunction {
 public:
  GridFunction(double lo, double hi, std::vector<cplx> values);

  static GridFunction zeros(double lo, double hi, std::size_t count);
  static GridFunction sample(double lo, double hi, std::size_t count,
                             const std::function<cplx(double)>& fn);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t count() const noexcept { return values_.size(); }
  double spacing() const noexcept { return (hi_ - lo_) / double(values_.size() - 1); }
  double node(std::size_t i) const noexcept;
  std::span<const cplx> values() const noexcept { return values_; }
  const cplx& operator[](std::size_t i) const noexcept { return values_[i]; }
  const cplx& front() const noexcept { return values_.front(); }
  const cplx& back() const noexcept { return values_.back(); }

  double max_abs() const noexcept;
  // Trapezoid L2 norm.
  double l2_norm() const noexcept;

 private:
  double lo_;
  double hi_;
  std::vector<cplx> values_;
};

}  // namespace stripwave
