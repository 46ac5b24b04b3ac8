#include "stripwave/kernels.hpp"

namespace stripwave::kernels::detail {
namespace {

void cmul_scalar(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void green_combine_scalar(const cplx* p, const cplx* q, const cplx* r, const cplx* t, cplx scale,
                          double shift, const cplx* f, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (p[i] * q[i] + r[i] * t[i]) * scale - shift * f[i];
}

void tridiag_apply_scalar(const cplx* diag, const cplx* off, const cplx* x, cplx* y,
                          std::size_t n) {
  if (n == 0) return;
  if (n == 1) {
    y[0] = diag[0] * x[0];
    return;
  }
  y[0] = diag[0] * x[0] + off[0] * x[1];
  for (std::size_t i = 1; i + 1 < n; ++i)
    y[i] = off[i - 1] * x[i - 1] + diag[i] * x[i] + off[i] * x[i + 1];
  y[n - 1] = off[n - 2] * x[n - 2] + diag[n - 1] * x[n - 1];
}

cplx cdot_scalar(const cplx* x, const cplx* y, std::size_t n) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

void caxpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void cscale_scalar(cplx alpha, cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double norm2_sq_scalar(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
  return acc;
}

double diff_norm2_sq_scalar(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) acc += std::norm(x[i + 1] - x[i]);
  return acc;
}

}  // namespace

const Table& scalar_table() noexcept {
  static const Table table{cmul_scalar,  green_combine_scalar, tridiag_apply_scalar,
                           cdot_scalar,  caxpy_scalar,         cscale_scalar,
                           norm2_sq_scalar, diff_norm2_sq_scalar};
  return table;
}

}  // namespace stripwave::kernels::detail
