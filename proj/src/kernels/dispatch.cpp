#include <atomic>

#include "stripwave/errors.hpp"
#include "stripwave/kernels.hpp"

namespace stripwave::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const detail::Table* pick_default() noexcept {
  if (cpu_has_avx2() && detail::avx2_table() != nullptr) return detail::avx2_table();
  return &detail::scalar_table();
}

std::atomic<const detail::Table*>& active() noexcept {
  static std::atomic<const detail::Table*> table{pick_default()};
  return table;
}

const detail::Table& t() noexcept { return *active().load(std::memory_order_relaxed); }

void check(std::size_t a, std::size_t b, const char* op) {
  if (a != b) throw DomainError(std::string(op) + ": length mismatch");
}

}  // namespace

bool backend_available(Backend b) noexcept {
  if (b == Backend::Scalar) return true;
  return cpu_has_avx2() && detail::avx2_table() != nullptr;
}

Backend active_backend() noexcept {
  return active().load() == &detail::scalar_table() ? Backend::Scalar : Backend::Avx2;
}

void set_backend(Backend b) {
  if (!backend_available(b)) throw DomainError("kernel backend not supported on this CPU");
  active().store(b == Backend::Scalar ? &detail::scalar_table() : detail::avx2_table());
}

std::string_view backend_name(Backend b) noexcept {
  return b == Backend::Scalar ? "scalar" : "avx2";
}

void cmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  check(a.size(), b.size(), "cmul");
  check(a.size(), out.size(), "cmul");
  t().cmul(a.data(), b.data(), out.data(), a.size());
}

void green_combine(std::span<const cplx> p, std::span<const cplx> q, std::span<const cplx> r,
                   std::span<const cplx> tt, cplx scale, double shift, std::span<const cplx> f,
                   std::span<cplx> out) {
  const std::size_t n = out.size();
  check(p.size(), n, "green_combine");
  check(q.size(), n, "green_combine");
  check(r.size(), n, "green_combine");
  check(tt.size(), n, "green_combine");
  check(f.size(), n, "green_combine");
  t().green_combine(p.data(), q.data(), r.data(), tt.data(), scale, shift, f.data(), out.data(), n);
}

void tridiag_apply(std::span<const cplx> diag, std::span<const cplx> off,
                   std::span<const cplx> x, std::span<cplx> y) {
  const std::size_t n = diag.size();
  check(x.size(), n, "tridiag_apply");
  check(y.size(), n, "tridiag_apply");
  if (n > 0) check(off.size(), n - 1, "tridiag_apply");
  t().tridiag_apply(diag.data(), off.data(), x.data(), y.data(), n);
}

cplx cdot(std::span<const cplx> x, std::span<const cplx> y) {
  check(x.size(), y.size(), "cdot");
  return t().cdot(x.data(), y.data(), x.size());
}

void caxpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  check(x.size(), y.size(), "caxpy");
  t().caxpy(alpha, x.data(), y.data(), x.size());
}

void cscale(cplx alpha, std::span<cplx> x) { t().cscale(alpha, x.data(), x.size()); }

double norm2_sq(std::span<const cplx> x) { return t().norm2_sq(x.data(), x.size()); }

double diff_norm2_sq(std::span<const cplx> x) { return t().diff_norm2_sq(x.data(), x.size()); }

}  // namespace stripwave::kernels
