#pragma once

// Data-parallel complex kernels used by the resolvent, FD and energy code.
// Each op has a scalar reference and an AVX2/FMA variant; the variant is
// picked once from CPUID and can be pinned for testing.

#include <span>
#include <string_view>

#include "stripwave/common.hpp"

namespace stripwave::kernels {

enum class Backend { Scalar, Avx2 };

bool backend_available(Backend b) noexcept;
Backend active_backend() noexcept;
// Throws DomainError when the CPU lacks the requested instruction set.
void set_backend(Backend b);
std::string_view backend_name(Backend b) noexcept;

// out[i] = a[i] * b[i]
void cmul(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);

// out[i] = (p[i] q[i] + r[i] t[i]) * scale - shift * f[i]
void green_combine(std::span<const cplx> p, std::span<const cplx> q, std::span<const cplx> r,
                   std::span<const cplx> t, cplx scale, double shift, std::span<const cplx> f,
                   std::span<cplx> out);

// y = T x for the symmetric tridiagonal T = tridiag(off, diag, off).
void tridiag_apply(std::span<const cplx> diag, std::span<const cplx> off,
                   std::span<const cplx> x, std::span<cplx> y);

// sum conj(x[i]) y[i]
cplx cdot(std::span<const cplx> x, std::span<const cplx> y);

// y += alpha x
void caxpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);

// x *= alpha
void cscale(cplx alpha, std::span<cplx> x);

// sum |x[i]|^2
double norm2_sq(std::span<const cplx> x);

// sum |x[i+1] - x[i]|^2
double diff_norm2_sq(std::span<const cplx> x);

namespace detail {

struct Table {
  void (*cmul)(const cplx*, const cplx*, cplx*, std::size_t);
  void (*green_combine)(const cplx*, const cplx*, const cplx*, const cplx*, cplx, double,
                        const cplx*, cplx*, std::size_t);
  void (*tridiag_apply)(const cplx*, const cplx*, const cplx*, cplx*, std::size_t);
  cplx (*cdot)(const cplx*, const cplx*, std::size_t);
  void (*caxpy)(cplx, const cplx*, cplx*, std::size_t);
  void (*cscale)(cplx, cplx*, std::size_t);
  double (*norm2_sq)(const cplx*, std::size_t);
  double (*diff_norm2_sq)(const cplx*, std::size_t);
};

const Table& scalar_table() noexcept;
// nullptr when not compiled for x86.
const Table* avx2_table() noexcept;

}  // namespace detail

}  // namespace stripwave::kernels
