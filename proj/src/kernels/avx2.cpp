#include "stripwave/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define STRIPWAVE_HAVE_AVX2 1
#include <immintrin.h>
#endif

namespace stripwave::kernels::detail {

#ifdef STRIPWAVE_HAVE_AVX2
namespace {

// One __m256d holds two interleaved complex doubles: [re0 im0 re1 im1].

#define SW_AVX2 __attribute__((target("avx2,fma")))

SW_AVX2 inline __m256d load2(const cplx* p) {
  return _mm256_loadu_pd(reinterpret_cast<const double*>(p));
}

SW_AVX2 inline void store2(cplx* p, __m256d v) {
  _mm256_storeu_pd(reinterpret_cast<double*>(p), v);
}

SW_AVX2 inline __m256d cmul2(__m256d a, __m256d b) {
  __m256d br = _mm256_movedup_pd(b);         // [br0 br0 br1 br1]
  __m256d bi = _mm256_permute_pd(b, 0xF);    // [bi0 bi0 bi1 bi1]
  __m256d as = _mm256_permute_pd(a, 0x5);    // [ai0 ar0 ai1 ar1]
  return _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(as, bi));
}

SW_AVX2 inline __m256d splat(cplx z) { return _mm256_setr_pd(z.real(), z.imag(), z.real(), z.imag()); }

SW_AVX2 inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

SW_AVX2 void cmul_avx2(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(out + i, cmul2(load2(a + i), load2(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

SW_AVX2 void green_combine_avx2(const cplx* p, const cplx* q, const cplx* r, const cplx* t,
                                cplx scale, double shift, const cplx* f, cplx* out,
                                std::size_t n) {
  const __m256d vs = splat(scale);
  const __m256d vshift = _mm256_set1_pd(shift);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d acc = _mm256_add_pd(cmul2(load2(p + i), load2(q + i)), cmul2(load2(r + i), load2(t + i)));
    acc = cmul2(acc, vs);
    store2(out + i, _mm256_fnmadd_pd(vshift, load2(f + i), acc));
  }
  for (; i < n; ++i) out[i] = (p[i] * q[i] + r[i] * t[i]) * scale - shift * f[i];
}

SW_AVX2 void tridiag_apply_avx2(const cplx* diag, const cplx* off, const cplx* x, cplx* y,
                                std::size_t n) {
  if (n < 4) {
    scalar_table().tridiag_apply(diag, off, x, y, n);
    return;
  }
  y[0] = diag[0] * x[0] + off[0] * x[1];
  std::size_t i = 1;
  for (; i + 2 < n; i += 2) {
    __m256d acc = cmul2(load2(diag + i), load2(x + i));
    acc = _mm256_add_pd(acc, cmul2(load2(off + i - 1), load2(x + i - 1)));
    acc = _mm256_add_pd(acc, cmul2(load2(off + i), load2(x + i + 1)));
    store2(y + i, acc);
  }
  for (; i + 1 < n; ++i) y[i] = off[i - 1] * x[i - 1] + diag[i] * x[i] + off[i] * x[i + 1];
  y[n - 1] = off[n - 2] * x[n - 2] + diag[n - 1] * x[n - 1];
}

SW_AVX2 cplx cdot_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d same = _mm256_setzero_pd();   // xr*yr, xi*yi
  __m256d cross = _mm256_setzero_pd();  // xi*yr, xr*yi
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = load2(x + i);
    __m256d vy = load2(y + i);
    same = _mm256_fmadd_pd(vx, vy, same);
    cross = _mm256_fmadd_pd(_mm256_permute_pd(vx, 0x5), vy, cross);
  }
  alignas(32) double c[4];
  _mm256_store_pd(c, cross);
  cplx acc(hsum(same), (c[1] + c[3]) - (c[0] + c[2]));
  for (; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

SW_AVX2 void caxpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d va = splat(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul2(load2(x + i), va)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

SW_AVX2 void cscale_avx2(cplx alpha, cplx* x, std::size_t n) {
  const __m256d va = splat(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(x + i, cmul2(load2(x + i), va));
  for (; i < n; ++i) x[i] *= alpha;
}

SW_AVX2 double norm2_sq_avx2(const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v = load2(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::norm(x[i]);
  return s;
}

SW_AVX2 double diff_norm2_sq_avx2(const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 3 <= n; i += 2) {
    __m256d d = _mm256_sub_pd(load2(x + i + 1), load2(x + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double s = hsum(acc);
  for (; i + 1 < n; ++i) s += std::norm(x[i + 1] - x[i]);
  return s;
}

#undef SW_AVX2

}  // namespace

const Table* avx2_table() noexcept {
  static const Table table{cmul_avx2,  green_combine_avx2, tridiag_apply_avx2,
                           cdot_avx2,  caxpy_avx2,         cscale_avx2,
                           norm2_sq_avx2, diff_norm2_sq_avx2};
  return &table;
}

#else

const Table* avx2_table() noexcept { return nullptr; }

#endif

}  // namespace stripwave::kernels::detail
