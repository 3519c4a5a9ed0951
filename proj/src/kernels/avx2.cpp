// Compiled with -mavx2 -mfma; only reached through the dispatch table after a
// CPU feature check.

#include <immintrin.h>

#include <cmath>

#include "qbound/kernels.hpp"

namespace qbound::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

// Two complex numbers per register laid out [re0, im0, re1, im1].
inline __m256d cmul(__m256d a, __m256d b) {
  __m256d a_re = _mm256_movedup_pd(a);
  __m256d a_im = _mm256_permute_pd(a, 0xF);
  __m256d b_swap = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_swap));
}

inline cplx csum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return {out[0], out[1]};
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4), acc1);
  }
  for (; k + 4 <= n; k += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += a[k] * b[k];
  return s;
}

void matvec(const double* m, const double* x, double* y, std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(m + r * cols, x, cols);
}

void cmatvec(const cplx* m, const cplx* x, cplx* y, std::size_t rows, std::size_t cols) {
  const double* xd = reinterpret_cast<const double*>(x);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = reinterpret_cast<const double*>(m + r * cols);
    __m256d acc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
      acc = _mm256_add_pd(acc, cmul(_mm256_loadu_pd(row + 2 * c), _mm256_loadu_pd(xd + 2 * c)));
    }
    cplx s = csum(acc);
    for (; c < cols; ++c) s += m[r * cols + c] * x[c];
    y[r] = s;
  }
}

cplx cdotc(const cplx* a, const cplx* b, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  // conj(a) * b: negate the imaginary lanes of a before the product.
  const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    __m256d av = _mm256_xor_pd(_mm256_loadu_pd(ad + 2 * k), conj_mask);
    acc = _mm256_add_pd(acc, cmul(av, _mm256_loadu_pd(bd + 2 * k)));
  }
  cplx s = csum(acc);
  for (; k < n; ++k) s += std::conj(a[k]) * b[k];
  return s;
}

double l1_distance(const double* a, const double* b, std::size_t n) {
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    acc = _mm256_add_pd(acc, _mm256_and_pd(d, abs_mask));
  }
  double s = hsum(acc);
  for (; k < n; ++k) s += std::abs(a[k] - b[k]);
  return s;
}

}  // namespace qbound::kernels::avx2
