// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "kernels_internal.hpp"

namespace chiralwalk::kernels::detail {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void gemv_avx2(const double* a_re, const double* a_im, std::size_t rows, std::size_t cols,
               const double* x_re, const double* x_im, double* y_re, double* y_im) {
  for (std::size_t i = 0; i < rows; ++i) {
    y_re[i] = 0.0;
    y_im[i] = 0.0;
  }
  const std::size_t body = rows & ~std::size_t{3};
  for (std::size_t j = 0; j < cols; ++j) {
    const double xr = x_re[j];
    const double xi = x_im[j];
    const __m256d vxr = _mm256_set1_pd(xr);
    const __m256d vxi = _mm256_set1_pd(xi);
    const double* cr = a_re + j * rows;
    const double* ci = a_im + j * rows;
    std::size_t i = 0;
    for (; i < body; i += 4) {
      const __m256d ar = _mm256_loadu_pd(cr + i);
      const __m256d ai = _mm256_loadu_pd(ci + i);
      __m256d yr = _mm256_loadu_pd(y_re + i);
      __m256d yi = _mm256_loadu_pd(y_im + i);
      yr = _mm256_fmadd_pd(ar, vxr, yr);
      yr = _mm256_fnmadd_pd(ai, vxi, yr);
      yi = _mm256_fmadd_pd(ar, vxi, yi);
      yi = _mm256_fmadd_pd(ai, vxr, yi);
      _mm256_storeu_pd(y_re + i, yr);
      _mm256_storeu_pd(y_im + i, yi);
    }
    for (; i < rows; ++i) {
      y_re[i] += cr[i] * xr - ci[i] * xi;
      y_im[i] += cr[i] * xi + ci[i] * xr;
    }
  }
}

void gemv_adjoint_avx2(const double* a_re, const double* a_im, std::size_t rows, std::size_t cols,
                       const double* x_re, const double* x_im, double* y_re, double* y_im) {
  const std::size_t body = rows & ~std::size_t{7};
  for (std::size_t j = 0; j < cols; ++j) {
    const double* cr = a_re + j * rows;
    const double* ci = a_im + j * rows;
    // Two independent accumulator pairs hide FMA latency.
    __m256d sr0 = _mm256_setzero_pd(), si0 = _mm256_setzero_pd();
    __m256d sr1 = _mm256_setzero_pd(), si1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i < body; i += 8) {
      const __m256d ar0 = _mm256_loadu_pd(cr + i);
      const __m256d ai0 = _mm256_loadu_pd(ci + i);
      const __m256d xr0 = _mm256_loadu_pd(x_re + i);
      const __m256d xi0 = _mm256_loadu_pd(x_im + i);
      const __m256d ar1 = _mm256_loadu_pd(cr + i + 4);
      const __m256d ai1 = _mm256_loadu_pd(ci + i + 4);
      const __m256d xr1 = _mm256_loadu_pd(x_re + i + 4);
      const __m256d xi1 = _mm256_loadu_pd(x_im + i + 4);
      sr0 = _mm256_fmadd_pd(ar0, xr0, sr0);
      sr0 = _mm256_fmadd_pd(ai0, xi0, sr0);
      si0 = _mm256_fmadd_pd(ar0, xi0, si0);
      si0 = _mm256_fnmadd_pd(ai0, xr0, si0);
      sr1 = _mm256_fmadd_pd(ar1, xr1, sr1);
      sr1 = _mm256_fmadd_pd(ai1, xi1, sr1);
      si1 = _mm256_fmadd_pd(ar1, xi1, si1);
      si1 = _mm256_fnmadd_pd(ai1, xr1, si1);
    }
    double sr = hsum(_mm256_add_pd(sr0, sr1));
    double si = hsum(_mm256_add_pd(si0, si1));
    for (; i < rows; ++i) {
      sr += cr[i] * x_re[i] + ci[i] * x_im[i];
      si += cr[i] * x_im[i] - ci[i] * x_re[i];
    }
    y_re[j] = sr;
    y_im[j] = si;
  }
}

void abs2_avx2(const double* re, const double* im, std::size_t n, double* out) {
  const std::size_t body = n & ~std::size_t{3};
  std::size_t i = 0;
  for (; i < body; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d m = _mm256_loadu_pd(im + i);
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(r, r, _mm256_mul_pd(m, m)));
  }
  for (; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

double sum_abs2_avx2(const double* re, const double* im, std::size_t n) {
  const std::size_t body = n & ~std::size_t{3};
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < body; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d m = _mm256_loadu_pd(im + i);
    acc = _mm256_fmadd_pd(r, r, acc);
    acc = _mm256_fmadd_pd(m, m, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += re[i] * re[i] + im[i] * im[i];
  return s;
}

}  // namespace

const KernelTable kAvx2Table{"avx2", gemv_avx2, gemv_adjoint_avx2, abs2_avx2, sum_abs2_avx2};

}  // namespace chiralwalk::kernels::detail
