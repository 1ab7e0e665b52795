#include <immintrin.h>

#include "kernels_internal.hpp"

namespace qscreen::kernels::avx2 {

namespace {

// Lane order is fixed: ((l0 + l2) + (l1 + l3)).
inline double reduce(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

double sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double total = reduce(acc);
  for (; i < n; ++i) total += x[i];
  return total;
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  // mul then add, no FMA, so dot(ones, x) == sum(x) bitwise.
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  double total = reduce(acc);
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

void scale_gather(const double* prefix, const double* table, const int* levels, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(levels + i));
    const __m256d t = _mm256_i32gather_pd(table, idx, 8);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(prefix + i), t));
  }
  for (; i < n; ++i) out[i] = prefix[i] * table[levels[i]];
}

void axpy_neg(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(a, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_sub_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] -= alpha * x[i];
}

}  // namespace qscreen::kernels::avx2
