// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "dbacf/kernels.hpp"

namespace dbacf::kernels::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double sum_sq_second_diff(std::span<const double> y, std::size_t gap, double d) {
  if (y.size() <= 2 * gap) return 0.0;
  const std::size_t count = y.size() - 2 * gap;
  const double* p0 = y.data();
  const double* p1 = p0 + gap;
  const double* p2 = p0 + 2 * gap;
  const __m256d vc1 = _mm256_set1_pd(1.0 + d);
  const __m256d vd = _mm256_set1_pd(d);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    __m256d b0 = _mm256_fnmadd_pd(vc1, _mm256_loadu_pd(p1 + i), _mm256_loadu_pd(p0 + i));
    __m256d b1 = _mm256_fnmadd_pd(vc1, _mm256_loadu_pd(p1 + i + 4), _mm256_loadu_pd(p0 + i + 4));
    b0 = _mm256_fmadd_pd(vd, _mm256_loadu_pd(p2 + i), b0);
    b1 = _mm256_fmadd_pd(vd, _mm256_loadu_pd(p2 + i + 4), b1);
    acc0 = _mm256_fmadd_pd(b0, b0, acc0);
    acc1 = _mm256_fmadd_pd(b1, b1, acc1);
  }
  for (; i + 4 <= count; i += 4) {
    __m256d b = _mm256_fnmadd_pd(vc1, _mm256_loadu_pd(p1 + i), _mm256_loadu_pd(p0 + i));
    b = _mm256_fmadd_pd(vd, _mm256_loadu_pd(p2 + i), b);
    acc0 = _mm256_fmadd_pd(b, b, acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  const double c1 = 1.0 + d;
  for (; i < count; ++i) {
    const double b = p0[i] - c1 * p1[i] + d * p2[i];
    acc += b * b;
  }
  return acc;
}

double sum_sq_diff(std::span<const double> y, std::size_t gap) {
  if (y.size() <= gap) return 0.0;
  const std::size_t count = y.size() - gap;
  const double* p0 = y.data();
  const double* p1 = p0 + gap;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    const __m256d b0 = _mm256_sub_pd(_mm256_loadu_pd(p0 + i), _mm256_loadu_pd(p1 + i));
    const __m256d b1 = _mm256_sub_pd(_mm256_loadu_pd(p0 + i + 4), _mm256_loadu_pd(p1 + i + 4));
    acc0 = _mm256_fmadd_pd(b0, b0, acc0);
    acc1 = _mm256_fmadd_pd(b1, b1, acc1);
  }
  for (; i + 4 <= count; i += 4) {
    const __m256d b = _mm256_sub_pd(_mm256_loadu_pd(p0 + i), _mm256_loadu_pd(p1 + i));
    acc0 = _mm256_fmadd_pd(b, b, acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < count; ++i) {
    const double b = p0[i] - p1[i];
    acc += b * b;
  }
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 4), _mm256_loadu_pd(b.data() + i + 4),
                           acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sq_distance(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d t0 = _mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i));
    const __m256d t1 =
        _mm256_sub_pd(_mm256_loadu_pd(a.data() + i + 4), _mm256_loadu_pd(b.data() + i + 4));
    acc0 = _mm256_fmadd_pd(t0, t0, acc0);
    acc1 = _mm256_fmadd_pd(t1, t1, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double t = a[i] - b[i];
    acc += t * t;
  }
  return acc;
}

}  // namespace dbacf::kernels::avx2
