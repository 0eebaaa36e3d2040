#include <immintrin.h>

#include "lqlab/simd.hpp"
#include "lqlab/summation.hpp"

namespace lq::simd::avx2 {
namespace {

// Lane-wise Neumaier step: s += x with the rounding error collected in c.
inline void neumaier(__m256d& s, __m256d& c, __m256d x) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d t = _mm256_add_pd(s, x);
  const __m256d big_s = _mm256_cmp_pd(_mm256_andnot_pd(sign, s), _mm256_andnot_pd(sign, x), _CMP_GE_OQ);
  const __m256d e_s = _mm256_add_pd(_mm256_sub_pd(s, t), x);
  const __m256d e_x = _mm256_add_pd(_mm256_sub_pd(x, t), s);
  c = _mm256_add_pd(c, _mm256_blendv_pd(e_x, e_s, big_s));
  s = t;
}

inline void fold(CompensatedSum& out, __m256d s, __m256d c) {
  alignas(32) double ls[4];
  alignas(32) double lc[4];
  _mm256_store_pd(ls, s);
  _mm256_store_pd(lc, c);
  for (int k = 0; k < 4; ++k) out.add(ls[k]);
  for (int k = 0; k < 4; ++k) out.add(lc[k]);
}

}  // namespace

std::complex<double> phase_dot(const double* wre, const double* wim, const std::uint32_t* idx,
                               std::size_t n, const double* cos_t, const double* sin_t) {
  __m256d sre = _mm256_setzero_pd(), cre = _mm256_setzero_pd();
  __m256d sim = _mm256_setzero_pd(), cim = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m128i vi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + j));
    const __m256d c = _mm256_i32gather_pd(cos_t, vi, 8);
    const __m256d s = _mm256_i32gather_pd(sin_t, vi, 8);
    const __m256d a = _mm256_loadu_pd(wre + j);
    const __m256d b = _mm256_loadu_pd(wim + j);
    neumaier(sre, cre, _mm256_fmsub_pd(a, c, _mm256_mul_pd(b, s)));
    neumaier(sim, cim, _mm256_fmadd_pd(a, s, _mm256_mul_pd(b, c)));
  }
  CompensatedSum re, im;
  fold(re, sre, cre);
  fold(im, sim, cim);
  for (; j < n; ++j) {
    const double c = cos_t[idx[j]];
    const double s = sin_t[idx[j]];
    re.add(wre[j] * c - wim[j] * s);
    im.add(wre[j] * s + wim[j] * c);
  }
  return {re.value(), im.value()};
}

double compensated_sum(const double* x, std::size_t n) {
  __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) neumaier(s, c, _mm256_loadu_pd(x + j));
  CompensatedSum out;
  fold(out, s, c);
  for (; j < n; ++j) out.add(x[j]);
  return out.value();
}

}  // namespace lq::simd::avx2
