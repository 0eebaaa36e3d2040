#include "lqlab/simd.hpp"
#include "lqlab/summation.hpp"

namespace lq::simd::scalar {

std::complex<double> phase_dot(const double* wre, const double* wim, const std::uint32_t* idx,
                               std::size_t n, const double* cos_t, const double* sin_t) {
  CompensatedSum re, im;
  for (std::size_t j = 0; j < n; ++j) {
    const double c = cos_t[idx[j]];
    const double s = sin_t[idx[j]];
    re.add(wre[j] * c - wim[j] * s);
    im.add(wre[j] * s + wim[j] * c);
  }
  return {re.value(), im.value()};
}

double compensated_sum(const double* x, std::size_t n) {
  CompensatedSum s;
  for (std::size_t j = 0; j < n; ++j) s.add(x[j]);
  return s.value();
}

}  // namespace lq::simd::scalar
