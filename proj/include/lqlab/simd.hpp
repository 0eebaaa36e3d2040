#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace lq::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);

// Chosen once from the CPU (or LQLAB_SIMD=scalar|avx2), overridable for tests.
Isa active_isa();
void set_active_isa(Isa isa);

// Sum_j (wre[j] + i*wim[j]) * (cos_t[idx[j]] + i*sin_t[idx[j]]), compensated.
std::complex<double> phase_dot(const double* wre, const double* wim, const std::uint32_t* idx,
                               std::size_t n, const double* cos_t, const double* sin_t);

// Compensated sum of x[0..n).
double compensated_sum(const double* x, std::size_t n);

namespace scalar {
std::complex<double> phase_dot(const double* wre, const double* wim, const std::uint32_t* idx,
                               std::size_t n, const double* cos_t, const double* sin_t);
double compensated_sum(const double* x, std::size_t n);
}  // namespace scalar

#if defined(LQLAB_HAVE_AVX2)
namespace avx2 {
std::complex<double> phase_dot(const double* wre, const double* wim, const std::uint32_t* idx,
                               std::size_t n, const double* cos_t, const double* sin_t);
double compensated_sum(const double* x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace lq::simd
