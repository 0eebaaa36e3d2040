#include <atomic>
#include <cstdlib>
#include <string>

#include "lqlab/errors.hpp"
#include "lqlab/simd.hpp"

namespace lq::simd {
namespace {

Isa detect() {
  if (const char* env = std::getenv("LQLAB_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<int>& slot() {
  static std::atomic<int> isa{static_cast<int>(detect())};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::scalar) return true;
#if defined(LQLAB_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return static_cast<Isa>(slot().load(std::memory_order_relaxed)); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) throw DomainError("instruction set not available: " + std::string(isa_name(isa)));
  slot().store(static_cast<int>(isa), std::memory_order_relaxed);
}

std::complex<double> phase_dot(const double* wre, const double* wim, const std::uint32_t* idx,
                               std::size_t n, const double* cos_t, const double* sin_t) {
#if defined(LQLAB_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::phase_dot(wre, wim, idx, n, cos_t, sin_t);
#endif
  return scalar::phase_dot(wre, wim, idx, n, cos_t, sin_t);
}

double compensated_sum(const double* x, std::size_t n) {
#if defined(LQLAB_HAVE_AVX2)
  if (active_isa() == Isa::avx2) return avx2::compensated_sum(x, n);
#endif
  return scalar::compensated_sum(x, n);
}

}  // namespace lq::simd
