#include <random>

#include "doctest.h"
#include "lqlab/log.hpp"
#include "lqlab/simd.hpp"
#include "lqlab/transform.hpp"

using namespace lq;

TEST_CASE("FFT character transform equals the direct sum") {
  log::set_quiet(true);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (u64 q : {3ull, 5ull, 8ull, 16ull, 36ull, 97ull, 120ull, 243ull, 1000ull, 1024ull}) {
    auto ctx = build_context(q);
    std::vector<cd> f(ctx->phi());
    for (auto& x : f) x = {u(rng), u(rng)};
    const auto fast = character_transform(*ctx, f);
    const auto slow = character_transform_direct(ctx, f);
    REQUIRE(fast.size() == slow.size());
    double worst = 0;
    for (std::size_t i = 0; i < fast.size(); ++i) worst = std::max(worst, std::abs(fast[i] - slow[i]));
    CHECK(worst <= 1e-10);
    // output index is the character index
    for (std::uint32_t i = 0; i < std::min<u64>(ctx->phi(), 5); ++i) {
      const auto chi = character_from_index(ctx, i);
      cd s = 0;
      for (std::uint32_t j = 0; j < ctx->phi(); ++j) s += f[j] * chi(static_cast<i64>(ctx->unit_residue(j)));
      CHECK(std::abs(s - fast[i]) <= 1e-10);
    }
  }
}

TEST_CASE("sparse character sums under both kernels") {
  auto ctx = build_context(1009);
  SparseCharacterSum s(ctx);
  for (i64 n = 1; n <= 300; ++n) s.add(n, cd(1.0 / n, 0.5 / n));
  s.add(1009, 5.0);  // not a unit, dropped
  CHECK(s.size() == 300);
  const auto before = simd::active_isa();
  for (const auto& chi : enumerate_class(ctx, CharacterClass::even_primitive)) {
    if (chi.index() > 60) break;
    cd ref = 0, refc = 0;
    for (i64 n = 1; n <= 300; ++n) {
      ref += cd(1.0 / n, 0.5 / n) * chi(n);
      refc += cd(1.0 / n, 0.5 / n) * std::conj(chi(n));
    }
    simd::set_active_isa(simd::Isa::scalar);
    const cd a = s.evaluate(chi);
    CHECK(std::abs(a - ref) <= 1e-12);
    CHECK(std::abs(s.evaluate_conjugate(chi) - refc) <= 1e-12);
    if (simd::isa_available(simd::Isa::avx2)) {
      simd::set_active_isa(simd::Isa::avx2);
      CHECK(std::abs(s.evaluate(chi) - a) <= 1e-13);
    }
  }
  simd::set_active_isa(before);
}
