#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "lqlab/characters.hpp"
#include "lqlab/errors.hpp"
#include "lqlab/log.hpp"

using namespace lq;

namespace {

struct Quiet {
  Quiet() { log::set_quiet(true); }
} quiet;

DirichletCharacter quadratic_mod5() {
  for (const auto& chi : enumerate_class(build_context(5), CharacterClass::all))
    if (chi.is_real() && !chi.is_principal()) return chi;
  throw std::logic_error("no quadratic character");
}

}  // namespace

TEST_CASE("build_context structure") {
  auto c5 = build_context(5);
  REQUIRE(c5->rank() == 1);
  CHECK(c5->components()[0].generator == 2);
  CHECK(c5->components()[0].order == 4);

  auto c8 = build_context(8);
  REQUIRE(c8->rank() == 2);
  CHECK(c8->components()[0].generator == 7);  // -1 mod 8
  CHECK(c8->components()[0].order == 2);
  CHECK(c8->components()[1].generator == 5);
  CHECK(c8->components()[1].order == 2);

  auto c15 = build_context(15);
  u64 prod = 1;
  for (const auto& c : c15->components()) prod *= c.order;
  CHECK(prod == 8);
  CHECK_THROWS_AS(build_context(2), DomainError);
}

TEST_CASE("unit indices match the generators") {
  for (u64 q : {5ull, 8ull, 12ull, 45ull, 64ull, 105ull, 1000ull}) {
    auto ctx = build_context(q);
    std::size_t units = 0;
    for (u64 a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1) {
        CHECK(ctx->unit_index(a) == ModulusContext::kNotUnit);
        continue;
      }
      ++units;
      const auto idx = ctx->unit_index(a);
      CHECK(ctx->unit_residue(idx) == a);
      u64 r = 1;
      const auto logs = ctx->dlog(a);
      for (std::size_t i = 0; i < ctx->rank(); ++i)
        r = mod_mul(r, mod_pow(ctx->components()[i].generator, logs[i], q), q);
      CHECK(r == a);
    }
    CHECK(units == ctx->phi());
  }
}

TEST_CASE("enumerate_class sizes") {
  CHECK(enumerate_class(build_context(5), CharacterClass::even_primitive).size() == 1);
  CHECK(enumerate_class(build_context(5), CharacterClass::all).size() == 4);
  CHECK(enumerate_class(build_context(9), CharacterClass::even).size() == 3);
  CHECK(enumerate_class(build_context(10), CharacterClass::primitive).empty());
  // number of primitive characters is the Dirichlet convolution mu * phi
  for (u64 q = 3; q <= 120; ++q) {
    i64 expect = 0;
    for (u64 d : divisors(factorize(q))) expect += mobius(q / d) * static_cast<i64>(euler_phi(d));
    CHECK(static_cast<i64>(enumerate_class(build_context(q), CharacterClass::primitive).size()) == expect);
  }
}

TEST_CASE("evaluate") {
  auto ctx = build_context(5);
  auto principal = character_from_index(ctx, 0);
  CHECK(principal.is_principal());
  CHECK(principal(3) == cd(1, 0));
  const auto quad = quadratic_mod5();
  CHECK(quad(2) == cd(-1, 0));
  for (const auto& chi : enumerate_class(ctx, CharacterClass::all)) CHECK(chi(10) == cd(0, 0));
}

TEST_CASE("characters are completely multiplicative and periodic") {
  std::mt19937_64 rng(7);
  for (u64 q : {7ull, 16ull, 63ull, 360ull, 1001ull}) {
    auto ctx = build_context(q);
    std::uniform_int_distribution<i64> d(-5000, 5000);
    for (const auto& chi : enumerate_class(ctx, CharacterClass::all)) {
      for (int t = 0; t < 40; ++t) {
        const i64 m = d(rng), n = d(rng);
        CHECK(std::abs(chi(m * n) - chi(m) * chi(n)) <= 1e-14);
        CHECK(chi(m) == chi(m + static_cast<i64>(q)));
      }
      CHECK(chi.parity() == (std::abs(chi(-1) - cd(1, 0)) < 1e-12 ? 1 : -1));
      CHECK(std::abs(chi.conjugate()(3) - std::conj(chi(3))) == 0.0);
    }
  }
}

TEST_CASE("multiplicativity on random pairs") {
  std::mt19937_64 rng(11);
  for (u64 q : {5ull, 24ull, 97ull, 200ull}) {
    auto chars = enumerate_class(build_context(q), CharacterClass::all);
    std::uniform_int_distribution<std::size_t> pick(0, chars.size() - 1);
    std::uniform_int_distribution<i64> d(1, 1000000);
    for (int t = 0; t < 1000; ++t) {
      const auto& chi = chars[pick(rng)];
      const i64 m = d(rng), n = d(rng);
      CHECK(std::abs(chi(m * n) - chi(m) * chi(n)) <= 1e-13);
    }
  }
}

TEST_CASE("full orthogonality over all characters") {
  for (u64 q : {5ull, 8ull, 9ull, 12ull, 21ull, 40ull}) {
    auto ctx = build_context(q);
    auto chars = enumerate_class(ctx, CharacterClass::all);
    for (u64 n = 1; n < q; ++n)
      for (u64 m = 1; m < q; ++m) {
        if (std::gcd(n * m, q) != 1) continue;
        cd s = 0;
        for (const auto& chi : chars) s += chi(static_cast<i64>(n)) * std::conj(chi(static_cast<i64>(m)));
        CHECK(std::abs(s - cd(n == m ? static_cast<double>(ctx->phi()) : 0.0, 0.0)) <= 1e-10);
      }
  }
}

TEST_CASE("conductor") {
  auto c12 = build_context(12);
  auto principal = character_from_index(c12, 0);
  auto info = conductor_and_primitivity(principal);
  CHECK(info.conductor == 1);
  CHECK_FALSE(info.primitive);
  CHECK(conductor_and_primitivity(quadratic_mod5()).conductor == 5);
  CHECK(conductor_and_primitivity(quadratic_mod5()).primitive);
  // mod 9: the real nonprincipal character is induced from the quadratic mod 3
  for (const auto& chi : enumerate_class(build_context(9), CharacterClass::all))
    if (chi.is_real() && !chi.is_principal()) {
      CHECK(chi.conductor() == 3);
      CHECK_FALSE(chi.primitive());
    }
  for (u64 q = 3; q <= 130; ++q)
    for (const auto& chi : enumerate_class(build_context(q), CharacterClass::all)) {
      const auto a = conductor_and_primitivity(chi);
      const auto b = conductor_brute_force(chi);
      CHECK(a.conductor == b.conductor);
      CHECK(a.primitive == b.primitive);
    }
}

TEST_CASE("gauss sums") {
  CHECK(std::abs(gauss_sum(quadratic_mod5()) - cd(std::sqrt(5.0), 0)) <= 1e-12);
  // principal mod 4: e(1/4) + e(3/4) = 0
  CHECK(std::abs(gauss_sum(character_from_index(build_context(4), 0))) <= 1e-12);
  for (const auto& chi : enumerate_class(build_context(7), CharacterClass::primitive))
    CHECK(std::abs(std::abs(gauss_sum(chi)) - std::sqrt(7.0)) <= 1e-12);
}

TEST_CASE("char_class_sum") {
  auto ctx = build_context(5);
  CHECK(char_class_sum(ctx, 1, CharacterClass::primitive).formula == 3.0);
  CHECK(std::abs(char_class_sum(ctx, 1, CharacterClass::primitive).direct - cd(3, 0)) < 1e-12);
  const auto s2 = char_class_sum(ctx, 2, CharacterClass::primitive);
  CHECK(std::abs(s2.direct.real() - s2.formula) < 1e-12);
  CHECK(char_class_sum(ctx, 1, CharacterClass::even_primitive).formula == 1.0);
  CHECK_THROWS_AS(char_class_sum(ctx, 10, CharacterClass::primitive), DomainError);
}

TEST_CASE("unit_root symmetry") {
  for (u64 n : {1ull, 2ull, 4ull, 6ull, 12ull, 100ull, 997ull})
    for (u64 k = 0; k < n; ++k) {
      CHECK(unit_root(n - k == n ? 0 : n - k, n) == (k == 0 ? unit_root(0, n) : std::conj(unit_root(k, n))));
      CHECK(std::abs(std::abs(unit_root(k, n)) - 1.0) <= 1e-15);
    }
  CHECK(unit_root(1, 4) == cd(0, 1));
  CHECK(unit_root(2, 4) == cd(-1, 0));
}
