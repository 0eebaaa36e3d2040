#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lqlab/errors.hpp"
#include "lqlab/lcentral.hpp"
#include "lqlab/log.hpp"

using namespace lq;

namespace {

DirichletCharacter real_nonprincipal(u64 q) {
  for (const auto& chi : enumerate_class(build_context(q), CharacterClass::primitive))
    if (chi.is_real()) return chi;
  throw std::logic_error("none");
}

}  // namespace

TEST_CASE("l_value_direct against a truncated Dirichlet series") {
  const auto chi = real_nonprincipal(5);
  long double s = 0;
  for (long n = 1000000; n >= 1; --n) s += static_cast<long double>(chi(n).real()) / (static_cast<long double>(n) * n);
  CHECK(std::abs(l_value_direct(chi, 2.0).value - cd(static_cast<double>(s), 0)) <= 1e-9);
}

TEST_CASE("L(1, chi_3) closed form") {
  const auto chi = real_nonprincipal(3);
  CHECK(std::abs(l_value_direct(chi, 1.0).value - cd(std::numbers::pi / (3 * std::sqrt(3.0)), 0)) <= 1e-13);
  const auto chi4 = real_nonprincipal(4);
  CHECK(std::abs(l_value_direct(chi4, 1.0).value - cd(std::numbers::pi / 4, 0)) <= 1e-13);
}

TEST_CASE("Schwarz reflection") {
  const cd s(0.5, 3.0);
  for (const auto& chi : enumerate_class(build_context(13), CharacterClass::primitive))
    CHECK(std::abs(l_value_direct(chi.conjugate(), s).value - std::conj(l_value_direct(chi, std::conj(s)).value)) <=
          1e-10);
}

TEST_CASE("principal characters are rejected") {
  CHECK_THROWS_AS(l_value_direct(character_from_index(build_context(7), 0), 0.5), DomainError);
}

TEST_CASE("AFE against Hurwitz and golden value") {
  const auto chi = real_nonprincipal(5);
  const auto afe = l_central_afe(chi);
  const auto hz = l_value_direct(chi, 0.5);
  CHECK(std::abs(afe.value - hz.value) <= 1e-12);
  CHECK(afe.value.real() == doctest::Approx(0.23175094750401606).epsilon(1e-13));
  CHECK(afe.method == EvalMethod::afe);
  for (u64 q = 3; q <= 80; ++q) {
    if (q % 4 == 2) continue;
    auto ctx = build_context(q);
    const auto kernel = make_afe_kernel(q);
    for (const auto& c : enumerate_class(ctx, CharacterClass::even_primitive)) {
      const auto a = l_central_afe(c, kernel);
      CHECK(std::abs(a.value - l_value_direct(c, 0.5).value) <= 1e-8);
      if (c.is_real()) CHECK(std::abs(a.value.imag()) <= 1e-9);
      const auto conj = l_central_afe(c.conjugate(), kernel);
      CHECK(std::abs(conj.value - std::conj(a.value)) <= 1e-10);
    }
  }
}

TEST_CASE("AFE domain") {
  log::set_quiet(true);
  // odd primitive character mod 5
  for (const auto& chi : enumerate_class(build_context(5), CharacterClass::primitive))
    if (!chi.is_even()) CHECK_THROWS_AS(l_central_afe(chi), DomainError);
  // imprimitive even character mod 9
  for (const auto& chi : enumerate_class(build_context(9), CharacterClass::even))
    if (!chi.primitive()) CHECK_THROWS_AS(l_central_afe(chi), DomainError);
}

TEST_CASE("batched transform route equals the per-character AFE") {
  for (u64 q : {101ull, 360ull, 1009ull}) {
    auto ctx = build_context(q);
    const auto table = central_values_even_primitive(ctx);
    const auto kernel = make_afe_kernel(q);
    REQUIRE(table.characters.size() == table.values.size());
    for (std::size_t i = 0; i < table.characters.size(); i += 7)
      CHECK(std::abs(table.values[i].value - l_central_afe(table.characters[i], kernel).value) <= 1e-12);
    const auto hz = central_values_hurwitz(ctx, 2);
    for (std::size_t i = 0; i < table.values.size(); ++i)
      CHECK(std::abs(table.values[i].value - hz.values[i].value) <= 1e-8);
  }
}

TEST_CASE("log_abs_central") {
  CHECK(log_abs_central(CentralValue{1.0, 0, EvalMethod::afe, 1e-12}) == 0.0);
  CHECK(log_abs_central(CentralValue{std::exp(2.0), 0, EvalMethod::afe, 1e-12}) == doctest::Approx(2.0));
  const auto cv = make_central_value(1e-15, EvalMethod::afe, 1e-12);
  CHECK(cv.is_sentinel());
  CHECK(cv.log_abs == kLogAbsSentinel);
}

TEST_CASE("AFE kernel tail") {
  const auto k = make_afe_kernel(10007);
  CHECK(k.tail_bound < 1e-10);
  CHECK(k.weights.size() > 50);
  CHECK(k.weights.size() < 2000);
}
