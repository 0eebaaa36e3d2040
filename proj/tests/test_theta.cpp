#include <cmath>

#include "doctest.h"
#include "lqlab/errors.hpp"
#include "lqlab/theta.hpp"

using namespace lq;

namespace {
const std::vector<u64> P23{2, 3};
}

TEST_CASE("diagonal value for primes {2,3}") {
  const auto one = factorize(1);
  const double expected = -(2 * std::log(2.0) + std::log(3.0)) / 3;  // sign from the direct double sum
  CHECK(theta_limit(one, one, P23) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(theta_limit_direct(one, one, P23) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(theta_beta(one, one, P23, 1e-4).real() == doctest::Approx(expected).epsilon(1e-6));
  CHECK(theta_beta_direct(one, one, P23, 1e-4) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("one differing prime") {
  const auto two = factorize(2), one = factorize(1);
  const double formula = std::log(2.0) / 4 * (2.0 / 3);
  CHECK(theta_limit(two, one, P23) == doctest::Approx(formula).epsilon(1e-14));
  CHECK(std::abs(theta_extrapolated(two, one, P23) - formula) <= 1e-3);
  CHECK(theta_limit_direct(two, one, P23) == doctest::Approx(formula).epsilon(1e-13));
}

TEST_CASE("two differing primes vanish") {
  const auto six = factorize(6), one = factorize(1);
  CHECK(theta_limit(six, one, P23) == 0.0);
  CHECK(std::abs(theta_beta(six, one, P23, 1e-3)) <= 1e-2);
  CHECK(std::abs(theta_beta_direct(six, one, P23, 1e-3)) <= 1e-2);
  CHECK(differing_primes(six, one, P23) == 2);
}

TEST_CASE("Euler product equals the direct double sum") {
  const std::vector<u64> P{2, 3, 5, 7};
  for (u64 a : {1ull, 2ull, 12ull, 35ull, 60ull})
    for (u64 b : {1ull, 3ull, 10ull, 49ull})
      for (double beta : {1e-3, 0.1, 0.7}) {
        const auto f1 = factorize(a), f2 = factorize(b);
        const cd e = theta_beta(f1, f2, P, beta);
        CHECK(std::abs(e.real() - theta_beta_direct(f1, f2, P, beta)) <= 1e-12);
        CHECK(std::abs(e.imag()) <= 1e-12);
        CHECK(std::abs(e - std::conj(theta_beta(f2, f1, P, beta))) <= 1e-12);
      }
}

TEST_CASE("theta domain") {
  const auto one = factorize(1);
  CHECK_THROWS_AS(theta_beta(one, one, P23, 0.0), DomainError);
  CHECK_THROWS_AS(theta_beta(factorize(5), one, P23, 0.1), DomainError);
}
