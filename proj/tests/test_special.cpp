#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>

#include "doctest.h"
#include "lqlab/errors.hpp"
#include "lqlab/special.hpp"

using namespace lq;

TEST_CASE("gamma_q against Boost") {
  for (double a : {0.25, 0.5, 1.0, 2.5, 7.0})
    for (double x : {0.0, 1e-6, 0.1, 0.9, 1.5, 1.6, 3.0, 10.0, 40.0}) {
      const double ref = boost::math::gamma_q(a, x);
      CHECK(std::abs(gamma_q(a, x) - ref) <= 1e-13 * std::max(ref, 1e-300) + 1e-300);
    }
  CHECK(gamma_q(1.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(gamma_q(0.5, 1.0) == doctest::Approx(std::erfc(1.0)).epsilon(1e-14));
}

TEST_CASE("afe weight") {
  CHECK(afe_weight(0.0) == 1.0);
  for (double x : {0.3, 1.0, 2.0, 4.0}) CHECK(afe_weight(x) == doctest::Approx(boost::math::gamma_q(0.25, x * x)).epsilon(1e-13));
  CHECK(afe_weight(6.0) < 1e-14);
}

TEST_CASE("digamma at 1/4") {
  CHECK(digamma_quarter() == doctest::Approx(boost::math::digamma(0.25)).epsilon(1e-15));
}

TEST_CASE("hurwitz zeta") {
  CHECK(hurwitz_zeta(2.0, 1.0) == doctest::Approx(M_PI * M_PI / 6).epsilon(1e-14));
  CHECK(hurwitz_zeta(0.5, 1.0) == doctest::Approx(boost::math::zeta(0.5)).epsilon(1e-13));
  // zeta(s, 1/2) = (2^s - 1) zeta(s)
  for (double s : {0.5, 0.75, 1.5, 3.0})
    CHECK(hurwitz_zeta(s, 0.5) == doctest::Approx((std::pow(2.0, s) - 1) * boost::math::zeta(s)).epsilon(1e-13));
  // zeta(s, a) = a^{-s} + zeta(s, a + 1): compare a and a/2 splitting identity zeta(s,a/2)+zeta(s,(a+1)/2) = 2^s zeta(s,a)
  for (double a : {0.1, 0.37, 0.9})
    CHECK(std::abs(hurwitz_zeta(0.5, a / 2) + hurwitz_zeta(0.5, (a + 1) / 2) - std::sqrt(2.0) * hurwitz_zeta(0.5, a)) <=
          1e-12);
  CHECK_THROWS_AS(hurwitz_zeta(1.0, 0.5), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(hurwitz_zeta(-1.0, 0.5), DomainError);
  const auto c = hurwitz_zeta(std::complex<double>(0.5, 0.0), 0.3);
  CHECK(std::abs(c - hurwitz_zeta(0.5, 0.3)) <= 1e-14);
}

TEST_CASE("hurwitz zeta at a = 1/2 by brute force") {
  long double s = 0;
  for (long n = 999999; n >= 0; --n) s += 1.0L / ((n + 0.5L) * (n + 0.5L));
  s += 1.0L / (1000000.0L);  // tail ~ 1/N
  CHECK(hurwitz_zeta(2.0, 0.5) == doctest::Approx(static_cast<double>(s)).epsilon(1e-11));
  CHECK(hurwitz_zeta(2.0, 0.5) == doctest::Approx(M_PI * M_PI / 2).epsilon(1e-14));
  CHECK(hurwitz_zeta(0.5, 1.0) == doctest::Approx(-1.4603545088095868).epsilon(1e-14));
}

TEST_CASE("digamma against Boost") {
  for (double x : {1e-3, 0.1, 0.25, 0.5, 0.999, 1.0, 3.7, 12.0, 1e4})
    CHECK(digamma(x) == doctest::Approx(boost::math::digamma(x)).epsilon(1e-14));
  CHECK_THROWS_AS(digamma(0.0), DomainError);
}
