#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "lqlab/dirichlet_poly.hpp"
#include "lqlab/errors.hpp"
#include "lqlab/log.hpp"
#include "lqlab/special.hpp"
#include "lqlab/twist.hpp"

using namespace lq;

namespace {

DirichletCharacter quadratic(u64 q) {
  for (const auto& chi : enumerate_class(build_context(q), CharacterClass::primitive))
    if (chi.is_real()) return chi;
  throw std::logic_error("none");
}

ScaleSchedule hand_schedule(u64 q, std::vector<double> ladder, std::vector<double> caps) {
  ScaleSchedule s;
  s.q = q;
  s.kappa = 0.5;
  s.loglog_q = std::log(std::log(static_cast<double>(q)));
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    ScaleLevel lv{};
    lv.q_l = ladder[i];
    lv.n_l = std::log(std::log(ladder[i]));
    lv.c_l = 1.0;
    lv.mollifier_cap = caps[i];
    s.levels.push_back(lv);
  }
  return s;
}

}  // namespace

TEST_CASE("eval_at_half") {
  const auto chi = quadratic(5);
  CHECK(eval_at_half(DirichletPolynomial::one(), chi) == cd(1, 0));
  DirichletPolynomial P({{4, 1.0}});
  CHECK(std::abs(eval_at_half(P, chi) - cd(0.5, 0)) <= 1e-15);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  auto ctx = build_context(101);
  std::map<u64, cd> c;
  for (u64 n = 1; n <= 40; ++n) c[n] = {u(rng), u(rng)};
  DirichletPolynomial R(c);
  for (const auto& x : enumerate_class(ctx, CharacterClass::all)) {
    cd ref = 0;
    for (u64 n = 1; n <= 40; ++n) ref += c[n] * x(static_cast<i64>(n)) / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(eval_at_half(R, x) - ref) <= 1e-12);
  }
}

TEST_CASE("convolution multiplies values") {
  auto ctx = build_context(211);
  DirichletPolynomial A({{1, 1.0}, {2, cd(0.5, 1)}, {4, -0.3}});
  DirichletPolynomial B({{1, 2.0}, {3, cd(0, 1)}, {9, 0.25}});
  const auto AB = A * B;
  CHECK(AB.coeff(6) == cd(0.5, 1) * cd(0, 1));
  for (const auto& chi : enumerate_class(ctx, CharacterClass::even))
    CHECK(std::abs(eval_at_half(AB, chi) - eval_at_half(A, chi) * eval_at_half(B, chi)) <= 1e-13);
}

TEST_CASE("s_tilde and s_real") {
  const auto chi = quadratic(5);
  CHECK(s_tilde(chi, std::log(std::log(1.9))) == cd(0, 0));
  CHECK(s_real(chi, std::log(std::log(1.9))) == 0.0);
  const double k10 = std::log(std::log(10.0));
  const double hand = -1 / std::sqrt(2.0) + 0.25 + -1 / std::sqrt(3.0) + 1.0 / 6 + (1 / std::sqrt(7.0) * chi(7).real()) +
                      1.0 / 14;
  CHECK(std::abs(s_tilde(chi, k10) - cd(hand, 0)) <= 1e-14);
  CHECK(chi(2).real() == -1.0);
  CHECK(chi(3).real() == -1.0);
  for (u64 q : {7ull, 101ull, 1000ull})
    for (const auto& x : enumerate_class(build_context(q), CharacterClass::all)) {
      for (double k : {1.0, 1.5, 2.0}) CHECK(std::abs(s_real(x, k) - s_tilde(x, k).real()) <= 1e-12);
      const double a = std::exp(std::exp(1.0)), b = std::exp(std::exp(1.7));
      CHECK(std::abs(s_tilde_interval(x, a, b) - (s_tilde(x, 1.7) - s_tilde(x, 1.0))) <= 1e-12);
      if (x.is_principal()) CHECK(s_tilde(x, 1.5).imag() == 0.0);
    }
}

TEST_CASE("mollifier polynomials") {
  auto M = mollifier_polynomial(2, 5, 2);
  CHECK(M.coeffs() == std::map<u64, cd>{{1, 1.0}, {3, -1.0}, {5, -1.0}, {15, 1.0}});
  CHECK(mollifier_polynomial(2, 5, 1).coeffs() == std::map<u64, cd>{{1, 1.0}, {3, -1.0}, {5, -1.0}});
  CHECK(mollifier_polynomial(7, 10, 3).coeffs() == std::map<u64, cd>{{1, 1.0}});
  CHECK(M.satisfies_support());
  const auto sch = hand_schedule(10007, {1.5, 5.0, 5.5, 40.0}, {0, 2, 2, 3});
  CHECK(mollifier_factor(sch, 1).coeffs().size() == 7);  // squarefree over {2,3,5}, Omega <= 2
  CHECK(mollifier_factor(sch, 2).coeffs() == std::map<u64, cd>{{1, 1.0}});
  CHECK_THROWS_AS(mollifier_factor(sch, 0), DomainError);
  CHECK_THROWS_AS(mollifier_factor(sch, 4), DomainError);
}

TEST_CASE("mollifier values match explicit coefficients") {
  const auto sch = hand_schedule(1009, {1.5, 7.0, 30.0}, {0, 2, 3});
  for (const auto& chi : enumerate_class(build_context(1009), CharacterClass::even_primitive)) {
    if (chi.index() > 300) break;
    for (int l = 1; l <= 2; ++l) {
      const auto poly = mollifier_factor(sch, l);
      const cd v = mollifier_value(chi, sch.level(l - 1).q_l, sch.level(l).q_l, sch.omega_cap(l));
      CHECK(std::abs(v - eval_at_half(poly, chi)) <= 1e-12);
    }
    const cd one = mollifier_product_eval(chi, sch, 1, LengthGuard::off);
    CHECK(std::abs(one - eval_at_half(mollifier_factor(sch, 1), chi)) <= 1e-12);
    CHECK(mollifier_product_eval(chi, sch, 0) == cd(1, 0));
  }
}

TEST_CASE("mollifier length guard") {
  log::set_quiet(true);
  const auto sch = hand_schedule(1009, {1.5, 7.0, 30.0}, {0, 1, 3});
  const auto chi = enumerate_class(build_context(1009), CharacterClass::even_primitive).front();
  // level 1: longest product 7 < sqrt(1009); level 2 adds 29*23*19
  CHECK_NOTHROW(mollifier_product_eval(chi, sch, 1));
  CHECK_THROWS_AS(mollifier_product_eval(chi, sch, 2), PreconditionError);
  CHECK_NOTHROW(mollifier_product_eval(chi, sch, 2, LengthGuard::off));
  CHECK(mollifier_log_length(2, 5, 2) == doctest::Approx(std::log(15.0)));
}

TEST_CASE("R(q)") {
  CHECK(log_r_of_q(10, 0.0) - 0.5 * std::log(10 / M_PI) == doctest::Approx(0.5 * digamma(0.25) + kEulerGamma));
  double prev = 0;
  for (u64 q = 3; q < 2000; q += 37) {
    CHECK(r_of_q(q) > prev);
    prev = r_of_q(q);
  }
  // psi(1/4) by its defining series -gamma + sum (1/(n+1) - 1/(n + 1/4))
  long double psi = -kEulerGamma;
  for (long n = 0; n < 20000000; ++n) psi += 1.0L / (n + 1) - 1.0L / (n + 0.25L);
  CHECK(std::abs(static_cast<double>(psi) - digamma_quarter()) < 1e-6);
  CHECK(log_r_of_q(10000) == doctest::Approx(0.5 * std::log(10000 / M_PI) + 0.5 * digamma_quarter() + kEulerGamma));
  CHECK(log_r_of_q(10000, 0.3) == doctest::Approx(log_r_of_q(10000) + 0.3));
}

TEST_CASE("q_form") {
  const double R = r_of_q(1009);
  TwistMatrix X{{{1, 1}, 1.0}};
  CHECK(q_form(X, 1009, R) == doctest::Approx(2 * std::log(R)));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  TwistMatrix Y;
  const u64 idx[] = {1, 2, 3, 5};
  for (u64 j : {1ull, 2ull})
    for (u64 k : {3ull, 5ull}) Y[{j, k}] = cd(u(rng), u(rng));
  // brute force over four indices
  cd brute = 0;
  for (const auto& [a, x1] : Y)
    for (const auto& [b, x2] : Y) {
      const double j1 = a.first, k1 = a.second, j2 = b.first, k2 = b.second;
      const double g = std::gcd(a.first * b.second, b.first * a.second);
      brute += x1 * std::conj(x2) * g / (j1 * j2 * k1 * k2) * std::log(R * R * g * g / (j1 * j2 * k1 * k2));
    }
  CHECK(std::abs(q_form_complex(Y, 1009, R) - brute) <= 1e-12);
  (void)idx;
  // Hermitian X gives a real form
  TwistMatrix H;
  for (u64 j : {1ull, 2ull, 3ull})
    for (u64 k : {1ull, 2ull, 3ull}) {
      if (j > k) continue;
      const cd v(u(rng), j == k ? 0.0 : u(rng));
      H[{j, k}] = v;
      H[{k, j}] = std::conj(v);
    }
  CHECK(std::abs(q_form_complex(H, 1009, R).imag()) <= 1e-10);
}

TEST_CASE("splitting over disjoint prime supports") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  for (u64 q = 73; q <= 200; ++q) {
    if (std::gcd(q, u64{6}) != 1) continue;
    DirichletPolynomial A({{1, cd(u(rng), u(rng))}, {2, cd(u(rng), u(rng))}});
    DirichletPolynomial B({{1, cd(u(rng), u(rng))}, {3, cd(u(rng), u(rng))}});
    auto ctx = build_context(q);
    auto mean = [&](const DirichletPolynomial& P) {
      return even_mean(ctx, [&](const DirichletCharacter& chi) { return std::norm(eval_at_half(P, chi)); });
    };
    CHECK(std::abs(mean(A * B) - mean(A) * mean(B)) <= 1e-10);
    CHECK(std::abs(mean(A) - A.mean_square_half()) <= 1e-10);
  }
}
