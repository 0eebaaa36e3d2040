#include <cmath>
#include <limits>

#include "doctest.h"
#include "lqlab/errors.hpp"
#include "lqlab/moments.hpp"

using namespace lq;

namespace {

const CentralValueTable& table_for(u64 q) {
  static std::map<u64, CentralValueTable> cache;
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, central_values_even_primitive(build_context(q))).first;
  return it->second;
}

}  // namespace

TEST_CASE("class moments") {
  const auto& t = table_for(1009);
  const auto sq = abs_squares(t);
  const auto r0 = class_moment(1009, CharacterClass::even_primitive, sq, 0.0);
  CHECK(r0.value == 1.0);
  CHECK(r0.comparator == 1.0);
  CHECK(r0.ratio == 1.0);
  const auto r1 = class_moment(1009, CharacterClass::even_primitive, sq, 1.0);
  CHECK(r1.comparator == doctest::Approx(std::log(1009.0)));
  // the [0.5, 2] band is acceptance criterion 5; here only the identity with the raw mean
  double mean = 0;
  for (double v : sq) mean += v;
  CHECK(r1.value == doctest::Approx(mean / double(sq.size())).epsilon(1e-13));
  CHECK_THROWS_AS(class_moment(1009, CharacterClass::even_primitive, std::vector<double>{}, 1.0), DomainError);
}

TEST_CASE("tail counts") {
  const u64 q = 1009;
  const auto& t = table_for(q);
  CHECK(tail_count(t, std::numeric_limits<double>::infinity()).count == 0);
  const auto all = tail_count(t, -std::numeric_limits<double>::infinity());
  CHECK(all.count_norm == doctest::Approx(0.5).epsilon(0.01));
  const double llq = std::log(std::log(double(q)));
  const auto mid = tail_count(t, llq);
  CHECK(mid.gaussian_bound == doctest::Approx(1.0 / (std::log(double(q)) * std::sqrt(llq))));
}

TEST_CASE("Markov consistency between tail and moment") {
  const auto& t = table_for(10007);
  const auto sq = abs_squares(t);
  for (double beta : {0.25, 0.5, 1.0}) {
    const auto m = class_moment(10007, CharacterClass::even_primitive, sq, beta);
    for (double V = -2.0; V <= 3.0; V += 0.25) {
      const auto tr = tail_count(t, V);
      // tail is normalised by phi(q), the moment by the class size
      const double frac = double(tr.count) / double(sq.size());
      CHECK(frac <= std::exp(-2 * beta * V) * m.value * (1 + 1e-12));
    }
  }
}

TEST_CASE("twisted second moment with Q = 1 and no mollifier") {
  const u64 q = 1009;
  const auto& t = table_for(q);
  auto sch = build_schedule(q, 0.5, ScheduleConfig::toy());
  sch.levels.resize(1);
  const auto recs = compute_records(t, sch, 0.0);
  const auto rep = twisted_second_moment(t, recs, DirichletPolynomial::one(), sch, 0);
  CHECK(rep.orthogonal_side == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.scale == doctest::Approx(std::log(double(q))));
  double direct = 0;
  for (double v : abs_squares(t)) direct += v;
  direct /= double(t.values.size());
  CHECK(rep.direct == doctest::Approx(direct).epsilon(1e-12));
  CHECK(rep.ratio == doctest::Approx(direct / std::log(double(q))).epsilon(1e-12));
}

TEST_CASE("twisted second moment on the toy ladder") {
  const u64 q = 10007;
  const auto& t = table_for(q);
  const auto sch = build_schedule(q, 0.5, ScheduleConfig::toy());
  const auto recs = compute_records(t, sch, 0.0, 4);
  std::map<u64, cd> c;
  for (u64 p : PrimeTable::covering(100)->primes_in(sch.level(0).q_l, sch.level(1).q_l)) c[p] = 1.0;
  const DirichletPolynomial Q(c);
  double sum = 0;
  for (const auto& [n, a] : c) sum += std::norm(a) / double(n);
  for (int l = 0; l <= 1; ++l) {
    const auto rep = twisted_second_moment(t, recs, Q, sch, l);
    CHECK(std::abs(rep.orthogonal_side - sum) <= 1e-10);
    CHECK(rep.ratio <= 10.0);
    CHECK(rep.ratio > 0.0);
  }
  std::map<u64, cd> longer{{1, 1.0}, {9973, 1.0}};
  CHECK_THROWS_AS(twisted_second_moment(t, recs, DirichletPolynomial(longer), sch, 1), PreconditionError);
}

TEST_CASE("B transform") {
  const u64 q = 1009;
  const auto& t = table_for(q);
  const auto b11 = b_transform(t, 1, 1);
  double acc = 0;
  for (const auto& v : t.values) acc += std::norm(v.value);
  CHECK(std::abs(b11.value.real() - acc) <= 1e-6);
  CHECK(std::abs(b11.value.imag()) <= 1e-9);
  CHECK(b11.ratio >= 0.5);
  CHECK(b11.ratio <= 2.0);
  for (auto [m1, m2] : {std::pair<u64, u64>{2, 3}, {5, 12}, {7, 1}}) {
    const cd a = b_transform(t, m1, m2).value, b = b_transform(t, m2, m1).value;
    CHECK(std::abs(a - std::conj(b)) <= 1e-10);
    for (u64 c : {2ull, 11ull}) CHECK(b_transform(t, c * m1, c * m2).value == a);
  }
  CHECK_THROWS_AS(b_transform(t, 1009, 1), DomainError);
  CHECK_THROWS_AS(b_transform(t, 3, 2018), DomainError);
  CHECK(std::isfinite(b_transform(t, 6, 4).value.real()));
}

TEST_CASE("moment from the tail") {
  const std::vector<double> zeros(50, 0.0);
  for (double beta : {0.1, 0.5, 0.9}) CHECK(moment_from_tail(zeros, beta) == doctest::Approx(1.0).epsilon(1e-14));
  const std::vector<double> spread{-1.5, -0.2, 0.0, 0.3, 1.1};
  CHECK(moment_from_tail(spread, 1e-9) == doctest::Approx(1.0).epsilon(1e-7));
  // exact on any finite sample: the mean of e^{2 beta x}
  double direct = 0;
  for (double x : spread) direct += std::exp(2 * 0.4 * x);
  CHECK(moment_from_tail(spread, 0.4) == doctest::Approx(direct / 5).epsilon(1e-13));
  CHECK_THROWS_AS(moment_from_tail(spread, 0.0), DomainError);
  CHECK_THROWS_AS(moment_from_tail(spread, 1.0), DomainError);

  const auto& t = table_for(10007);
  const auto la = log_abs_values(t);
  const auto cm = class_moment(10007, CharacterClass::even_primitive, abs_squares(t), 0.5);
  CHECK(std::abs(moment_from_tail(la, 0.5) - cm.value) / cm.value <= 0.01);
}

TEST_CASE("partial sum moments") {
  auto ctx = build_context(10007);
  const double n = std::log(std::log(1.5));
  const double m = std::log(std::log(2.1));
  const auto k0 = partial_sum_moment_suite(ctx, n, m, 0);
  CHECK(k0.complex_sum.value == doctest::Approx(1.0));
  CHECK(k0.real_sum.value == doctest::Approx(1.0));
  const auto same = partial_sum_moment_suite(ctx, m, m, 1);
  CHECK(same.complex_sum.value == 0.0);
  CHECK(same.real_sum.value == 0.0);
  const auto k2 = partial_sum_moment_suite(ctx, n, m, 2, 4);
  CHECK(k2.complex_sum.ratio <= 10.0);
  CHECK(k2.real_sum.ratio <= 10.0);
  CHECK(k2.complex_sum.comparator == doctest::Approx(2.0 * std::pow(m - n + 1, 2)));
  CHECK_THROWS_AS(partial_sum_moment_suite(ctx, n, std::log(std::log(100.0)), 2), PreconditionError);
  CHECK_THROWS_AS(partial_sum_moment_suite(ctx, m, n, 1), DomainError);
}
