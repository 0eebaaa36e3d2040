#include <cmath>

#include "doctest.h"
#include "lqlab/errors.hpp"
#include "lqlab/scheme.hpp"

using namespace lq;

namespace {

CharacterRecord synthetic(int top, const std::vector<bool>& G, double log_abs) {
  CharacterRecord r;
  const auto n = static_cast<std::size_t>(top + 1);
  r.central.value = cd(std::exp(log_abs), 0);
  r.central.log_abs = log_abs;
  r.flags.A = r.flags.B = r.flags.C = r.flags.D = G;
  r.flags.G = G;
  r.s_tilde.assign(n, cd(0, 0));
  r.s_real.assign(n, 0.0);
  r.mollifier.assign(n, cd(1, 0));
  r.mollifier_product.assign(n, cd(1, 0));
  return r;
}

}  // namespace

TEST_CASE("standard constants give a degenerate ladder") {
  const auto s = build_schedule(1000000, 0.5);
  CHECK(s.top_level() <= 1);
  CHECK(s.degenerate);
  CHECK(s.s_param == doctest::Approx(2e5));
}

TEST_CASE("toy ladder") {
  const auto s = build_schedule(1000000, 0.5, ScheduleConfig::toy());
  REQUIRE(s.top_level() >= 2);
  CHECK_FALSE(s.degenerate);
  CHECK(s.level(0).q_l == 1.5);
  for (int l = 0; l <= s.top_level(); ++l) {
    const auto& lv = s.level(l);
    CHECK(std::abs(lv.n_l - std::log(std::log(lv.q_l))) <= 1e-12);
    if (l > 0) {
      CHECK(lv.q_l > s.level(l - 1).q_l);
      CHECK(lv.c_l == doctest::Approx(s.level(l - 1).c_l * (1 + std::exp(-s.level(l - 1).n_l))));
      CHECK(std::log(lv.q_l) <= s.config.toy_length_fraction * std::log(1e6));
    }
    CHECK(lv.lower < s.kappa * lv.n_l);
    CHECK(lv.upper > s.kappa * lv.n_l);
    CHECK((lv.upper - s.kappa * lv.n_l) - s.s_param * lv.log_iter == doctest::Approx(0.0).epsilon(1e-12));
    CHECK((s.kappa * lv.n_l - lv.lower) - s.s_param * lv.log_iter == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("schedule domain") {
  CHECK_THROWS_AS(build_schedule(10007, 0.0), DomainError);
  CHECK_THROWS_AS(build_schedule(10007, 1.0), DomainError);
  CHECK_THROWS_AS(build_schedule(2, 0.5), DomainError);
  CHECK(iterated_log(1e6, 5, 1.5) == 1.5);
}

TEST_CASE("parameter inequalities") {
  CHECK(validate_parameters(0.5, 1e3, 2e5).ok());
  CHECK(validate_parameters(0.999, 1e3, 1e5 / (1 - 0.999)).ok());
  const auto bad = validate_parameters(0.5, 0.0, 2e5);
  CHECK(bad.afix > 0);
  CHECK_FALSE(bad.ok());
  for (int i = 1; i <= 19; ++i) {
    const double k = 0.05 * i;
    const auto m = validate_parameters(k, 1e3, 1e5 / (1 - k));
    CHECK(m.afix < 0);
    CHECK(m.s2fix < 0);
  }
}

TEST_CASE("partition with hand-set flags") {
  // every nested pattern for L = 2, with and without H
  const std::vector<std::vector<bool>> patterns{{true, false, false}, {true, true, false}, {true, true, true}};
  std::vector<CharacterRecord> recs;
  for (std::size_t i = 0; i < patterns.size(); ++i)
    for (double la : {-1.0, 2.0}) recs.push_back(synthetic(2, patterns[i], la));
  recs.push_back(synthetic(2, patterns[2], kLogAbsSentinel));
  const auto pc = partition_counts(recs, 0.5);
  CHECK(pc.cells == std::vector<std::size_t>{1, 1, 1});
  CHECK(pc.h_total == 3);
  CHECK(pc.sentinels == 1);
  CHECK(partition_counts(recs, 5.0).cells == std::vector<std::size_t>{0, 0, 0});

  auto broken = recs;
  broken.push_back(synthetic(2, {true, false, true}, 2.0));
  CHECK_THROWS_AS(partition_counts(broken, 0.5), InvariantViolation);
  auto no_g0 = recs;
  no_g0.push_back(synthetic(2, {false, false, false}, 2.0));
  CHECK_THROWS_AS(partition_counts(no_g0, 0.5), InvariantViolation);
}

TEST_CASE("partition with one level") {
  std::vector<CharacterRecord> recs{synthetic(1, {true, false}, 1.0), synthetic(1, {true, true}, 1.0),
                                    synthetic(1, {true, true}, 1.0)};
  const auto pc = partition_counts(recs, 0.0);
  CHECK(pc.cells == std::vector<std::size_t>{1, 2});
  const auto single = partition_counts({synthetic(0, {true}, 1.0)}, 0.0);
  CHECK(single.cells == std::vector<std::size_t>{1});
}

TEST_CASE("records from a toy run") {
  const u64 q = 10007;
  auto ctx = build_context(q);
  const auto table = central_values_even_primitive(ctx);
  const auto sch = build_schedule(q, 0.5, ScheduleConfig::toy());
  REQUIRE(sch.top_level() == 2);
  const auto recs = compute_records(table, sch, 0.0, 4);
  std::size_t holds = 0;
  for (const auto& r : recs) {
    const auto& f = r.flags;
    for (int l = 0; l <= sch.top_level(); ++l) {
      const auto u = static_cast<std::size_t>(l);
      CHECK(std::abs(r.s_real[u] - r.s_tilde[u].real()) <= 1e-12);
      CHECK(f.G[u] == (f.A[u] && f.B[u] && f.C[u] && f.D[u]));
      if (l > 0) {
        CHECK((!f.G[u] || f.G[u - 1]));
        CHECK((!f.A[u] || f.A[u - 1]));
        CHECK(std::abs(r.mollifier_product[u] - r.mollifier_product[u - 1] * r.mollifier[u]) <= 1e-12);
        const auto chk = mollifier_inequality_check(r, sch, l);
        CHECK(chk.status != CheckStatus::fails);
        if (chk.status == CheckStatus::holds) ++holds;
      }
    }
    const auto again = evaluate_flags(r, sch, 0.0);
    CHECK(again.G == f.G);
    CHECK(again.H == f.H);
  }
  CHECK(holds > 0);
  const auto pc = partition_counts(recs, 0.0);
  std::size_t sum = 0;
  for (auto c : pc.cells) sum += c;
  CHECK(sum == pc.h_total);
}

TEST_CASE("empty level has trivial flags") {
  const u64 q = 101;
  const auto sch = build_schedule(q, 0.5);
  auto ctx = build_context(q);
  const auto table = central_values_even_primitive(ctx);
  ScaleSchedule zero = sch;
  zero.levels.resize(1);
  const auto r = compute_record(table.characters[0], table.values[0], zero, -100.0);
  CHECK(r.flags.G == std::vector<bool>{true});
  CHECK(r.flags.A == std::vector<bool>{true});
  CHECK(r.flags.H == !r.sentinel());
  for (const auto& chi : enumerate_class(ctx, CharacterClass::primitive))
    if (!chi.is_even()) {
      CHECK_THROWS_AS(compute_record(chi, table.values[0], zero, 0.0), DomainError);
      break;
    }
}

TEST_CASE("mollifier inequality edge cases") {
  ScaleSchedule s = build_schedule(10007, 0.5, ScheduleConfig::toy());
  auto r = synthetic(s.top_level(), std::vector<bool>(static_cast<std::size_t>(s.top_level() + 1), true), 0.0);
  // no primes contribute: S and M_l stay trivial
  const auto chk = mollifier_inequality_check(r, s, 1, 1e9);
  CHECK(chk.status == CheckStatus::holds);
  CHECK(chk.lhs == 1.0);
  CHECK(chk.slack == doctest::Approx(std::exp(-s.level(0).n_l)));
  r.s_tilde[1] = cd(1e3 * (s.level(1).n_l - s.level(0).n_l) + 1.0, 0);
  CHECK(mollifier_inequality_check(r, s, 1).status == CheckStatus::skipped);
  CHECK_THROWS_AS(mollifier_inequality_check(r, s, 0), DomainError);
}
