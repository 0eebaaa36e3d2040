#include "lqlab/verify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "lqlab/errors.hpp"
#include "lqlab/lcentral.hpp"
#include "lqlab/log.hpp"
#include "lqlab/moments.hpp"
#include "lqlab/random_model.hpp"
#include "lqlab/schedule.hpp"
#include "lqlab/scheme.hpp"
#include "lqlab/stats.hpp"
#include "lqlab/summation.hpp"
#include "lqlab/theta.hpp"
#include "lqlab/transform.hpp"
#include "lqlab/twist.hpp"

namespace lq {
namespace {

CriterionResult result(int id, std::string name, bool ok, std::string detail) {
  return {id, std::move(name), ok, std::move(detail)};
}

std::vector<u64> moduli_with_primitive(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 q = lo; q <= hi; ++q)
    if (q % 4 != 2) out.push_back(q);
  return out;
}

cd random_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  return {re, u(rng)};
}

CriterionResult c1_orthogonality(const VerifyOptions& o) {
  const u64 qmax = o.qmax.value_or(200);
  std::mt19937_64 rng(o.seed);
  double worst = 0.0;
  std::size_t cases = 0;
  for (u64 q = 3; q <= qmax; ++q) {
    const auto ctx = build_context(q);
    const std::size_t nmax = (q - 1) / 2;  // N < q/2
    if (nmax == 0) continue;
    for (int t = 0; t < 20; ++t) {
      std::uniform_int_distribution<std::size_t> len(1, nmax);
      std::vector<cd> a(len(rng));
      for (auto& x : a) x = random_complex(rng);
      const auto chk = even_orthogonality(ctx, a);
      worst = std::max(worst, std::abs(chk.lhs - chk.rhs));
      ++cases;
    }
  }
  return result(1, "exact orthogonality", worst <= 1e-10,
                fmt::format("q in [3,{}], {} vectors, max |lhs - rhs| = {:.3e}", qmax, cases, worst));
}

CriterionResult c2_class_sum(const VerifyOptions& o) {
  const u64 qmax = o.qmax.value_or(300);
  std::size_t checked = 0, bad = 0;
  std::string first;
  for (u64 q = 3; q <= qmax; ++q) {
    const auto ctx = build_context(q);
    for (u64 m = 1; m < q; ++m) {
      if (std::gcd(m, q) != 1) continue;
      ++checked;
      try {
        const ClassSum s = char_class_sum(ctx, static_cast<i64>(m), CharacterClass::primitive);
        const double r = std::round(s.direct.real());
        if (r != s.formula || std::abs(s.direct.real() - r) > 1e-6 || std::abs(s.direct.imag()) > 1e-6) {
          if (bad++ == 0) first = fmt::format("q={} m={}", q, m);
        }
      } catch (const InvariantViolation& e) {
        if (bad++ == 0) first = e.what();
      }
    }
  }
  return result(2, "primitive character-sum identity", bad == 0,
                fmt::format("q <= {}, {} (q, m) pairs, {} mismatches{}", qmax, checked, bad,
                            bad ? " first: " + first : ""));
}

CriterionResult c3_gauss(const VerifyOptions& o) {
  const u64 qmax = o.qmax.value_or(300);
  double worst = 0.0;
  std::size_t n = 0;
  for (u64 q : moduli_with_primitive(3, qmax)) {
    const auto ctx = build_context(q);
    for (const auto& chi : enumerate_class(ctx, CharacterClass::primitive)) {
      worst = std::max(worst, std::abs(std::abs(gauss_sum(chi)) - std::sqrt(static_cast<double>(q))));
      ++n;
    }
  }
  return result(3, "Gauss-sum modulus", worst <= 1e-9,
                fmt::format("{} primitive characters, q <= {}, max ||tau| - sqrt q| = {:.3e}", n, qmax, worst));
}

CriterionResult c4_dual_lvalues(const VerifyOptions& o) {
  const u64 qmax = o.qmax.value_or(500);
  double worst = 0.0;
  u64 worst_q = 0;
  std::size_t n = 0;
  for (u64 q : moduli_with_primitive(3, qmax)) {
    const auto ctx = build_context(q);
    const auto afe = central_values_even_primitive(ctx);
    const auto hz = central_values_hurwitz(ctx, o.threads);
    for (std::size_t i = 0; i < afe.values.size(); ++i) {
      const double d = std::abs(afe.values[i].value - hz.values[i].value);
      if (d > worst) {
        worst = d;
        worst_q = q;
      }
      ++n;
    }
  }
  return result(4, "dual-method L-values", worst <= 1e-8,
                fmt::format("{} even primitive characters, q <= {}, max |AFE - Hurwitz| = {:.3e} (q={})", n, qmax,
                            worst, worst_q));
}

CriterionResult c5_second_moment(const VerifyOptions&) {
  bool ok = true;
  std::string detail;
  for (u64 q : {101ull, 1009ull, 10007ull}) {
    const auto table = central_values_even_primitive(build_context(q));
    const auto sq = abs_squares(table);
    const MomentReport r = class_moment(q, CharacterClass::even_primitive, sq, 1.0);
    const bool in = r.ratio >= 0.5 && r.ratio <= 2.0;
    ok = ok && in;
    detail += fmt::format("q={}: E+|L|^2={:.6f} ratio={:.4f}{}; ", q, r.value, r.ratio, in ? "" : " (out of band)");
  }
  return result(5, "second moment", ok, detail);
}

CriterionResult c6_fractional(const VerifyOptions&) {
  std::vector<u64> qs;
  for (u64 base : {1000ull, 2000ull, 5000ull, 10000ull, 20000ull, 50000ull, 99000ull}) qs.push_back(next_prime(base));
  const double betas[] = {0.25, 0.5, 0.75};
  std::vector<double> x;
  std::vector<std::vector<double>> y(3);
  for (u64 q : qs) {
    const auto table = central_values_even_primitive(build_context(q));
    const auto sq = abs_squares(table);
    x.push_back(std::log(std::log(static_cast<double>(q))));
    for (int b = 0; b < 3; ++b)
      y[static_cast<std::size_t>(b)].push_back(
          std::log(class_moment(q, CharacterClass::even_primitive, sq, betas[b]).value));
  }
  bool ok = true;
  std::string detail = fmt::format("{} prime moduli {}..{}; ", qs.size(), qs.front(), qs.back());
  for (int b = 0; b < 3; ++b) {
    const double slope = least_squares(x, y[static_cast<std::size_t>(b)]).slope;
    const double target = betas[b] * betas[b];
    const bool in = std::abs(slope - target) <= 0.25;
    ok = ok && in;
    detail += fmt::format("beta={}: slope={:.4f} target={:.4f}{}; ", betas[b], slope, target, in ? "" : " (outside)");
  }
  return result(6, "fractional-moment scaling", ok, detail);
}

CriterionResult c7_tail(const VerifyOptions&) {
  const u64 q = next_prime(30000);
  const auto table = central_values_even_primitive(build_context(q));
  const double ll = std::log(std::log(static_cast<double>(q)));
  const double scale = 1.0 / std::sqrt(0.5 * ll);
  std::vector<double> z;
  for (const auto& cv : table.values) z.push_back(cv.log_abs * scale);
  const double ks = ks_distance_normal(z);
  bool ok = ks <= 0.1;
  std::string detail = fmt::format("q={} KS={:.4f}; ", q, ks);
  for (double alpha : {0.3, 0.5, 0.7}) {
    const TailReport t = tail_count(table, alpha * ll);
    const bool in = std::isfinite(t.ratio) && t.ratio <= 50.0;
    ok = ok && in;
    detail += fmt::format("alpha={}: count={:.5f} bound={:.5f} ratio={:.4f}; ", alpha, t.count_norm, t.gaussian_bound,
                          t.ratio);
  }
  return result(7, "Gaussian-tail shape", ok, detail);
}

CriterionResult c8_theta(const VerifyOptions&) {
  const std::vector<u64> all = {2, 3, 5};
  double worst = 0.0, worst_vanish = 0.0, worst_direct = 0.0;
  std::size_t cases = 0;
  for (unsigned mask = 1; mask < 8; ++mask) {
    std::vector<u64> primes;
    for (unsigned i = 0; i < 3; ++i)
      if (mask & (1u << i)) primes.push_back(all[i]);
    const std::size_t r = primes.size();
    std::size_t combos = 1;
    for (std::size_t i = 0; i < 2 * r; ++i) combos *= 3;
    for (std::size_t code = 0; code < combos; ++code) {
      u64 c1 = 1, c2 = 1;
      std::size_t c = code;
      for (std::size_t i = 0; i < r; ++i) {
        for (int e = static_cast<int>(c % 3); e > 0; --e) c1 *= primes[i];
        c /= 3;
        for (int e = static_cast<int>(c % 3); e > 0; --e) c2 *= primes[i];
        c /= 3;
      }
      const auto f1 = factorize(c1), f2 = factorize(c2);
      const double ext = theta_extrapolated(f1, f2, primes);
      const double lim = theta_limit(f1, f2, primes);
      worst = std::max(worst, std::abs(ext - lim));
      worst_direct = std::max(worst_direct, std::abs(theta_limit_direct(f1, f2, primes) - lim));
      if (differing_primes(f1, f2, primes) >= 2) worst_vanish = std::max(worst_vanish, std::abs(ext));
      ++cases;
    }
  }
  const bool ok = worst <= 1e-3 && worst_vanish <= 1e-2 && worst_direct <= 1e-3;
  return result(8, "theta machinery", ok,
                fmt::format("{} cases, max |extrapolated - limit| = {:.3e}, max |direct limit - closed form| = {:.3e}, "
                            "max |Theta| with >= 2 differing primes = {:.3e}",
                            cases, worst, worst_direct, worst_vanish));
}

// sum |C_{u1 k1} C_{u2 k2}| |sum_{f1, f2} mu mu / [u1 k2 f1, u2 k1 f2]| over squarefree f on `primes`
double unrestricted_f_sum(const TwistCoefficients& c, const std::vector<u64>& primes) {
  std::vector<std::pair<u64, int>> fs;  // (f, mu(f))
  for (unsigned mask = 0; mask < (1u << primes.size()); ++mask) {
    u64 f = 1;
    int mu = 1;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (mask & (1u << i)) {
        f *= primes[i];
        mu = -mu;
      }
    fs.push_back({f, mu});
  }
  CompensatedSum total;
  for (const auto& [a, ca] : c.entries)
    for (const auto& [b, cb] : c.entries) {
      const u64 x = a.first * b.second, y = b.first * a.second;  // u1 k2, u2 k1
      CompensatedSum inner;
      for (const auto& [f1, m1] : fs)
        for (const auto& [f2, m2] : fs) {
          const u64 g1 = x * f1, g2 = y * f2;
          const double lcm = static_cast<double>(g1 / std::gcd(g1, g2)) * static_cast<double>(g2);
          inner.add(static_cast<double>(m1 * m2) / lcm);
        }
      total.add(std::abs(ca) * std::abs(cb) * std::abs(inner.value()));
    }
  return total.value();
}

CriterionResult c9_diagonal(const VerifyOptions& o) {
  const std::vector<u64> primes = {3, 5, 7};  // toy interval (2, 7]
  std::mt19937_64 rng(o.seed ^ 9);
  RealTwistFactor f;
  f.interval = std::make_pair(2.0, 7.0);
  for (u64 p : primes) f.b[p] = random_complex(rng);
  f.b[9] = random_complex(rng);
  f.K = {0.3, -1.1, 0.7};
  const auto coeffs = real_twist_coeffs(f);
  const double brute = unrestricted_f_sum(coeffs, primes);
  u64 q = 5003;
  while (!twist_admissible(coeffs, q)) q = next_prime(q + 1);
  const double mean = even_mean(build_context(q), [&](const DirichletCharacter& chi) {
    const double v = f.value(chi);
    return v * v;
  });
  double euler = 1.0;
  for (u64 p : primes) euler *= 1.0 - 1.0 / static_cast<double>(p);
  const double side = mean * euler;
  const double diff = std::abs(brute - side);
  return result(9, "diagonal evaluation", diff <= 1e-8,
                fmt::format("interval (2,7], {} coefficients, f-sum={:.15f}, E(|F|^2) prod(1-1/p)={:.15f} "
                            "(characters mod {}), diff={:.3e}",
                            coeffs.entries.size(), brute, side, q, diff));
}

CriterionResult c10_random_model(const VerifyOptions& o) {
  const u64 pool[] = {2, 3, 5, 7, 11};
  std::mt19937_64 rng(o.seed ^ 10);
  std::size_t ineq_fail = 0, mc_fail = 0, mc_checks = 0;
  double worst_z = 0.0;
  for (int set = 0; set < 100; ++set) {
    std::uniform_int_distribution<int> count(1, 5);
    std::map<u64, cd> a;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) a[pool[i]] = random_complex(rng);
    double s2 = 0.0;
    for (const auto& [p, v] : a) s2 += 0.5 * std::norm(v);
    for (int k = 1; k <= 6; ++k) {
      const double ex = exact_real_moment(a, k);
      if (ex > gaussian_moment(s2, k) * (1.0 + 1e-12)) ++ineq_fail;
    }
    if (set < 10) {
      for (int k = 1; k <= 3; ++k) {
        const auto mc = mc_real_moment(a, k, 20000, o.seed + static_cast<u64>(set * 7 + k));
        const double z = std::abs(mc.mean - exact_real_moment(a, k)) / mc.std_error;
        worst_z = std::max(worst_z, z);
        if (!(z <= 4.0)) ++mc_fail;
        ++mc_checks;
      }
    }
  }
  return result(10, "random-model moments", ineq_fail == 0 && mc_fail == 0,
                fmt::format("100 coefficient sets, k <= 6: {} exact > gaussian; {} Monte-Carlo checks, {} beyond 4 SE, "
                            "max z = {:.3f}",
                            ineq_fail, mc_checks, mc_fail, worst_z));
}

CriterionResult c11_real_twist(const VerifyOptions& o) {
  const u64 qmax = o.qmax.value_or(100);
  std::mt19937_64 rng(o.seed ^ 11);
  double worst = 0.0;
  std::size_t cases = 0;
  for (u64 q = 3; q <= qmax; ++q) {
    const auto ctx = build_context(q);
    std::vector<u64> ps;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull})
      if (q % p != 0) ps.push_back(p);
    for (int deg = 1; deg <= 3; ++deg) {
      RealTwistFactor f;
      for (u64 p : ps)
        if (rng() % 2 || f.b.empty()) f.b[p] = random_complex(rng);
      if (!ps.empty() && rng() % 2) f.b[ps.front() * ps.front()] = random_complex(rng);
      f.K.resize(static_cast<std::size_t>(deg) + 1);
      for (auto& k : f.K) k = random_complex(rng).real();
      if (f.K.back() == 0.0) f.K.back() = 1.0;
      const auto coeffs = real_twist_coeffs(f);
      const double character_side = even_mean(ctx, [&](const DirichletCharacter& chi) {
        const double v = f.value(chi);
        return v * v;
      });
      const double coefficient_side = twist_mean_square_mod(coeffs, q);
      worst = std::max(worst, std::abs(character_side - coefficient_side));
      if (twist_admissible(coeffs, q))
        worst = std::max(worst, std::abs(character_side - coeffs.mean_square_diagonal()));
      ++cases;
    }
  }
  return result(11, "real-twist identity", worst <= 1e-10,
                fmt::format("q in [3,{}], {} factors of degree 1..3, max |character side - coefficient side| = {:.3e}",
                            qmax, cases, worst));
}

struct SchemeRun {
  ScaleSchedule schedule;
  CentralValueTable table;
  std::vector<CharacterRecord> records;
};

SchemeRun scheme_run(u64 q, const ScheduleConfig& cfg, unsigned threads) {
  SchemeRun run{build_schedule(q, 0.5, cfg), central_values_even_primitive(build_context(q)), {}};
  run.records = compute_records(run.table, run.schedule, 0.5 * run.schedule.loglog_q, threads);
  return run;
}

CriterionResult c12_partition(const VerifyOptions& o) {
  std::size_t runs = 0;
  std::string detail;
  bool ok = true;
  for (u64 q : {1009ull, 10000ull, 10007ull})
    for (bool toy : {true, false}) {
      const auto run = scheme_run(q, toy ? ScheduleConfig::toy() : ScheduleConfig::standard(), o.threads);
      for (double V : {-1.0, 0.0, 0.25, 0.5, 1.0, 1.5, 2.0}) {
        ++runs;
        try {
          const auto pc = partition_counts(run.records, V);
          std::size_t h = 0;
          for (const auto& r : run.records)
            if (!r.sentinel() && r.log_abs() > V) ++h;
          const std::size_t sum = std::accumulate(pc.cells.begin(), pc.cells.end(), std::size_t{0});
          if (sum != h || pc.h_total != h) {
            ok = false;
            detail += fmt::format("q={} V={}: cells sum {} vs |H| {}; ", q, V, sum, h);
          }
        } catch (const InvariantViolation& e) {
          ok = false;
          detail += fmt::format("q={} V={}: {}; ", q, V, e.what());
        }
      }
    }
  return result(12, "partition exactness", ok, fmt::format("{} scheme runs{}{}", runs, ok ? "" : ": ", detail));
}

CriterionResult c13_parameters(const VerifyOptions&) {
  double worst_a = -INFINITY, worst_s = -INFINITY;
  for (int i = 1; i <= 19; ++i) {
    const double kappa = 0.05 * i;
    const auto m = validate_parameters(kappa, 1e3, 1e5 / (1.0 - kappa));
    worst_a = std::max(worst_a, m.afix);
    worst_s = std::max(worst_s, m.s2fix);
  }
  return result(13, "parameter inequalities", worst_a < 0.0 && worst_s < 0.0,
                fmt::format("kappa in {{0.05,...,0.95}}: largest margins {:.4e}, {:.4e}", worst_a, worst_s));
}

CriterionResult c14_mollifier_lemma(const VerifyOptions& o) {
  const u64 q = 10007;
  const auto run = scheme_run(q, ScheduleConfig::toy(), o.threads);
  std::size_t holds = 0, fails = 0, skipped = 0;
  double min_slack = INFINITY;
  for (const auto& rec : run.records)
    for (int l = 1; l <= run.schedule.top_level(); ++l) {
      const auto chk = mollifier_inequality_check(rec, run.schedule, l, 1.0);
      if (chk.status == CheckStatus::skipped) {
        ++skipped;
        continue;
      }
      (chk.status == CheckStatus::holds ? holds : fails)++;
      min_slack = std::min(min_slack, chk.slack);
    }
  return result(14, "pointwise mollifier inequality", fails == 0 && holds > 0,
                fmt::format("q={}, toy ladder L={}, E=1: {} hold, {} fail, {} skipped, min slack {:.4e}", q,
                            run.schedule.top_level(), holds, fails, skipped, min_slack));
}

CriterionResult c15_b_transform(const VerifyOptions&) {
  bool ok = true;
  std::string detail = "eta = 0 in R(q); ";
  for (u64 q : {1009ull, 10007ull}) {
    const auto table = central_values_even_primitive(build_context(q));
    bool exact = true;
    for (u64 m1 : {1ull, 2ull, 3ull, 7ull})
      for (u64 m2 : {1ull, 5ull, 11ull})
        for (u64 c : {2ull, 3ull, 13ull, 101ull}) {
          const cd a = b_transform(table, m1, m2).value;
          const cd b = b_transform(table, c * m1, c * m2).value;
          if (a != b) exact = false;
        }
    const cd b11 = b_transform(table, 1, 1).value;
    CompensatedSum acc;
    for (const auto& cv : table.values) acc.add(std::abs(cv.value) * std::abs(cv.value));
    const double diff = std::abs(b11 - cd(acc.value(), 0.0));
    const double ratio = b_transform(table, 1, 1).ratio;
    const bool in = exact && diff <= 1e-6 && ratio >= 0.5 && ratio <= 2.0;
    ok = ok && in;
    detail += fmt::format("q={}: copfactor {}, |B(1,1) - sum|L|^2| = {:.3e}, B(1,1)/leading = {:.4f}; ", q,
                          exact ? "exact" : "VIOLATED", diff, ratio);
  }
  return result(15, "B-transform", ok, detail);
}

CriterionResult c16_moment_from_tail(const VerifyOptions&) {
  const u64 q = 10000;
  const auto table = central_values_even_primitive(build_context(q));
  const auto sq = abs_squares(table);
  const double direct = class_moment(q, CharacterClass::even_primitive, sq, 0.5).value;
  const auto logs = log_abs_values(table);
  const double tail = moment_from_tail(logs, 0.5);
  const double rel = std::abs(direct - tail) / direct;
  return result(16, "moment from tail", rel <= 0.01,
                fmt::format("q={}, beta=0.5: direct={:.10f} from tail={:.10f} relative difference {:.3e}", q, direct,
                            tail, rel));
}

constexpr Criterion kCriteria[] = {
    {1, "orthogonality", c1_orthogonality},
    {2, "class-sum", c2_class_sum},
    {3, "gauss", c3_gauss},
    {4, "lvalues", c4_dual_lvalues},
    {5, "second-moment", c5_second_moment},
    {6, "fractional-moments", c6_fractional},
    {7, "tail", c7_tail},
    {8, "theta", c8_theta},
    {9, "diagonal", c9_diagonal},
    {10, "random-model", c10_random_model},
    {11, "real-twist", c11_real_twist},
    {12, "partition", c12_partition},
    {13, "parameters", c13_parameters},
    {14, "mollifier-lemma", c14_mollifier_lemma},
    {15, "b-transform", c15_b_transform},
    {16, "moment-from-tail", c16_moment_from_tail},
};

}  // namespace

std::span<const Criterion> criteria() { return kCriteria; }

CriterionResult run_suite(std::string_view suite, const VerifyOptions& opts) {
  for (const auto& c : kCriteria)
    if (c.suite == suite || std::to_string(c.id) == suite) return c.run(opts);
  throw DomainError("unknown verify suite: " + std::string(suite));
}

std::vector<CriterionResult> run_all(const VerifyOptions& opts) {
  std::vector<CriterionResult> out;
  for (const auto& c : kCriteria) out.push_back(c.run(opts));
  return out;
}

OrthogonalityCheck even_orthogonality(const ContextPtr& ctx, std::span<const cd> a) {
  const u64 q = ctx->q();
  if (2 * a.size() >= q) throw PreconditionError("orthogonality needs N < q/2");
  std::vector<cd> f(ctx->phi(), cd{});
  CompensatedSum rhs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const u64 n = i + 1;
    const auto idx = ctx->unit_index(n % q);
    if (idx == ModulusContext::kNotUnit) continue;
    f[idx] += a[i];
    rhs.add(std::norm(a[i]));
  }
  const auto F = character_transform(*ctx, f);
  CompensatedSum lhs;
  for (const auto& chi : enumerate_class(ctx, CharacterClass::even)) lhs.add(std::norm(F[chi.index()]));
  return {2.0 * lhs.value() / static_cast<double>(ctx->phi()), rhs.value()};
}

}  // namespace lq
