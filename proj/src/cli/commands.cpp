#include "lqlab/cli/commands.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lqlab/cli/cache.hpp"
#include "lqlab/cli/export.hpp"
#include "lqlab/errors.hpp"
#include "lqlab/log.hpp"
#include "lqlab/moments.hpp"
#include "lqlab/random_model.hpp"
#include "lqlab/scheme.hpp"
#include "lqlab/theta.hpp"
#include "lqlab/verify.hpp"

namespace lq::cli {
namespace {

using I = std::int64_t;

EvalMethod method_of(const ExperimentConfig& c) { return c.method == "hurwitz" ? EvalMethod::hurwitz : EvalMethod::afe; }

CentralValueTable values_for(const ExperimentConfig& c, u64 q) {
  const auto ctx = build_context(q);
  const auto path = default_cache_path(c.cache, c.no_cache);
  if (!path) return cached_central_values(ctx, method_of(c), nullptr, c.threads);
  LValueCache cache(*path, method_of(c));
  return cached_central_values(ctx, method_of(c), &cache, c.threads);
}

std::vector<double> v_grid(const ExperimentConfig& c, u64 q) {
  const double ll = std::log(std::log(static_cast<double>(q)));
  std::vector<double> out;
  if (c.V_grid == "auto") {
    for (int i = 1; i <= 10; ++i) out.push_back(0.1 * i * ll);
    return out;
  }
  std::stringstream ss(c.V_grid);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad V-grid entry '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty V-grid");
  return out;
}

Table cmd_characters(const ExperimentConfig& c) {
  Table t{{"q", "index", "parity", "conductor", "primitive", "real"}, {}};
  const CharacterClass cls = parse_class(c.cls);
  for (u64 q : c.q)
    for (const auto& chi : enumerate_class(build_context(q), cls))
      t.add({I(q), I(chi.index()), I(chi.parity()), I(chi.conductor()), I(chi.primitive()), I(chi.is_real())});
  return t;
}

Table cmd_lvalues(const ExperimentConfig& c) {
  Table t{{"q", "index", "re", "im", "log_abs", "est_error", "method"}, {}};
  for (u64 q : c.q) {
    const auto table = values_for(c, q);
    for (std::size_t i = 0; i < table.values.size(); ++i) {
      const auto& v = table.values[i];
      t.add({I(q), I(table.characters[i].index()), v.value.real(), v.value.imag(), v.log_abs, v.est_error,
             std::string(method_name(v.method))});
    }
  }
  return t;
}

Table cmd_moments(const ExperimentConfig& c) {
  Table t{{"q", "class", "beta", "moment", "comparator", "ratio"}, {}};
  for (u64 q : c.q) {
    const auto table = values_for(c, q);
    const auto sq = abs_squares(table);
    for (double beta : c.beta_grid) {
      const auto r = class_moment(q, CharacterClass::even_primitive, sq, beta);
      // Markov: the tail can never exceed e^{-2 beta V} times the moment
      for (double V : v_grid(c, q))
        if (tail_count(table, V).count_norm > std::exp(-2.0 * beta * V) * r.value * (1.0 + 1e-12))
          throw InvariantViolation("Markov consistency failed at q=" + std::to_string(q));
      t.add({I(q), std::string(class_name(r.cls)), beta, r.value, r.comparator, r.ratio});
    }
  }
  return t;
}

Table cmd_tail(const ExperimentConfig& c) {
  Table t{{"q", "V", "count_norm", "gaussian_bound", "ratio"}, {}};
  for (u64 q : c.q) {
    const auto table = values_for(c, q);
    for (double V : v_grid(c, q)) {
      const auto r = tail_count(table, V);
      t.add({I(q), V, r.count_norm, r.gaussian_bound, r.ratio});
    }
  }
  return t;
}

Table cmd_twist(const ExperimentConfig& c) {
  Table t{{"q", "level", "Q", "direct", "orthogonal_side", "scale", "ratio", "eta"}, {}};
  for (u64 q : c.q) {
    const auto sch = build_schedule(q, c.kappa, c.schedule_config());
    const auto table = values_for(c, q);
    const auto records = compute_records(table, sch, c.kappa * sch.loglog_q, c.threads);
    log::info("twisted moments use eta = " + std::to_string(c.eta) + " in R(q)");
    for (int l = 0; l <= sch.top_level(); ++l) {
      const auto one = twisted_second_moment(table, records, DirichletPolynomial::one(), sch, l);
      t.add({I(q), I(l), std::string("one"), one.direct, one.orthogonal_side, one.scale, one.ratio, one.eta});
      if (l == 0) continue;
      const double lo = sch.level(l - 1).q_l, hi = sch.level(l).q_l;
      DirichletPolynomial P;
      for (u64 p : PrimeTable::covering(static_cast<u64>(hi))->primes_in(static_cast<u64>(lo), static_cast<u64>(hi)))
        P.set(p, 1.0);
      P.set_support(SupportDescriptor{lo, hi, 1});
      const auto r = twisted_second_moment(table, records, P, sch, l);
      t.add({I(q), I(l), "primes(" + format_cell(lo) + "," + format_cell(hi) + "]", r.direct, r.orthogonal_side,
             r.scale, r.ratio, r.eta});
    }
  }
  return t;
}

Table cmd_theta(const ExperimentConfig& c) {
  Table t{{"c1", "c2", "differing", "theta_beta", "extrapolated", "limit", "limit_direct"}, {}};
  const std::vector<u64> primes = c.primes.empty() ? std::vector<u64>{2, 3, 5} : c.primes;
  const double beta = c.V.value_or(1e-3);
  std::vector<std::pair<u64, u64>> pairs;
  if (!c.c1.empty() || !c.c2.empty()) {
    if (c.c1.size() != c.c2.size()) throw UsageError("--c1 and --c2 need the same number of entries");
    for (std::size_t i = 0; i < c.c1.size(); ++i) pairs.push_back({c.c1[i], c.c2[i]});
  } else {
    std::vector<u64> cs{1};
    for (u64 p : primes) {
      const std::size_t n = cs.size();
      for (std::size_t i = 0; i < n; ++i) {
        cs.push_back(cs[i] * p);
        cs.push_back(cs[i] * p * p);
      }
    }
    std::sort(cs.begin(), cs.end());
    for (u64 a : cs)
      for (u64 b : cs) pairs.push_back({a, b});
  }
  for (const auto& [a, b] : pairs) {
    const auto f1 = factorize(a), f2 = factorize(b);
    t.add({I(a), I(b), I(differing_primes(f1, f2, primes)), theta_beta(f1, f2, primes, beta).real(),
           theta_extrapolated(f1, f2, primes), theta_limit(f1, f2, primes), theta_limit_direct(f1, f2, primes)});
  }
  return t;
}

Table cmd_random_model(const ExperimentConfig& c) {
  Table t{{"primes_max", "primes", "trials", "seed", "mean", "variance", "expected_variance", "ks_distance"}, {}};
  const auto primes = sieve_primes(c.primes_max);
  const auto r = mc_clt(primes, c.trials, c.seed, c.threads);
  t.add({I(c.primes_max), I(primes.size()), I(r.trials), std::to_string(c.seed), r.mean, r.variance,
         r.expected_variance, r.ks_distance});
  return t;
}

Table cmd_scheme(const ExperimentConfig& c) {
  Table t{{"q", "kappa", "V", "cell", "level", "q_l", "n_l", "lower", "upper", "c_l", "omega_cap", "count",
           "probability", "gaussian_bound"},
          {}};
  for (u64 q : c.q) {
    const auto sch = build_schedule(q, c.kappa, c.schedule_config());
    for (const auto& note : sch.notes) log::info("q=" + std::to_string(q) + ": " + note);
    const double V = c.V.value_or(c.kappa * sch.loglog_q);
    const auto table = values_for(c, q);
    const auto records = compute_records(table, sch, V, c.threads);
    const auto pc = partition_counts(records, V);
    std::size_t holds = 0, fails = 0, skipped = 0;
    for (const auto& rec : records)
      for (int l = 1; l <= sch.top_level(); ++l) {
        const auto chk = mollifier_inequality_check(rec, sch, l);
        (chk.status == CheckStatus::holds ? holds : chk.status == CheckStatus::fails ? fails : skipped)++;
      }
    log::info("q=" + std::to_string(q) + ": mollifier inequality " + std::to_string(holds) + " hold, " +
              std::to_string(fails) + " fail, " + std::to_string(skipped) + " skipped");
    const double ll = sch.loglog_q;
    const double bound = std::exp(-V * V / ll) / std::sqrt(ll);
    const double phi = static_cast<double>(table.ctx->phi());
    for (std::size_t cell = 0; cell < pc.cells.size(); ++cell) {
      const auto& lv = sch.level(static_cast<int>(cell));
      const std::string name = sch.top_level() == 0 ? "H"
                               : cell == 0 ? "H&~G1"
                               : cell == pc.cells.size() - 1
                                   ? "H&G" + std::to_string(cell)
                                   : "H&G" + std::to_string(cell) + "&~G" + std::to_string(cell + 1);
      t.add({I(q), c.kappa, V, name, I(cell), lv.q_l, lv.n_l, lv.lower, lv.upper, lv.c_l,
             I(sch.omega_cap(static_cast<int>(cell))), I(pc.cells[cell]), static_cast<double>(pc.cells[cell]) / phi,
             bound});
    }
  }
  return t;
}

int cmd_verify(const ExperimentConfig& c) {
  VerifyOptions opts;
  opts.threads = c.threads;
  opts.seed = c.seed;
  opts.qmax = c.qmax;
  std::vector<CriterionResult> results;
  if (c.suite == "all") results = run_all(opts);
  else results.push_back(run_suite(c.suite, opts));
  bool ok = true;
  Table t{{"id", "name", "passed", "detail"}, {}};
  for (const auto& r : results) {
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": " << r.detail << '\n';
    t.add({I(r.id), r.name, I(r.passed), r.detail});
    ok = ok && r.passed;
  }
  if (!c.output.empty()) export_table(t, c.output, c.format);
  return ok ? kExitOk : kExitAssertion;
}

void add_common(CLI::App& sub, ExperimentConfig& c) {
  sub.add_option("--q", c.q, "modulus or comma-separated moduli")->delimiter(',');
  sub.add_option("--threads", c.threads, "worker threads");
  sub.add_option("--output,-o", c.output, "output path (default stdout)");
  sub.add_option("--format", c.format, "csv or json");
  sub.add_option("--seed", c.seed, "random seed");
  sub.add_option("--cache", c.cache, "L-value cache file (default $LQLAB_CACHE_DIR/lvalues.jsonl)");
  sub.add_flag("--no-cache", c.no_cache, "do not read or write the cache");
  sub.add_option("--method", c.method, "afe or hurwitz");
  sub.add_option("--kappa", c.kappa, "slope in (0,1)");
  sub.add_option("--V", c.V, "threshold (theta: beta)");
  sub.add_option("--V-grid", c.V_grid, "'auto' or comma-separated thresholds");
  sub.add_option("--beta-grid", c.beta_grid, "comma-separated beta values")->delimiter(',');
  sub.add_flag("--toy", c.toy_mode, "use the toy schedule");
  sub.add_option("--s", c.s_param, "schedule parameter s");
  sub.add_option("--cap-exponent", c.mollifier_cap_exponent, "exponent of the mollifier Omega cap");
  sub.add_option("--lemma-exponent", c.lemma_exponent, "exponent in the pointwise mollifier bound");
  sub.add_option("--eta", c.eta, "additive term in log R(q)");
}

}  // namespace

int run(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.command == "verify") return cmd_verify(cfg);
  Table t;
  if (cfg.command == "characters") t = cmd_characters(cfg);
  else if (cfg.command == "lvalues") t = cmd_lvalues(cfg);
  else if (cfg.command == "moments") t = cmd_moments(cfg);
  else if (cfg.command == "tail") t = cmd_tail(cfg);
  else if (cfg.command == "twist") t = cmd_twist(cfg);
  else if (cfg.command == "theta") t = cmd_theta(cfg);
  else if (cfg.command == "random-model") t = cmd_random_model(cfg);
  else t = cmd_scheme(cfg);
  if (t.rows.empty()) {
    log::warn("no rows produced");
    return kExitOk;
  }
  export_table(t, cfg.output, cfg.format);
  return kExitOk;
}

int main_entry(int argc, char** argv) {
  ExperimentConfig cfg;
  // --config supplies defaults that explicit flags override
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") {
      try {
        cfg = ExperimentConfig::load(argv[i + 1]);
      } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
      }
    }
  CLI::App app{"lqlab: central values of Dirichlet L-functions and their large deviations"};
  app.set_version_flag("--version", std::string(LQLAB_VERSION));
  std::string config_path, dump_path;
  bool quiet = false;
  app.add_option("--config", config_path, "JSON experiment config");
  app.add_option("--dump-config", dump_path, "write the effective config as JSON");
  app.add_flag("--quiet", quiet, "suppress warnings");
  app.require_subcommand(0, 1);
  app.fallthrough();
  const std::pair<const char*, const char*> commands[] = {
      {"characters", "character table with parity, conductor and primitivity"},
      {"lvalues", "central values L(1/2, chi) of the even primitive characters"},
      {"moments", "fractional moments of |L(1/2, chi)| against (log q)^{beta^2}"},
      {"tail", "normalised tail counts against the Gaussian bound"},
      {"twist", "mollified twisted second moments along the schedule"},
      {"theta", "diagonal Euler products and their beta -> 0 limits"},
      {"random-model", "Monte-Carlo and exact moments of the random multiplicative model"},
      {"scheme", "schedule, event flags and partition counts"},
      {"verify", "run acceptance criteria"}};
  for (const auto& [n, description] : commands) {
    auto* sub = app.add_subcommand(n, description);
    add_common(*sub, cfg);
    if (std::string(n) == "characters") sub->add_option("--class", cfg.cls, "all|even|primitive|even_primitive");
    if (std::string(n) == "twist") sub->add_option("--level", cfg.level, "schedule level");
    if (std::string(n) == "theta") {
      sub->add_option("--primes", cfg.primes, "prime set")->delimiter(',');
      sub->add_option("--c1", cfg.c1, "first arguments")->delimiter(',');
      sub->add_option("--c2", cfg.c2, "second arguments")->delimiter(',');
    }
    if (std::string(n) == "random-model") {
      sub->add_option("--primes-max", cfg.primes_max, "largest prime");
      sub->add_option("--trials", cfg.trials, "Monte-Carlo trials");
    }
    if (std::string(n) == "verify") {
      sub->add_option("--suite", cfg.suite, "criterion suite name, id, or 'all'");
      sub->add_option("--qmax", cfg.qmax, "largest modulus for the exhaustive suites");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  log::set_quiet(quiet);
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (!dump_path.empty()) cfg.save(dump_path);
  if (cfg.command.empty()) {
    if (!dump_path.empty()) return kExitOk;
    std::cerr << app.help();
    return kExitUsage;
  }
  try {
    return run(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvariantViolation& e) {
    std::cerr << "assertion failed: " << e.what() << '\n';
    return kExitAssertion;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAssertion;
  }
}

}  // namespace lq::cli
