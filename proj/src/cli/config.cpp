#include "lqlab/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lq::cli {

using nlohmann::json;

namespace {

template <class T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

template <class T>
void get_opt(const json& j, const char* key, std::optional<T>& v) {
  if (!j.contains(key) || j[key].is_null()) {
    v.reset();
    return;
  }
  v = j[key].get<T>();
}

template <class T>
void get(const json& j, const char* key, T& v) {
  if (j.contains(key)) v = j[key].get<T>();
}

}  // namespace

ScheduleConfig ExperimentConfig::schedule_config() const {
  ScheduleConfig c = toy_mode ? ScheduleConfig::toy() : ScheduleConfig::standard();
  if (s_param) c.s_param = s_param;
  if (mollifier_cap_exponent) c.mollifier_cap_exponent = *mollifier_cap_exponent;
  if (lemma_exponent) c.lemma_exponent = *lemma_exponent;
  c.eta = eta;
  return c;
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["command"] = command;
  j["q"] = q;
  j["class"] = cls;
  j["method"] = method;
  j["kappa"] = kappa;
  put_opt(j, "V", V);
  j["V_grid"] = V_grid;
  j["beta_grid"] = beta_grid;
  j["level"] = level;
  j["toy_mode"] = toy_mode;
  put_opt(j, "s_param", s_param);
  put_opt(j, "mollifier_cap_exponent", mollifier_cap_exponent);
  put_opt(j, "lemma_exponent", lemma_exponent);
  j["eta"] = eta;
  j["primes"] = primes;
  j["c1"] = c1;
  j["c2"] = c2;
  j["primes_max"] = primes_max;
  j["trials"] = trials;
  j["seed"] = seed;
  j["suite"] = suite;
  put_opt(j, "qmax", qmax);
  j["output"] = output;
  j["format"] = format;
  j["cache"] = cache;
  j["no_cache"] = no_cache;
  j["threads"] = threads;
  return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  ExperimentConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    get(j, "command", c.command);
    get(j, "q", c.q);
    get(j, "class", c.cls);
    get(j, "method", c.method);
    get(j, "kappa", c.kappa);
    get_opt(j, "V", c.V);
    get(j, "V_grid", c.V_grid);
    get(j, "beta_grid", c.beta_grid);
    get(j, "level", c.level);
    get(j, "toy_mode", c.toy_mode);
    get_opt(j, "s_param", c.s_param);
    get_opt(j, "mollifier_cap_exponent", c.mollifier_cap_exponent);
    get_opt(j, "lemma_exponent", c.lemma_exponent);
    get(j, "eta", c.eta);
    get(j, "primes", c.primes);
    get(j, "c1", c.c1);
    get(j, "c2", c.c2);
    get(j, "primes_max", c.primes_max);
    get(j, "trials", c.trials);
    get(j, "seed", c.seed);
    get(j, "suite", c.suite);
    get_opt(j, "qmax", c.qmax);
    get(j, "output", c.output);
    get(j, "format", c.format);
    get(j, "cache", c.cache);
    get(j, "no_cache", c.no_cache);
    get(j, "threads", c.threads);
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config: ") + e.what());
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

void ExperimentConfig::save(const std::string& path) const {
  std::ofstream out(path);
  out << to_json() << '\n';
  if (!out) throw std::runtime_error("cannot write config " + path);
}

void validate(const ExperimentConfig& c) {
  static const char* const commands[] = {"characters", "lvalues", "moments", "tail",  "twist",
                                         "theta",      "random-model", "scheme", "verify"};
  if (std::find(std::begin(commands), std::end(commands), c.command) == std::end(commands))
    throw UsageError("unknown command '" + c.command + "'");
  const bool needs_q = c.command == "characters" || c.command == "lvalues" || c.command == "moments" ||
                       c.command == "tail" || c.command == "twist" || c.command == "scheme";
  if (needs_q && c.q.empty()) throw UsageError(c.command + " needs --q");
  for (u64 q : c.q)
    if (q < 3) throw UsageError("q must be at least 3");
  if (!(c.kappa > 0.0 && c.kappa < 1.0)) throw UsageError("kappa must lie in (0, 1)");
  if (c.method != "afe" && c.method != "hurwitz") throw UsageError("method must be afe or hurwitz");
  if (c.format != "csv" && c.format != "json") throw UsageError("format must be csv or json");
  if (c.threads == 0) throw UsageError("threads must be positive");
  if (c.command == "random-model" && c.trials < 1000) throw UsageError("random-model needs at least 1000 trials");
  if (c.level < 0) throw UsageError("level must be nonnegative");
  for (double b : c.beta_grid)
    if (!(b >= 0.0)) throw UsageError("beta values must be nonnegative");
}

}  // namespace lq::cli
