#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lqlab/arithmetic.hpp"
#include "lqlab/schedule.hpp"

namespace lq::cli {

struct ExperimentConfig {
  std::string command;
  std::vector<u64> q;
  std::string cls = "even_primitive";
  std::string method = "afe";
  double kappa = 0.5;
  std::optional<double> V;
  std::string V_grid = "auto";
  std::vector<double> beta_grid = {0.25, 0.5, 0.75, 1.0};
  int level = 0;
  bool toy_mode = false;
  std::optional<double> s_param;
  std::optional<double> mollifier_cap_exponent;
  std::optional<double> lemma_exponent;
  double eta = 0.0;
  std::vector<u64> primes;
  std::vector<u64> c1;
  std::vector<u64> c2;
  u64 primes_max = 10000;
  std::size_t trials = 100000;
  u64 seed = 0x5EED2024ull;
  std::string suite = "all";
  std::optional<u64> qmax;
  std::string output;  // empty: stdout
  std::string format = "csv";
  std::string cache;   // empty: $LQLAB_CACHE_DIR or no cache
  bool no_cache = false;
  unsigned threads = 1;

  bool operator==(const ExperimentConfig&) const = default;

  ScheduleConfig schedule_config() const;
  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);  // throws UsageError
  static ExperimentConfig load(const std::string& path);
  void save(const std::string& path) const;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Checks the fields the chosen command relies on; throws UsageError.
void validate(const ExperimentConfig& cfg);

}  // namespace lq::cli
