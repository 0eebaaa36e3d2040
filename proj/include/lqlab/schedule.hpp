#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lqlab/arithmetic.hpp"

namespace lq {

// Constants of the large-deviation scheme. The standard values are asymptotic
// devices; toy() lowers them so the ladder is non-trivial at desk scale.
struct ScheduleConfig {
  bool toy_mode = false;
  std::optional<double> s_param;         // standard default 1e5 / (1 - kappa), toy default 1
  double A_const = 1e3;
  double D_const = 1e4;
  double mollifier_cap_exponent = 1e5;   // E in the Omega cap 10 (n_l - n_{l-1})^E
  double twist_cap_exponent = 1e4;       // exponent in nu_j = 10 (n_j - n_{j-1})^E / d_j
  double lemma_exponent = 1e5;           // E in e^{-E (n_l - n_{l-1})} of the pointwise mollifier bound
  double halting_constant = 1e6;         // standard mode: c (log_{l+2} q)^{s - e} <= theta
  double halting_exponent = 1e5;
  double halting_fraction = 0.01;
  double toy_length_fraction = 0.75;     // toy mode: q_l <= q^theta
  double loglog_floor = 1.5;
  double eta = 0.0;                      // additive term in log R(q)

  static ScheduleConfig standard();
  static ScheduleConfig toy();
  bool operator==(const ScheduleConfig&) const = default;
};

struct ScaleLevel {
  double q_l;
  double n_l;
  double log_iter;        // log_{l+2} q after flooring
  double lower;           // L_l = kappa n_l - s log_{l+2} q
  double upper;           // U_l = kappa n_l + s log_{l+2} q
  double c_l;             // prod_{j<=l} (1 + e^{-n_{j-1}})
  double mollifier_cap;   // 10 (n_l - n_{l-1})^E, may be +inf; 0 at l = 0
  bool floor_binds;
};

struct ScaleSchedule {
  u64 q = 0;
  double kappa = 0.5;
  double s_param = 0.0;
  double loglog_q = 0.0;
  ScheduleConfig config;
  std::vector<ScaleLevel> levels;  // index 0..L
  bool degenerate = false;
  bool floor_binds = false;
  std::vector<std::string> notes;

  int top_level() const { return static_cast<int>(levels.size()) - 1; }
  const ScaleLevel& level(int l) const { return levels.at(static_cast<std::size_t>(l)); }
  // Integer Omega cap of level l (>= 1), saturated at 2^30.
  int omega_cap(int l) const;
};

// log_k q iterated k times, with every iterate from k = 2 on floored at `floor`.
double iterated_log(double q, int k, double floor, bool* floored = nullptr);

// Throws DomainError for kappa outside (0,1) or log log q <= 0.
ScaleSchedule build_schedule(u64 q, double kappa, const ScheduleConfig& config = ScheduleConfig::standard());

}  // namespace lq
