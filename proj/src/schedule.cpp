#include "lqlab/schedule.hpp"

#include <cmath>
#include <limits>

#include "lqlab/errors.hpp"

namespace lq {

ScheduleConfig ScheduleConfig::standard() { return ScheduleConfig{}; }

ScheduleConfig ScheduleConfig::toy() {
  ScheduleConfig c;
  c.toy_mode = true;
  c.s_param = 1.0;
  c.mollifier_cap_exponent = 1.0;
  c.twist_cap_exponent = 1.0;
  c.lemma_exponent = 1.0;
  return c;
}

int ScaleSchedule::omega_cap(int l) const {
  const double cap = level(l).mollifier_cap;
  if (!(cap < 1073741824.0)) return 1 << 30;
  return static_cast<int>(std::floor(cap));
}

double iterated_log(double q, int k, double floor, bool* floored) {
  double v = q;
  bool hit = false;
  for (int i = 1; i <= k; ++i) {
    v = std::log(v);
    if (i >= 2 && !(v >= floor)) {
      v = floor;
      hit = true;
    }
  }
  if (floored) *floored = hit;
  return v;
}

ScaleSchedule build_schedule(u64 q, double kappa, const ScheduleConfig& config) {
  if (!(kappa > 0.0 && kappa < 1.0)) throw DomainError("kappa must lie in (0, 1)");
  const double qd = static_cast<double>(q);
  if (!(q >= 3 && std::log(std::log(qd)) > 0.0)) throw DomainError("q too small: log log q must be positive");
  ScaleSchedule sch;
  sch.q = q;
  sch.kappa = kappa;
  sch.config = config;
  sch.s_param = config.s_param.value_or(config.toy_mode ? 1.0 : 1e5 / (1.0 - kappa));
  sch.loglog_q = std::log(std::log(qd));
  const double s = sch.s_param;
  const double log_q = std::log(qd);

  auto make_level = [&](int l, double q_l, double n_prev, double c_prev, bool first) {
    ScaleLevel lv{};
    lv.q_l = q_l;
    lv.n_l = std::log(std::log(q_l));
    lv.log_iter = iterated_log(qd, l + 2, config.loglog_floor, &lv.floor_binds);
    lv.lower = kappa * lv.n_l - s * lv.log_iter;
    lv.upper = kappa * lv.n_l + s * lv.log_iter;
    if (first) {
      lv.c_l = 1.0;
      lv.mollifier_cap = 0.0;
    } else {
      lv.c_l = c_prev * (1.0 + std::exp(-n_prev));
      const double dn = lv.n_l - n_prev;
      lv.mollifier_cap = 10.0 * std::pow(dn, config.mollifier_cap_exponent);
    }
    return lv;
  };

  sch.levels.push_back(make_level(0, 1.5, 0.0, 1.0, true));
  std::vector<ScaleLevel> candidates;
  std::vector<bool> halting_ok;
  constexpr int kMaxLevels = 64;
  for (int l = 1; l <= kMaxLevels; ++l) {
    bool floored = false;
    const double denom = std::pow(iterated_log(qd, l + 1, config.loglog_floor, &floored), s);
    const double q_l = std::exp(log_q / denom);
    const ScaleLevel& prev = candidates.empty() ? sch.levels[0] : candidates.back();
    if (!(q_l > prev.q_l)) {
      if (l == 1) sch.notes.push_back("ladder does not rise above q_0: q_1 <= 1.5");
      break;
    }
    ScaleLevel lv = make_level(l, q_l, prev.n_l, prev.c_l, false);
    bool ok;
    if (config.toy_mode) {
      ok = std::log(q_l) <= config.toy_length_fraction * log_q;
      if (!ok) break;
    } else {
      // c (log_{l+2} q)^{s - e} <= theta, evaluated in logs
      const double lhs = std::log(config.halting_constant) + (s - config.halting_exponent) * std::log(lv.log_iter);
      ok = lhs <= std::log(config.halting_fraction);
    }
    candidates.push_back(lv);
    halting_ok.push_back(ok);
  }
  int top = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (halting_ok[i]) top = static_cast<int>(i) + 1;
  for (int l = 1; l <= top; ++l) sch.levels.push_back(candidates[static_cast<std::size_t>(l - 1)]);
  for (const auto& lv : sch.levels)
    if (lv.floor_binds) sch.floor_binds = true;
  if (sch.floor_binds) sch.notes.push_back("iterated-log floor binds on this ladder");
  if (top <= 1) {
    sch.degenerate = true;
    sch.notes.push_back("degenerate ladder: top level " + std::to_string(top));
  }
  return sch;
}

}  // namespace lq
