#include "lqlab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lqlab/errors.hpp"
#include "lqlab/log.hpp"
#include "lqlab/parallel.hpp"
#include "lqlab/summation.hpp"

namespace lq {
namespace {

double safe_ratio(double v, double c) { return c > 0.0 ? v / c : std::numeric_limits<double>::quiet_NaN(); }

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

const CharacterRecord& record_for(const std::vector<CharacterRecord>& records, std::size_t i, std::uint32_t index) {
  if (i >= records.size() || records[i].index != index) throw PreconditionError("records do not match the table");
  return records[i];
}

double length_fraction(const ScaleSchedule& s) {
  return s.config.toy_mode ? s.config.toy_length_fraction : s.config.halting_fraction;
}

double level_scale(const ScaleSchedule& s, int l) {
  const double log_q = std::log(static_cast<double>(s.q));
  return l == 0 ? log_q : log_q / std::log(s.level(l).q_l);
}

template <class Value>
double direct_twisted(const CentralValueTable& table, const std::vector<CharacterRecord>& records, int l, Value value) {
  CompensatedSum s;
  for (std::size_t i = 0; i < table.characters.size(); ++i) {
    const auto& rec = record_for(records, i, table.characters[i].index());
    if (static_cast<std::size_t>(l) >= rec.mollifier_product.size()) throw DomainError("level beyond the records");
    s.add(std::norm(table.values[i].value * rec.mollifier_product[static_cast<std::size_t>(l)] *
                    value(table.characters[i])));
  }
  return s.value() / static_cast<double>(table.characters.size());
}

}  // namespace

MomentReport class_moment(u64 q, CharacterClass cls, std::span<const double> values, double power) {
  if (values.empty()) throw DomainError("moment over an empty class");
  CompensatedSum s;
  for (double v : values) s.add(std::pow(v, power));
  MomentReport r;
  r.q = q;
  r.cls = cls;
  r.beta = power;
  r.value = s.value() / static_cast<double>(values.size());
  r.comparator = std::pow(std::log(static_cast<double>(q)), power * power);
  r.ratio = safe_ratio(r.value, r.comparator);
  return r;
}

std::vector<double> abs_squares(const CentralValueTable& table) {
  std::vector<double> v;
  v.reserve(table.values.size());
  for (const auto& cv : table.values) v.push_back(std::norm(cv.value));
  return v;
}

std::vector<double> log_abs_values(const CentralValueTable& table) {
  std::vector<double> v;
  v.reserve(table.values.size());
  for (const auto& cv : table.values) v.push_back(cv.log_abs);
  return v;
}

TailReport tail_count(const CentralValueTable& table, double V) {
  TailReport r;
  r.q = table.ctx->q();
  r.V = V;
  for (const auto& cv : table.values)
    if (!cv.is_sentinel() && cv.log_abs > V) ++r.count;
  r.count_norm = static_cast<double>(r.count) / static_cast<double>(table.ctx->phi());
  const double ll = std::log(std::log(static_cast<double>(r.q)));
  r.gaussian_bound = std::isinf(V) ? 0.0 : std::exp(-V * V / ll) / std::sqrt(ll);
  r.ratio = safe_ratio(r.count_norm, r.gaussian_bound);
  return r;
}

TwistedMomentReport twisted_second_moment(const CentralValueTable& table, const std::vector<CharacterRecord>& records,
                                          const DirichletPolynomial& Q, const ScaleSchedule& schedule, int l) {
  const u64 q = table.ctx->q();
  if (q != schedule.q) throw PreconditionError("schedule and table moduli differ");
  if (l < 0 || l > schedule.top_level()) throw DomainError("level out of range");
  if (Q.support() && !Q.satisfies_support()) throw PreconditionError("Q violates its support descriptor");
  const double log_q = std::log(static_cast<double>(q));
  if (Q.length() > 0 && std::log(static_cast<double>(Q.length())) > length_fraction(schedule) * log_q)
    throw PreconditionError("Q is longer than the length guardrail");
  if (2 * Q.length() >= q) throw PreconditionError("Q must be shorter than q/2");

  CompensatedSum coeff_side;
  for (const auto& [n, a] : Q.coeffs())
    if (std::gcd(n, q) == 1) coeff_side.add(std::norm(a) / static_cast<double>(n));
  // orthogonality over the even characters, checked against direct summation
  const double direct_even = even_mean(table.ctx, [&](const DirichletCharacter& chi) {
    return std::norm(eval_at_half(Q, chi));
  });
  if (std::abs(direct_even - coeff_side.value()) > 1e-8 * std::max(1.0, coeff_side.value()))
    throw InvariantViolation("even-character orthogonality failed for Q");

  TwistedMomentReport r;
  r.q = q;
  r.level = l;
  r.eta = schedule.config.eta;
  r.direct = direct_twisted(table, records, l, [&](const DirichletCharacter& chi) { return eval_at_half(Q, chi); });
  r.orthogonal_side = coeff_side.value();
  r.scale = level_scale(schedule, l);
  r.ratio = safe_ratio(r.direct, r.orthogonal_side * r.scale);
  return r;
}

TwistedMomentReport twisted_second_moment(const CentralValueTable& table, const std::vector<CharacterRecord>& records,
                                          const TwistCoefficients& F, const ScaleSchedule& schedule, int l) {
  const u64 q = table.ctx->q();
  if (q != schedule.q) throw PreconditionError("schedule and table moduli differ");
  if (l < 0 || l > schedule.top_level()) throw DomainError("level out of range");
  u64 len = 1;
  for (const auto& [mr, c] : F.entries) len = std::max({len, mr.first, mr.second});
  if (std::log(static_cast<double>(len)) > length_fraction(schedule) * std::log(static_cast<double>(q)))
    throw PreconditionError("F is longer than the length guardrail");
  TwistedMomentReport r;
  r.q = q;
  r.level = l;
  r.eta = schedule.config.eta;
  r.orthogonal_side = twist_mean_square_mod(F, q);
  r.direct = direct_twisted(table, records, l, [&](const DirichletCharacter& chi) { return F.evaluate(chi); });
  r.scale = level_scale(schedule, l);
  r.ratio = safe_ratio(r.direct, r.orthogonal_side * r.scale);
  return r;
}

BTransform b_transform(const CentralValueTable& table, u64 m1, u64 m2, double eta) {
  const ModulusContext& ctx = *table.ctx;
  const u64 q = ctx.q();
  if (m1 == 0 || m2 == 0 || std::gcd(m1, q) != 1 || std::gcd(m2, q) != 1)
    throw DomainError("B-transform arguments must be coprime to q");
  const u64 L = ctx.root_order();
  const u64 r1 = m1 % q, r2 = m2 % q;
  ComplexCompensatedSum s;
  for (std::size_t i = 0; i < table.characters.size(); ++i) {
    const auto& chi = table.characters[i];
    // chi(m1) conj chi(m2) through the phase difference, so B(c m1, c m2) = B(m1, m2) bit for bit
    const u64 k = (chi.phase(r1) + L - chi.phase(r2)) % L;
    s.add(ctx.root(k) * std::norm(table.values[i].value));
  }
  BTransform b;
  b.value = s.value();
  const double qd = static_cast<double>(q);
  const double mm = static_cast<double>(m1) * static_cast<double>(m2);
  const double phi_plus = static_cast<double>(table.characters.size());
  b.comparator = phi_plus * static_cast<double>(ctx.phi()) / (qd * std::sqrt(mm)) *
                 (2.0 * log_r_of_q(q, eta) - std::log(mm));
  b.ratio = safe_ratio(b.value.real(), b.comparator);
  return b;
}

double moment_from_tail(std::span<const double> log_abs, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0, 1)");
  if (log_abs.empty()) throw DomainError("no values");
  std::vector<double> v;
  for (double x : log_abs)
    if (x != kLogAbsSentinel) v.push_back(x);
  const double N = static_cast<double>(log_abs.size());
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  // S(V) = #{x > V} / N is constant on [v_i, v_{i+1}); the part below v_0 is
  // the boundary term e^{2 beta v_0} S(-inf).
  CompensatedSum total;
  total.add(std::exp(2.0 * beta * v.front()) * static_cast<double>(v.size()) / N);
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double S = static_cast<double>(v.size() - 1 - i) / N;
    if (v[i + 1] > v[i]) total.add(S * (std::exp(2.0 * beta * v[i + 1]) - std::exp(2.0 * beta * v[i])));
  }
  return total.value();
}

PartialSumMoments partial_sum_moment_suite(const ContextPtr& ctx, double n, double m, int k, unsigned threads) {
  if (k < 0) throw DomainError("k must be nonnegative");
  if (n > m) throw DomainError("need n <= m");
  const u64 q = ctx->q();
  const double log_q = std::log(static_cast<double>(q));
  if (2.0 * k > log_q / (3.0 * std::exp(m))) throw PreconditionError("2k exceeds log q / (3 log q_m)");
  const auto chars = enumerate_class(ctx, CharacterClass::even_primitive);
  if (chars.empty()) throw DomainError("no even primitive characters");
  std::vector<double> a(chars.size()), b(chars.size());
  parallel_for(chars.size(), threads, [&](std::size_t i) {
    const cd dt = s_tilde(chars[i], m) - s_tilde(chars[i], n);
    const double dr = s_real(chars[i], m) - s_real(chars[i], n);
    a[i] = std::pow(std::abs(dt), 2 * k);
    b[i] = std::pow(std::abs(dr), 2 * k);
  });
  auto report = [&](const std::vector<double>& vals, double comparator) {
    MomentReport r;
    r.q = q;
    r.cls = CharacterClass::even_primitive;
    r.beta = k;
    r.value = compensated_total(vals) / static_cast<double>(vals.size());
    r.comparator = comparator;
    r.ratio = safe_ratio(r.value, comparator);
    return r;
  };
  return {report(a, factorial(k) * std::pow(m - n + 1.0, k)),
          report(b, factorial(2 * k) / (std::pow(4.0, k) * factorial(k)) * std::pow(m - n, k))};
}

}  // namespace lq
