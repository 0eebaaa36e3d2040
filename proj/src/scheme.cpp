#include "lqlab/scheme.hpp"

#include <cmath>

#include "lqlab/dirichlet_poly.hpp"
#include "lqlab/errors.hpp"
#include "lqlab/parallel.hpp"

namespace lq {

ParameterMargins validate_parameters(double kappa, double A_const, double s_param) {
  return {1.0 + s_param * (kappa * kappa - A_const * A_const + 2.0 * kappa),
          0.5 + kappa * kappa + 2.0 * (kappa - 1.0) * s_param};
}

EventFlags evaluate_flags(const CharacterRecord& rec, const ScaleSchedule& schedule, double V) {
  const std::size_t n = schedule.levels.size();
  if (rec.s_tilde.size() != n || rec.s_real.size() != n || rec.mollifier_product.size() != n)
    throw PreconditionError("record does not match the schedule");
  EventFlags f;
  f.A.assign(n, true);
  f.B.assign(n, true);
  f.C.assign(n, true);
  f.D.assign(n, true);
  f.G.assign(n, true);
  const double abs_l2 = std::norm(rec.central.value);
  for (std::size_t l = 1; l < n; ++l) {
    const ScaleLevel& cur = schedule.levels[l];
    const ScaleLevel& prev = schedule.levels[l - 1];
    const double dn = cur.n_l - prev.n_l;
    f.A[l] = f.A[l - 1] && std::abs(rec.s_tilde[l] - rec.s_tilde[l - 1]) <= schedule.config.A_const * dn;
    f.B[l] = f.B[l - 1] && rec.s_real[l] <= cur.upper;
    f.C[l] = f.C[l - 1] && rec.s_real[l] >= cur.lower;
    const double lhs = abs_l2 * std::exp(-2.0 * rec.s_real[l]);
    const double rhs = cur.c_l * abs_l2 * std::norm(rec.mollifier_product[l]) +
                       std::exp(-schedule.config.D_const * (schedule.loglog_q - prev.n_l));
    f.D[l] = f.D[l - 1] && lhs <= rhs;
    f.G[l] = f.A[l] && f.B[l] && f.C[l] && f.D[l];
  }
  f.H = !rec.sentinel() && rec.log_abs() > V;
  return f;
}

CharacterRecord compute_record(const DirichletCharacter& chi, const CentralValue& cv, const ScaleSchedule& schedule,
                               double V) {
  if (!chi.is_even() || !chi.primitive()) throw DomainError("scheme records need even primitive characters");
  if (chi.modulus() != schedule.q) throw DomainError("character modulus differs from the schedule");
  CharacterRecord rec;
  rec.index = chi.index();
  rec.central = cv;
  const std::size_t n = schedule.levels.size();
  rec.s_tilde.resize(n);
  rec.s_real.resize(n);
  rec.mollifier.assign(n, cd(1.0, 0.0));
  rec.mollifier_product.assign(n, cd(1.0, 0.0));
  for (std::size_t l = 0; l < n; ++l) {
    const double n_l = schedule.levels[l].n_l;
    rec.s_tilde[l] = s_tilde(chi, n_l);
    rec.s_real[l] = s_real(chi, n_l);
    if (l > 0) {
      rec.mollifier[l] = mollifier_value(chi, schedule.levels[l - 1].q_l, schedule.levels[l].q_l,
                                         schedule.omega_cap(static_cast<int>(l)));
      rec.mollifier_product[l] = rec.mollifier_product[l - 1] * rec.mollifier[l];
    }
  }
  rec.flags = evaluate_flags(rec, schedule, V);
  return rec;
}

std::vector<CharacterRecord> compute_records(const CentralValueTable& table, const ScaleSchedule& schedule, double V,
                                             unsigned threads) {
  std::vector<CharacterRecord> out(table.characters.size());
  parallel_for(out.size(), threads, [&](std::size_t i) {
    out[i] = compute_record(table.characters[i], table.values[i], schedule, V);
  });
  return out;
}

PartitionCounts partition_counts(const std::vector<CharacterRecord>& records, double V) {
  PartitionCounts pc;
  pc.V = V;
  pc.records = records.size();
  if (records.empty()) return pc;
  const std::size_t n = records.front().flags.G.size();
  if (n == 0) throw PreconditionError("records carry no flags");
  const std::size_t top = n - 1;
  pc.cells.assign(n, 0);
  for (const auto& r : records) {
    const auto& G = r.flags.G;
    if (G.size() != n) throw PreconditionError("records come from different schedules");
    if (!G[0]) throw InvariantViolation("G_0 must be the full sample space");
    for (std::size_t l = 1; l < n; ++l)
      if ((G[l] && !G[l - 1]) || (r.flags.A[l] && !r.flags.A[l - 1]) || (r.flags.B[l] && !r.flags.B[l - 1]) ||
          (r.flags.C[l] && !r.flags.C[l - 1]) || (r.flags.D[l] && !r.flags.D[l - 1]))
        throw InvariantViolation("event flags are not nested");
    if (r.sentinel()) {
      ++pc.sentinels;
      continue;
    }
    if (!(r.log_abs() > V)) continue;
    ++pc.h_total;
    // first failing level, located by scanning
    std::size_t cell = top;
    for (std::size_t l = 1; l <= top; ++l)
      if (!G[l]) {
        cell = l - 1;
        break;
      }
    // membership of every cell tested separately
    std::size_t hits = 0;
    for (std::size_t c = 0; c <= top; ++c) {
      bool in;
      if (top == 0) in = true;
      else if (c == top) in = G[top];
      else in = G[c] && !G[c + 1];
      if (in) {
        ++hits;
        if (c != cell) throw InvariantViolation("cell assignment disagrees with membership");
      }
    }
    if (hits != 1) throw InvariantViolation("record in H lies in " + std::to_string(hits) + " cells");
    ++pc.cells[cell];
  }
  std::size_t total = 0;
  for (auto c : pc.cells) total += c;
  if (total != pc.h_total) throw InvariantViolation("cell counts do not sum to |H|");
  return pc;
}

InequalityCheck mollifier_inequality_check(const CharacterRecord& rec, const ScaleSchedule& schedule, int l,
                                           std::optional<double> exponent_override) {
  if (l < 1 || l > schedule.top_level()) throw DomainError("inequality check level out of range");
  const auto ul = static_cast<std::size_t>(l);
  const double n_prev = schedule.level(l - 1).n_l;
  const double dn = schedule.level(l).n_l - n_prev;
  InequalityCheck out;
  if (!(std::abs(rec.s_tilde[ul] - rec.s_tilde[ul - 1]) <= 1e3 * dn)) return out;
  const double E = exponent_override.value_or(schedule.config.lemma_exponent);
  out.lhs = std::exp(-(rec.s_real[ul] - rec.s_real[ul - 1]));
  out.rhs = (1.0 + std::exp(-n_prev)) * std::abs(rec.mollifier[ul]) + std::exp(-E * dn);
  out.slack = out.rhs - out.lhs;
  out.status = out.lhs <= out.rhs ? CheckStatus::holds : CheckStatus::fails;
  return out;
}

}  // namespace lq
