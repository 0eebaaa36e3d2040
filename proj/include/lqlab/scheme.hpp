#pragma once

#include <optional>
#include <vector>

#include "lqlab/lcentral.hpp"
#include "lqlab/schedule.hpp"

namespace lq {

struct ParameterMargins {
  double afix;   // 1 + s (kappa^2 - A^2 + 2 kappa)
  double s2fix;  // 1/2 + kappa^2 + 2 (kappa - 1) s
  bool ok() const { return afix < 0.0 && s2fix < 0.0; }
};
ParameterMargins validate_parameters(double kappa, double A_const, double s_param);

// Index l runs over 0..L; level 0 is the full sample space.
struct EventFlags {
  std::vector<bool> A, B, C, D, G;
  bool H = false;
};

struct CharacterRecord {
  std::uint32_t index = 0;
  CentralValue central;
  std::vector<cd> s_tilde;       // S~_{n_l}
  std::vector<double> s_real;    // S_{n_l}, computed independently
  std::vector<cd> mollifier;     // M_l(chi, 1/2); entry 0 is 1
  std::vector<cd> mollifier_product;  // M_1 ... M_l
  EventFlags flags;

  double log_abs() const { return central.log_abs; }
  bool sentinel() const { return central.is_sentinel(); }
};

// Flags from the stored values under the defining inequalities, with H at threshold V.
EventFlags evaluate_flags(const CharacterRecord& rec, const ScaleSchedule& schedule, double V);

// chi must be even and primitive. The q^{1/2} length guard on the mollifier
// product is not applied here: the toy ladder exceeds it at desk-scale q.
CharacterRecord compute_record(const DirichletCharacter& chi, const CentralValue& cv, const ScaleSchedule& schedule,
                               double V);
std::vector<CharacterRecord> compute_records(const CentralValueTable& table, const ScaleSchedule& schedule, double V,
                                             unsigned threads = 1);

// cells[0] = H & ~G_1, cells[l] = H & G_l & ~G_{l+1} (0 < l < L), cells[L] = H & G_L.
// With L = 0 the single cell is H.
struct PartitionCounts {
  double V = 0.0;
  std::vector<std::size_t> cells;
  std::size_t h_total = 0;
  std::size_t sentinels = 0;
  std::size_t records = 0;
};
// Recomputes H at V; throws InvariantViolation if any record in H lands in
// zero or several cells, or if the flags are not nested.
PartitionCounts partition_counts(const std::vector<CharacterRecord>& records, double V);

enum class CheckStatus { holds, fails, skipped };
struct InequalityCheck {
  CheckStatus status = CheckStatus::skipped;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
};
// e^{-(S_{n_l} - S_{n_{l-1}})} <= (1 + e^{-n_{l-1}}) |M_l| + e^{-E (n_l - n_{l-1})},
// skipped unless |S~_{n_l} - S~_{n_{l-1}}| <= 10^3 (n_l - n_{l-1}).
InequalityCheck mollifier_inequality_check(const CharacterRecord& rec, const ScaleSchedule& schedule, int l,
                                           std::optional<double> exponent_override = std::nullopt);

}  // namespace lq
