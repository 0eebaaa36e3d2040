#pragma once

#include <span>
#include <string>
#include <vector>

#include "lqlab/dirichlet_poly.hpp"
#include "lqlab/lcentral.hpp"
#include "lqlab/scheme.hpp"
#include "lqlab/twist.hpp"

namespace lq {

struct MomentReport {
  u64 q = 0;
  CharacterClass cls = CharacterClass::even_primitive;
  double beta = 0.0;  // power, or k for integer moments
  double value = 0.0;
  double comparator = 0.0;
  double ratio = 0.0;  // value / comparator, NaN when comparator <= 0
};

// (1/n) sum values^power with comparator (log q)^{power^2}. For |L|^{2 beta}
// pass |L|^2 and power beta.
MomentReport class_moment(u64 q, CharacterClass cls, std::span<const double> values, double power);
std::vector<double> abs_squares(const CentralValueTable& table);

struct TailReport {
  u64 q = 0;
  double V = 0.0;
  double count_norm = 0.0;      // #{log|L| > V} / phi(q)
  double gaussian_bound = 0.0;  // e^{-V^2 / loglog q} / sqrt(loglog q)
  double ratio = 0.0;
  std::size_t count = 0;
};
TailReport tail_count(const CentralValueTable& table, double V);

struct TwistedMomentReport {
  u64 q = 0;
  int level = 0;
  double direct = 0.0;           // E+[|L M_1..M_l Q|^2]
  double orthogonal_side = 0.0;  // E_even[|Q|^2] from the coefficients
  double scale = 0.0;            // log q / log q_l (log q at l = 0)
  double ratio = 0.0;            // direct / orthogonal_side / scale
  double eta = 0.0;
};
// Q must be well-factorable with log length <= theta log q, theta = 0.01
// (toy schedules use their length fraction); else PreconditionError. The
// coefficient-side mean is asserted against the direct even-character mean.
TwistedMomentReport twisted_second_moment(const CentralValueTable& table, const std::vector<CharacterRecord>& records,
                                          const DirichletPolynomial& Q, const ScaleSchedule& schedule, int l);
// Same with an l-sufficient function; the coefficient side is the exact mod-q mean.
TwistedMomentReport twisted_second_moment(const CentralValueTable& table, const std::vector<CharacterRecord>& records,
                                          const TwistCoefficients& F, const ScaleSchedule& schedule, int l);

struct BTransform {
  cd value;
  double comparator = 0.0;  // phi+(q) phi(q) / (q sqrt(m1 m2)) log(R^2 / (m1 m2)), eta = 0
  double ratio = 0.0;
};
// B(m1, m2) = sum over even primitive chi of chi(m1) conj chi(m2) |L|^2.
BTransform b_transform(const CentralValueTable& table, u64 m1, u64 m2, double eta = 0.0);

// Exact integral of 2 beta e^{2 beta V} S(V) over the right-continuous
// empirical survival function, plus the boundary term at the smallest value.
double moment_from_tail(std::span<const double> log_abs, double beta);
std::vector<double> log_abs_values(const CentralValueTable& table);

struct PartialSumMoments {
  MomentReport complex_sum;  // E+|S~_m - S~_n|^{2k} vs k! (m - n + 1)^k
  MomentReport real_sum;     // E+|S_m - S_n|^{2k} vs (2k)!/(4^k k!) (m - n)^k
};
// n > m is a DomainError; 2k > log q / (3 e^m) is a PreconditionError.
PartialSumMoments partial_sum_moment_suite(const ContextPtr& ctx, double n, double m, int k, unsigned threads = 1);

}  // namespace lq
