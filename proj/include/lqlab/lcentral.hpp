#pragma once

#include <limits>
#include <string_view>
#include <vector>

#include "lqlab/characters.hpp"

namespace lq {

enum class EvalMethod { afe, hurwitz };
std::string_view method_name(EvalMethod m);

inline constexpr double kLogAbsSentinel = -std::numeric_limits<double>::infinity();

struct CentralValue {
  cd value;
  double log_abs = kLogAbsSentinel;
  EvalMethod method = EvalMethod::afe;
  double est_error = 0.0;

  bool is_sentinel() const { return log_abs == kLogAbsSentinel; }
};

// log|value|, or the sentinel when |value| <= est_error.
double log_abs_central(const CentralValue& cv);
CentralValue make_central_value(cd value, EvalMethod method, double est_error);

// L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q). Principal characters are rejected.
CentralValue l_value_direct(const DirichletCharacter& chi, cd s);

// Weights n^{-1/2} V(n sqrt(pi/q)) for n = 1..N, cut where V < 1e-14.
struct AfeKernel {
  u64 q = 0;
  std::vector<double> weights;  // weights[n-1]
  double tail_bound = 0.0;      // bound on the dropped part of one sum
  double weight_total = 0.0;
};
AfeKernel make_afe_kernel(u64 q);

// Smoothed approximate functional equation; chi must be even and primitive.
CentralValue l_central_afe(const DirichletCharacter& chi);
CentralValue l_central_afe(const DirichletCharacter& chi, const AfeKernel& kernel);

struct CentralValueTable {
  ContextPtr ctx;
  std::vector<DirichletCharacter> characters;  // even primitive, lexicographic
  std::vector<CentralValue> values;
};

// All even primitive central values at once via two character transforms
// (the folded AFE weights and the additive character a -> e(a/q)).
CentralValueTable central_values_even_primitive(const ContextPtr& ctx);

// Per-character Hurwitz route for the same class; the slow oracle.
CentralValueTable central_values_hurwitz(const ContextPtr& ctx, unsigned threads = 1);

}  // namespace lq
