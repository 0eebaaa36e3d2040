#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lqlab/characters.hpp"

namespace lq {

struct VerifyOptions {
  unsigned threads = 1;
  u64 seed = 0x5EED2024ull;
  std::optional<u64> qmax;  // overrides the modulus range of the exhaustive suites
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string_view suite;
  CriterionResult (*run)(const VerifyOptions&);
};

std::span<const Criterion> criteria();
// Throws DomainError for an unknown suite name.
CriterionResult run_suite(std::string_view suite, const VerifyOptions& opts);
std::vector<CriterionResult> run_all(const VerifyOptions& opts);

// (2/phi(q)) sum over even chi of |sum a_n chi(n)|^2, and sum over (n, q) = 1 of |a_n|^2.
// a[n - 1] is the coefficient of n.
struct OrthogonalityCheck {
  double lhs;
  double rhs;
};
OrthogonalityCheck even_orthogonality(const ContextPtr& ctx, std::span<const cd> a);

}  // namespace lq
