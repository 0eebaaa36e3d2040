#pragma once

#include <stdexcept>
#include <string>

namespace lq {

// Input outside the mathematical domain of an operation (q < 3, s = 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A computation would exceed a sieve, table, or combinatorial size limit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-side guardrail (length cap, lemma hypothesis) does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internally asserted identity failed. Always a bug or a numerical breakdown.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lq
