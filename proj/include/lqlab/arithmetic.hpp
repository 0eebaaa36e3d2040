#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace lq {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
  u64 prime;
  int exponent;
  bool operator==(const PrimePower&) const = default;
};

struct FactoredInteger {
  u64 value = 1;
  std::vector<PrimePower> factors;  // ascending primes, exponents >= 1

  int valuation(u64 p) const;
  bool operator==(const FactoredInteger&) const = default;
};

struct MultiplicativeValues {
  int mobius;
  u64 phi;
  u64 tau;
  int big_omega;
};

// Primes <= limit in ascending order. Throws DomainError when limit < 2.
std::vector<u64> sieve_primes(u64 limit);

// Immutable, shared sieve. Tables are cached per process and only grow.
class PrimeTable {
 public:
  static std::shared_ptr<const PrimeTable> covering(u64 limit);

  u64 limit() const { return limit_; }
  std::span<const u64> primes() const { return primes_; }
  // Primes p with lo < p <= hi.
  std::span<const u64> primes_in(double lo, double hi) const;
  bool is_prime(u64 n) const;

  explicit PrimeTable(u64 limit);

 private:
  u64 limit_;
  std::vector<std::uint64_t> odd_composite_bits_;
  std::vector<u64> primes_;
};

// Upper bound on sieve limits accepted by interval helpers.
inline constexpr u64 kMaxSieveLimit = u64{1} << 32;

FactoredInteger factorize(u64 n);
u64 expand(const std::vector<PrimePower>& factors);
MultiplicativeValues mult_functions(const FactoredInteger& n);

int mobius(u64 n);
u64 euler_phi(u64 n);

// Sum of exponents of primes p | n with lo < p <= hi.
int omega_in_interval(const FactoredInteger& n, double lo, double hi);

// Sum of 1/p over primes lo < p <= hi, ascending order, compensated.
double prime_reciprocal_sum(double lo, double hi);

std::vector<u64> divisors(const FactoredInteger& n);
std::vector<u64> squarefree_divisors(const FactoredInteger& n);

u64 mod_pow(u64 base, u64 exp, u64 mod);
u64 mod_mul(u64 a, u64 b, u64 mod);
// Reduces a possibly negative integer into [0, mod).
u64 mod_reduce(i64 n, u64 mod);

// Smallest prime >= n.
u64 next_prime(u64 n);
bool is_prime(u64 n);

}  // namespace lq
