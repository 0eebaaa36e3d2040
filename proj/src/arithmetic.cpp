#include "lqlab/arithmetic.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "lqlab/errors.hpp"
#include "lqlab/summation.hpp"

namespace lq {

int FactoredInteger::valuation(u64 p) const {
  for (const auto& f : factors)
    if (f.prime == p) return f.exponent;
  return 0;
}

PrimeTable::PrimeTable(u64 limit) : limit_(limit) {
  if (limit < 2) throw DomainError("sieve limit must be at least 2");
  if (limit > kMaxSieveLimit) throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds 2^32");
  // bit i marks odd number 2i+1 as composite
  const u64 n_odd = limit / 2 + 1;
  odd_composite_bits_.assign(n_odd / 64 + 1, 0);
  auto set = [&](u64 i) { odd_composite_bits_[i >> 6] |= std::uint64_t{1} << (i & 63); };
  auto get = [&](u64 i) { return (odd_composite_bits_[i >> 6] >> (i & 63)) & 1u; };
  set(0);  // 1 is not prime
  for (u64 p = 3; p * p <= limit; p += 2) {
    if (get(p / 2)) continue;
    for (u64 m = p * p; m <= limit; m += 2 * p) set(m / 2);
  }
  primes_.push_back(2);
  for (u64 n = 3; n <= limit; n += 2)
    if (!get(n / 2)) primes_.push_back(n);
}

bool PrimeTable::is_prime(u64 n) const {
  if (n > limit_) throw ResourceError("is_prime query beyond sieve limit");
  if (n < 2) return false;
  if (n == 2) return true;
  if (n % 2 == 0) return false;
  const u64 i = n / 2;
  return !((odd_composite_bits_[i >> 6] >> (i & 63)) & 1u);
}

std::span<const u64> PrimeTable::primes_in(double lo, double hi) const {
  if (!(hi > lo)) return {};
  if (hi >= static_cast<double>(limit_) + 1.0) throw ResourceError("prime interval beyond sieve limit");
  auto first = std::upper_bound(primes_.begin(), primes_.end(), lo,
                                [](double v, u64 p) { return v < static_cast<double>(p); });
  auto last = std::upper_bound(primes_.begin(), primes_.end(), hi,
                               [](double v, u64 p) { return v < static_cast<double>(p); });
  if (last <= first) return {};
  return {&*first, static_cast<std::size_t>(last - first)};
}

std::shared_ptr<const PrimeTable> PrimeTable::covering(u64 limit) {
  static std::mutex mu;
  static std::shared_ptr<const PrimeTable> table;
  std::lock_guard<std::mutex> lock(mu);
  if (!table || table->limit() < limit) {
    u64 target = std::max<u64>(limit, 1u << 16);
    if (table) target = std::max(target, std::min<u64>(2 * table->limit(), kMaxSieveLimit));
    table = std::make_shared<const PrimeTable>(std::max(target, limit));
  }
  return table;
}

std::vector<u64> sieve_primes(u64 limit) {
  if (limit < 2) throw DomainError("sieve limit must be at least 2");
  PrimeTable t(limit);
  auto ps = t.primes();
  return {ps.begin(), ps.end()};
}

FactoredInteger factorize(u64 n) {
  if (n == 0) throw DomainError("cannot factorize 0");
  FactoredInteger out;
  out.value = n;
  u64 m = n;
  auto pull = [&](u64 p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) out.factors.push_back({p, e});
  };
  pull(2);
  pull(3);
  for (u64 d = 5; d <= m / d; d += 6) {
    pull(d);
    pull(d + 2);
  }
  if (m > 1) out.factors.push_back({m, 1});
  return out;
}

u64 expand(const std::vector<PrimePower>& factors) {
  u64 v = 1;
  for (const auto& f : factors)
    for (int i = 0; i < f.exponent; ++i) v *= f.prime;
  return v;
}

MultiplicativeValues mult_functions(const FactoredInteger& n) {
  MultiplicativeValues r{1, 1, 1, 0};
  for (const auto& f : n.factors) {
    r.mobius = (f.exponent >= 2) ? 0 : -r.mobius;
    u64 pk = 1;
    for (int i = 1; i < f.exponent; ++i) pk *= f.prime;
    r.phi *= pk * (f.prime - 1);
    r.tau *= static_cast<u64>(f.exponent + 1);
    r.big_omega += f.exponent;
  }
  return r;
}

int mobius(u64 n) { return mult_functions(factorize(n)).mobius; }
u64 euler_phi(u64 n) { return mult_functions(factorize(n)).phi; }

int omega_in_interval(const FactoredInteger& n, double lo, double hi) {
  int count = 0;
  for (const auto& f : n.factors) {
    const double p = static_cast<double>(f.prime);
    if (p > lo && p <= hi) count += f.exponent;
  }
  return count;
}

double prime_reciprocal_sum(double lo, double hi) {
  if (!(hi > lo) || hi < 2.0) return 0.0;
  const auto table = PrimeTable::covering(static_cast<u64>(std::floor(hi)));
  CompensatedSum s;
  for (u64 p : table->primes_in(lo, hi)) s.add(1.0 / static_cast<double>(p));
  return s.value();
}

std::vector<u64> divisors(const FactoredInteger& n) {
  std::vector<u64> out{1};
  for (const auto& f : n.factors) {
    const std::size_t base = out.size();
    u64 pk = 1;
    for (int e = 1; e <= f.exponent; ++e) {
      pk *= f.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<u64> squarefree_divisors(const FactoredInteger& n) {
  std::vector<u64> out{1};
  for (const auto& f : n.factors) {
    const std::size_t base = out.size();
    for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * f.prime);
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 mod_mul(u64 a, u64 b, u64 mod) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % mod);
}

u64 mod_pow(u64 base, u64 exp, u64 mod) {
  if (mod == 1) return 0;
  u64 r = 1;
  base %= mod;
  while (exp) {
    if (exp & 1) r = mod_mul(r, base, mod);
    base = mod_mul(base, base, mod);
    exp >>= 1;
  }
  return r;
}

u64 mod_reduce(i64 n, u64 mod) {
  const i64 m = static_cast<i64>(mod);
  i64 r = n % m;
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // deterministic for 64-bit inputs
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mod_mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 next_prime(u64 n) {
  if (n <= 2) return 2;
  u64 c = n | 1;
  while (!is_prime(c)) c += 2;
  return c;
}

}  // namespace lq
