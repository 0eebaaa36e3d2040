#include "lqlab/theta.hpp"

#include <cmath>
#include <numeric>

#include "lqlab/errors.hpp"
#include "lqlab/summation.hpp"

namespace lq {
namespace {

void check_support(const FactoredInteger& c, std::span<const u64> primes) {
  for (const auto& f : c.factors) {
    bool found = false;
    for (u64 p : primes) found = found || (p == f.prime);
    if (!found) throw DomainError("theta arguments must be supported on the given primes");
  }
}

cd xi(u64 p, int a, int b, double beta) {
  const double pd = static_cast<double>(p);
  const double lp = std::log(pd);
  cd s = 0.0;
  for (int d1 = 0; d1 <= 1; ++d1)
    for (int d2 = 0; d2 <= 1; ++d2) {
      const int top = std::max(a + d1, b + d2);
      const int e = d1 + d2 + 2 * std::min(a, b) - 2 * std::min(a + d1, b + d2);
      const double sign = ((d1 + d2) % 2) ? -1.0 : 1.0;
      s += sign * std::pow(pd, -top) * std::polar(1.0, beta * e * lp);
    }
  return s;
}

cd phi_beta(const FactoredInteger& c1, const FactoredInteger& c2, std::span<const u64> primes, double beta) {
  cd prod = 1.0;
  for (u64 p : primes) prod *= xi(p, c1.valuation(p), c2.valuation(p), beta);
  return prod;
}

// mu(f1) mu(f2) / lcm and log U over all squarefree f1, f2 on the primes
template <class Fn>
void for_each_pair(const FactoredInteger& c1, const FactoredInteger& c2, std::span<const u64> primes, Fn&& fn) {
  const std::size_t n = primes.size();
  if (n > 20) throw ResourceError("too many primes for the direct theta sum");
  const u64 g12 = std::gcd(c1.value, c2.value);
  for (u64 m1 = 0; m1 < (u64{1} << n); ++m1)
    for (u64 m2 = 0; m2 < (u64{1} << n); ++m2) {
      u64 f1 = 1, f2 = 1;
      int sign = 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (m1 >> i & 1) {
          f1 *= primes[i];
          sign = -sign;
        }
        if (m2 >> i & 1) {
          f2 *= primes[i];
          sign = -sign;
        }
      }
      const u64 a = c1.value * f1;
      const u64 b = c2.value * f2;
      const u64 G = std::gcd(a, b);
      const double lcm = static_cast<double>(a / G) * static_cast<double>(b);
      const double log_u = std::log(static_cast<double>(f1)) + std::log(static_cast<double>(f2)) +
                           2.0 * std::log(static_cast<double>(g12)) - 2.0 * std::log(static_cast<double>(G));
      fn(sign / lcm, log_u);
    }
}

}  // namespace

cd theta_beta(const FactoredInteger& c1, const FactoredInteger& c2, std::span<const u64> primes, double beta) {
  if (!(beta > 0.0)) throw DomainError("theta_beta requires beta > 0");
  check_support(c1, primes);
  check_support(c2, primes);
  const cd diff = phi_beta(c1, c2, primes, beta) - phi_beta(c1, c2, primes, -beta);
  return diff / cd(0.0, 2.0 * beta);
}

double theta_beta_direct(const FactoredInteger& c1, const FactoredInteger& c2, std::span<const u64> primes,
                         double beta) {
  if (!(beta > 0.0)) throw DomainError("theta_beta requires beta > 0");
  check_support(c1, primes);
  check_support(c2, primes);
  CompensatedSum s;
  for_each_pair(c1, c2, primes, [&](double w, double log_u) { s.add(w * std::sin(beta * log_u) / beta); });
  return s.value();
}

double theta_limit_direct(const FactoredInteger& c1, const FactoredInteger& c2, std::span<const u64> primes) {
  check_support(c1, primes);
  check_support(c2, primes);
  CompensatedSum s;
  for_each_pair(c1, c2, primes, [&](double w, double log_u) { s.add(w * log_u); });
  return s.value();
}

int differing_primes(const FactoredInteger& c1, const FactoredInteger& c2, std::span<const u64> primes) {
  int count = 0;
  for (u64 p : primes)
    if (c1.valuation(p) != c2.valuation(p)) ++count;
  return count;
}

double theta_limit(const FactoredInteger& c1, const FactoredInteger& c2, std::span<const u64> primes) {
  check_support(c1, primes);
  check_support(c2, primes);
  const int diff = differing_primes(c1, c2, primes);
  if (diff >= 2) return 0.0;
  if (diff == 0) {
    double prod = 1.0 / static_cast<double>(c1.value);
    CompensatedSum s;
    for (u64 p : primes) {
      const double pd = static_cast<double>(p);
      prod *= 1.0 - 1.0 / pd;
      s.add(2.0 * std::log(pd) / (pd - 1.0));
    }
    return -prod * s.value();
  }
  double value = 1.0;
  for (u64 p : primes) {
    const double pd = static_cast<double>(p);
    const int m = std::max(c1.valuation(p), c2.valuation(p));
    const double local = (pd - 1.0) / std::pow(pd, m + 1);
    value *= (c1.valuation(p) != c2.valuation(p)) ? local * std::log(pd) : local;
  }
  return value;
}

double theta_extrapolated(const FactoredInteger& c1, const FactoredInteger& c2, std::span<const u64> primes,
                          double beta1, double beta2) {
  const double t1 = theta_beta(c1, c2, primes, beta1).real();
  const double t2 = theta_beta(c1, c2, primes, beta2).real();
  return t2 - beta2 * (t1 - t2) / (beta1 - beta2);
}

}  // namespace lq
