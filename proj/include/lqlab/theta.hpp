#pragma once

#include <span>

#include "lqlab/arithmetic.hpp"
#include "lqlab/characters.hpp"

namespace lq {

// Theta_beta(c1, c2) = (Phi_beta - Phi_{-beta}) / (2 i beta), Phi_beta an Euler
// product over `primes` of the local factors xi_beta(p, c1, c2).
cd theta_beta(const FactoredInteger& c1, const FactoredInteger& c2, std::span<const u64> primes, double beta);

// Same quantity by the double sum over squarefree f1, f2 built from `primes`:
// sum mu(f1) mu(f2) / [c1 f1, c2 f2] * sin(beta log U) / beta.
double theta_beta_direct(const FactoredInteger& c1, const FactoredInteger& c2, std::span<const u64> primes,
                         double beta);

// beta -> 0 limit in closed form:
//   c1 = c2:                   -(1/c1) prod (1 - 1/p) sum 2 log p / (p - 1)
//   one prime p* differs:      (p*-1) log p* / p*^{m*+1} * prod_{p != p*} (p-1)/p^{m_p+1}
//   two or more primes differ: 0
double theta_limit(const FactoredInteger& c1, const FactoredInteger& c2, std::span<const u64> primes);

// beta -> 0 limit of the direct double sum: sum mu mu / lcm * log U.
double theta_limit_direct(const FactoredInteger& c1, const FactoredInteger& c2, std::span<const u64> primes);

// Linear extrapolation of Re theta_beta from beta1 and beta2 to beta = 0.
double theta_extrapolated(const FactoredInteger& c1, const FactoredInteger& c2, std::span<const u64> primes,
                          double beta1 = 1e-3, double beta2 = 1e-4);

// Number of primes at which the valuations of c1 and c2 differ.
int differing_primes(const FactoredInteger& c1, const FactoredInteger& c2, std::span<const u64> primes);

}  // namespace lq
