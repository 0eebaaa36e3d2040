#pragma once

#include <map>
#include <span>
#include <vector>

#include "lqlab/arithmetic.hpp"
#include "lqlab/characters.hpp"

namespace lq {

struct RealTwistFactor;

struct PhaseSample {
  u64 seed = 0;
  std::map<u64, cd> assignment;  // prime -> X(p), |X(p)| = 1

  cd at(u64 p) const;  // throws DomainError for an unassigned prime
};

// Uniform in [0, 1) from a counter-based stream keyed by (seed, prime).
double phase_uniform(u64 seed, u64 prime);
// Key for trial t of a run seeded with `seed`.
u64 trial_seed(u64 seed, u64 trial);

PhaseSample sample_phases(std::span<const u64> primes, u64 seed);
// prod X(p_i)^{a_i}
cd x_of(const PhaseSample& sample, const FactoredInteger& n);

// E[(sum_p Re a_p X(p))^{2k}] from the phase-balanced multinomial terms.
// At most 12 primes and 2k <= 12.
double exact_real_moment(const std::map<u64, cd>& coeffs, int k);
// (2k)! / (2^k k!) * s2^k
double gaussian_moment(double s2, int k);

struct MonteCarloMoment {
  double mean;
  double std_error;
};
MonteCarloMoment mc_real_moment(const std::map<u64, cd>& coeffs, int k, std::size_t trials, u64 seed);

struct CltSummary {
  double mean;               // of the normalised sum
  double variance;           // of the unnormalised sum
  double expected_variance;  // (1/2) sum 1/p
  double ks_distance;        // normalised sum vs N(0, 1)
  std::size_t trials;
};
// sum_p Re X(p) / sqrt(p), normalised by sqrt((1/2) sum 1/p).
CltSummary mc_clt(std::span<const u64> primes, std::size_t trials, u64 seed, unsigned threads = 1);

// Laurent polynomial in the phases X(p); the expectation keeps the monomials
// whose net exponent is zero at every prime.
class PhasePolynomial {
 public:
  using Monomial = std::map<u64, int>;  // prime -> net exponent, zeros removed

  static PhasePolynomial constant(cd c);
  // c * X(n) (conjugate: c * conj X(n))
  static PhasePolynomial term(const FactoredInteger& n, cd c, bool conjugate = false);

  PhasePolynomial operator+(const PhasePolynomial& o) const;
  PhasePolynomial operator*(const PhasePolynomial& o) const;
  PhasePolynomial scaled(cd c) const;
  cd expectation() const;
  std::size_t size() const { return terms_.size(); }

 private:
  std::map<Monomial, cd> terms_;
};

// E[X(n) conj X(m)] by the phase-balance evaluator.
cd random_cross_moment(u64 n, u64 m);
// E[K(Re sum b_m X(m) m^{-1/2})^2] by the phase-balance evaluator.
double random_twist_mean_square(const RealTwistFactor& f);

}  // namespace lq
