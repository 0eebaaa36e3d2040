#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "lqlab/dirichlet_poly.hpp"

namespace lq {

// One factor K(Re sum_m b_m chi(m) m^{-1/2}) with b supported on primes and
// prime squares of a single interval.
struct RealTwistFactor {
  std::map<u64, cd> b;
  std::vector<double> K;  // K(x) = sum_i K[i] x^i
  double omega_cap = 0.0; // nu
  std::optional<std::pair<double, double>> interval;

  int degree() const;
  u64 length() const;  // largest m with b_m != 0
  // Throws DomainError when the support is not primes / prime squares in the interval.
  void validate() const;
  double value(const DirichletCharacter& chi) const;
};

// C_{m,r} with K(...) = sum C_{m,r} (mr)^{-1/2} chi(m) conj(chi(r)).
struct TwistCoefficients {
  TwistMatrix entries;

  // sum |C_{m,r}|^2 / (m r): the even-character mean of K^2 in the admissible case.
  double mean_square_diagonal() const;
  cd evaluate(const DirichletCharacter& chi) const;
  // Largest |C_{m,r} - conj(C_{r,m})|.
  double hermitian_defect() const;
};

TwistCoefficients real_twist_coeffs(const RealTwistFactor& f);
// Coefficients of the product of several factors (an l-sufficient function).
TwistCoefficients product_coeffs(const std::vector<TwistCoefficients>& parts);

// True when no two distinct cross products m1 r2 != r1 m2 of the support are
// congruent to each other or to each other's negative mod q; then the diagonal
// form is the exact even-character mean.
bool twist_admissible(const TwistCoefficients& c, u64 q);
// Exact even-character mean of |sum C (mr)^{-1/2} chi(m) conj chi(r)|^2 through
// E[chi(a) conj chi(b)] = [a = b] + [a = -b] (mod q). Support must be coprime to q.
double twist_mean_square_mod(const TwistCoefficients& c, u64 q);

// (2/phi(q)) sum over even chi of g(chi), compensated, lexicographic order.
double even_mean(const ContextPtr& ctx, const std::function<double(const DirichletCharacter&)>& g);

}  // namespace lq
