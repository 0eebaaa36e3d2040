#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>

#include "lqlab/characters.hpp"
#include "lqlab/schedule.hpp"

namespace lq {

// Prime support (lo, hi] with at most omega_bound prime factors counted with multiplicity.
struct SupportDescriptor {
  double lo;
  double hi;
  int omega_bound;
  bool operator==(const SupportDescriptor&) const = default;
};

class DirichletPolynomial {
 public:
  DirichletPolynomial() = default;
  explicit DirichletPolynomial(std::map<u64, cd> coeffs, std::optional<SupportDescriptor> support = std::nullopt);

  static DirichletPolynomial one();

  void set(u64 n, cd a);
  cd coeff(u64 n) const;
  const std::map<u64, cd>& coeffs() const { return coeffs_; }
  const std::optional<SupportDescriptor>& support() const { return support_; }
  void set_support(std::optional<SupportDescriptor> s) { support_ = s; }
  // Largest n with a stored coefficient (0 when empty).
  u64 length() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }
  bool satisfies_support() const;

  // sum |a_n|^2 / n: the even-character mean square when length < q/2.
  double mean_square_half() const;

  // Dirichlet convolution (coefficients of the product of the two series).
  DirichletPolynomial operator*(const DirichletPolynomial& other) const;

 private:
  std::map<u64, cd> coeffs_;
  std::optional<SupportDescriptor> support_;
};

// sum a_n chi(n) n^{-1/2}, ascending n, compensated.
cd eval_at_half(const DirichletPolynomial& P, const DirichletCharacter& chi);

// e^{e^k}
double partial_sum_cutoff(double k);

// sum_{p <= e^{e^k}} chi(p) p^{-1/2} + chi(p)^2 / (2p)
cd s_tilde(const DirichletCharacter& chi, double k);
// sum_{p <= e^{e^k}} Re[chi(p) p^{-1/2} + chi(p^2) / (2p)]
double s_real(const DirichletCharacter& chi, double k);
// The same summand over lo < p <= hi.
cd s_tilde_interval(const DirichletCharacter& chi, double lo, double hi);

// Explicit coefficients mu(n) on squarefree n with all primes in (lo, hi] and Omega(n) <= cap.
DirichletPolynomial mollifier_polynomial(double lo, double hi, int cap);
DirichletPolynomial mollifier_factor(const ScaleSchedule& schedule, int l);

// Value at 1/2 of mollifier_polynomial(lo, hi, cap), from truncated elementary
// symmetric functions of x_p = -chi(p)/sqrt(p); O(#primes * cap).
cd mollifier_value(const DirichletCharacter& chi, double lo, double hi, int cap);
// log of the largest index in the support of mollifier_polynomial(lo, hi, cap).
double mollifier_log_length(double lo, double hi, int cap);

enum class LengthGuard { enforce, off };
// prod_{j <= l} M_j(chi, 1/2). With the guard enforced, the product length must
// stay within q^{1/2}.
cd mollifier_product_eval(const DirichletCharacter& chi, const ScaleSchedule& schedule, int l,
                          LengthGuard guard = LengthGuard::enforce);

// log R = (1/2) log(q/pi) + (1/2) psi(1/4) + gamma + eta.
double log_r_of_q(u64 q, double eta = 0.0);
double r_of_q(u64 q, double eta = 0.0);

using IndexPair = std::pair<u64, u64>;
using TwistMatrix = std::map<IndexPair, cd>;

// sum x_{j1,k1} conj(x_{j2,k2}) g/(j1 j2 k1 k2) log(R^2 g^2 / (j1 j2 k1 k2)),
// g = (j1 k2, j2 k1), over index pairs coprime to q.
cd q_form_complex(const TwistMatrix& X, u64 q, double R);
double q_form(const TwistMatrix& X, u64 q, double R);

}  // namespace lq
