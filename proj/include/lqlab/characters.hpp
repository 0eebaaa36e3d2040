#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "lqlab/arithmetic.hpp"

namespace lq {

using cd = std::complex<double>;

enum class CharacterClass { all, even, primitive, even_primitive };

std::string_view class_name(CharacterClass c);
CharacterClass parse_class(std::string_view name);  // throws DomainError

// e^{2 pi i k / n}, exact at multiples of a quarter turn and with
// unit_root(n - k, n) == conj(unit_root(k, n)) bit for bit.
cd unit_root(u64 k, u64 n);

struct CyclicComponent {
  enum class Kind { odd_prime_power, minus_one, five };
  u64 generator;  // residue mod q, trivial at the other prime powers
  std::uint32_t order;
  u64 prime;
  int prime_exponent;  // a in p^a || q
  Kind kind;
};

class ModulusContext {
 public:
  static constexpr std::uint32_t kNotUnit = 0xFFFFFFFFu;

  u64 q() const { return q_; }
  u64 phi() const { return phi_; }
  // Exponent of the unit group: every character value is a power of e^{2 pi i / L}.
  u64 root_order() const { return root_order_; }
  const FactoredInteger& factorization() const { return factorization_; }
  std::span<const CyclicComponent> components() const { return components_; }
  std::size_t rank() const { return components_.size(); }
  bool has_primitive_characters() const { return q_ % 4 != 2; }

  bool is_unit(i64 n) const { return unit_index_[mod_reduce(n, q_)] != kNotUnit; }
  // Row-major flattening of the exponent vector of a unit; kNotUnit otherwise.
  std::uint32_t unit_index(u64 residue) const { return unit_index_[residue % q_]; }
  u64 unit_residue(std::uint32_t index) const { return unit_residue_[index]; }
  // Discrete logs of a unit residue, one per component.
  std::span<const std::uint32_t> dlog(u64 residue) const;

  std::span<const double> root_cos() const { return root_cos_; }
  std::span<const double> root_sin() const { return root_sin_; }
  cd root(u64 k) const { return {root_cos_[k], root_sin_[k]}; }

  // Row-major strides shared by unit indices and character indices.
  std::span<const std::uint32_t> strides() const { return strides_; }

  friend std::shared_ptr<const ModulusContext> build_context(u64 q);

 private:
  ModulusContext() = default;
  u64 q_ = 0;
  u64 phi_ = 0;
  u64 root_order_ = 1;
  FactoredInteger factorization_;
  std::vector<CyclicComponent> components_;
  std::vector<std::uint32_t> strides_;
  std::vector<std::uint32_t> unit_index_;
  std::vector<u64> unit_residue_;
  std::vector<std::uint32_t> dlog_;
  std::vector<double> root_cos_;
  std::vector<double> root_sin_;
};

using ContextPtr = std::shared_ptr<const ModulusContext>;

// Throws DomainError for q < 3; warns when q = 2 mod 4 (no primitive characters).
ContextPtr build_context(u64 q);

class DirichletCharacter {
 public:
  DirichletCharacter(ContextPtr ctx, std::vector<std::uint32_t> exponents);

  const ModulusContext& context() const { return *ctx_; }
  const ContextPtr& context_ptr() const { return ctx_; }
  u64 modulus() const { return ctx_->q(); }
  std::span<const std::uint32_t> exponents() const { return exponents_; }
  std::uint32_t index() const { return index_; }
  int parity() const { return parity_; }
  u64 conductor() const { return conductor_; }
  bool primitive() const { return conductor_ == ctx_->q(); }
  bool is_even() const { return parity_ == 1; }
  bool is_principal() const;
  bool is_real() const;  // values in {0, 1, -1}

  // Phase k with chi(a) = e^{2 pi i k / L}; a must be a unit residue.
  u64 phase(u64 unit_residue) const;
  cd operator()(i64 n) const;
  DirichletCharacter conjugate() const;

 private:
  ContextPtr ctx_;
  std::vector<std::uint32_t> exponents_;
  std::vector<u64> weights_;  // e_i * (L / order_i)
  std::uint32_t index_ = 0;
  int parity_ = 1;
  u64 conductor_ = 1;
};

inline cd evaluate(const DirichletCharacter& chi, i64 n) { return chi(n); }

DirichletCharacter character_from_index(const ContextPtr& ctx, std::uint32_t index);
std::vector<DirichletCharacter> enumerate_class(const ContextPtr& ctx, CharacterClass cls);
bool in_class(const DirichletCharacter& chi, CharacterClass cls);

struct ConductorInfo {
  u64 conductor;
  bool primitive;
};
// Uses the local structure of each prime-power component.
ConductorInfo conductor_and_primitivity(const DirichletCharacter& chi);
// Least f | q with chi(n) = 1 for every unit n = 1 mod f; O(q * tau(q)).
ConductorInfo conductor_brute_force(const DirichletCharacter& chi);

// tau(chi) = sum_{a=1}^{q} chi(a) e^{2 pi i a / q}, direct compensated summation.
cd gauss_sum(const DirichletCharacter& chi);

struct ClassSum {
  cd direct;          // sum over the class of chi(m)
  double formula;     // Moebius-side value (half-integer for even_primitive)
};

// primitive: sum_{vw=q, m = 1 mod w} mu(v) phi(w), asserted equal to the direct sum.
// even_primitive: (direct(m) + direct(-m)) / 2 and the same combination of formulas.
ClassSum char_class_sum(const ContextPtr& ctx, i64 m, CharacterClass cls);

}  // namespace lq
