#pragma once

#include <span>
#include <vector>

#include "lqlab/characters.hpp"

namespace lq {

// F(chi) = sum over units a of f(a) chi(a), for every character at once.
// Input and output are indexed row-major by exponent vectors (unit index /
// character index), so this is a multi-dimensional DFT over the component orders.
std::vector<cd> character_transform(const ModulusContext& ctx, std::span<const cd> f_by_unit_index);

// Sum_n w_n chi(n) over a fixed sparse support, one character at a time,
// through the gathered phase kernel.
class SparseCharacterSum {
 public:
  explicit SparseCharacterSum(ContextPtr ctx);

  // Terms with gcd(n, q) > 1 are dropped (chi(n) = 0).
  void add(i64 n, cd weight);
  std::size_t size() const { return wre_.size(); }

  cd evaluate(const DirichletCharacter& chi) const;
  // Sum_n w_n conj(chi(n)).
  cd evaluate_conjugate(const DirichletCharacter& chi) const;

 private:
  cd run(const DirichletCharacter& chi, bool conjugate) const;
  ContextPtr ctx_;
  std::vector<u64> residues_;
  std::vector<double> wre_;
  std::vector<double> wim_;
};

// Same values as character_transform, computed by the direct O(phi^2) route.
std::vector<cd> character_transform_direct(const ContextPtr& ctx, std::span<const cd> f_by_unit_index);

}  // namespace lq
