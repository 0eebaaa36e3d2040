#include "lqlab/transform.hpp"

#include <fftw3.h>

#include <mutex>

#include "lqlab/errors.hpp"
#include "lqlab/simd.hpp"

namespace lq {
namespace {

std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

std::vector<cd> character_transform(const ModulusContext& ctx, std::span<const cd> f) {
  const std::size_t n = ctx.phi();
  if (f.size() != n) throw DomainError("transform input must have phi(q) entries");
  std::vector<int> dims;
  for (const auto& c : ctx.components()) dims.push_back(static_cast<int>(c.order));
  fftw_complex* buf = fftw_alloc_complex(n);
  if (!buf) throw ResourceError("fftw allocation failed");
  for (std::size_t i = 0; i < n; ++i) {
    buf[i][0] = f[i].real();
    buf[i][1] = f[i].imag();
  }
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    // FFTW_ESTIMATE keeps the algorithm choice, and so the rounding, fixed run to run.
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!plan) {
    fftw_free(buf);
    throw ResourceError("fftw planning failed");
  }
  fftw_execute(plan);
  std::vector<cd> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {buf[i][0], buf[i][1]};
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);
  return out;
}

SparseCharacterSum::SparseCharacterSum(ContextPtr ctx) : ctx_(std::move(ctx)) {}

void SparseCharacterSum::add(i64 n, cd weight) {
  const u64 a = mod_reduce(n, ctx_->q());
  if (ctx_->unit_index(a) == ModulusContext::kNotUnit) return;
  residues_.push_back(a);
  wre_.push_back(weight.real());
  wim_.push_back(weight.imag());
}

cd SparseCharacterSum::run(const DirichletCharacter& chi, bool conjugate) const {
  if (chi.context_ptr() != ctx_ && chi.modulus() != ctx_->q()) throw DomainError("character modulus mismatch");
  thread_local std::vector<std::uint32_t> idx;
  idx.resize(residues_.size());
  const u64 L = ctx_->root_order();
  for (std::size_t j = 0; j < residues_.size(); ++j) {
    const u64 k = chi.phase(residues_[j]);
    idx[j] = static_cast<std::uint32_t>(conjugate ? (L - k) % L : k);
  }
  return simd::phase_dot(wre_.data(), wim_.data(), idx.data(), idx.size(), ctx_->root_cos().data(),
                         ctx_->root_sin().data());
}

cd SparseCharacterSum::evaluate(const DirichletCharacter& chi) const { return run(chi, false); }

cd SparseCharacterSum::evaluate_conjugate(const DirichletCharacter& chi) const { return run(chi, true); }

std::vector<cd> character_transform_direct(const ContextPtr& ctx, std::span<const cd> f) {
  if (f.size() != ctx->phi()) throw DomainError("transform input must have phi(q) entries");
  SparseCharacterSum sum(ctx);
  for (std::uint32_t i = 0; i < ctx->phi(); ++i) sum.add(static_cast<i64>(ctx->unit_residue(i)), f[i]);
  std::vector<cd> out(ctx->phi());
  for (std::uint32_t i = 0; i < ctx->phi(); ++i) out[i] = sum.evaluate(character_from_index(ctx, i));
  return out;
}

}  // namespace lq
