#include "lqlab/lcentral.hpp"

#include <cmath>
#include <numbers>

#include "lqlab/errors.hpp"
#include "lqlab/parallel.hpp"
#include "lqlab/special.hpp"
#include "lqlab/summation.hpp"
#include "lqlab/transform.hpp"

namespace lq {

namespace {
constexpr double kAfeCutoff = 1e-14;
}

std::string_view method_name(EvalMethod m) { return m == EvalMethod::afe ? "afe" : "hurwitz"; }

double log_abs_central(const CentralValue& cv) {
  const double a = std::abs(cv.value);
  if (!(a > cv.est_error)) return kLogAbsSentinel;
  return std::log(a);
}

CentralValue make_central_value(cd value, EvalMethod method, double est_error) {
  CentralValue cv{value, kLogAbsSentinel, method, est_error};
  cv.log_abs = log_abs_central(cv);
  return cv;
}

CentralValue l_value_direct(const DirichletCharacter& chi, cd s) {
  if (chi.is_principal()) throw DomainError("l_value_direct: principal character has a pole at s = 1");
  const ModulusContext& ctx = chi.context();
  const u64 q = ctx.q();
  ComplexCompensatedSum sum;
  double magnitude = 0.0;
  if (s == cd(1.0, 0.0)) {
    // the poles 1/(s-1) cancel against sum chi(a) = 0, leaving -(1/q) sum chi(a) psi(a/q)
    for (u64 a = 1; a < q; ++a) {
      if (ctx.unit_index(a) == ModulusContext::kNotUnit) continue;
      const double z = -digamma(static_cast<double>(a) / static_cast<double>(q));
      magnitude += std::abs(z);
      sum.add(ctx.root(chi.phase(a)) * z);
    }
    const double qd = static_cast<double>(q);
    return make_central_value(sum.value() / qd, EvalMethod::hurwitz, magnitude * 4e-16 / qd);
  }
  for (u64 a = 1; a < q; ++a) {
    if (ctx.unit_index(a) == ModulusContext::kNotUnit) continue;
    const cd z = hurwitz_zeta(s, static_cast<double>(a) / static_cast<double>(q));
    magnitude += std::abs(z);
    sum.add(ctx.root(chi.phase(a)) * z);
  }
  const cd scale = std::exp(-s * std::log(static_cast<double>(q)));
  const double err = std::abs(scale) * (magnitude * 4e-16 + 1e-12 * static_cast<double>(ctx.phi()));
  return make_central_value(scale * sum.value(), EvalMethod::hurwitz, err);
}

AfeKernel make_afe_kernel(u64 q) {
  AfeKernel k;
  k.q = q;
  const double step = std::sqrt(std::numbers::pi / static_cast<double>(q));
  CompensatedSum total;
  for (u64 n = 1;; ++n) {
    const double v = afe_weight(static_cast<double>(n) * step);
    if (v < kAfeCutoff) {
      CompensatedSum tail;
      for (u64 m = n;; ++m) {
        const double t = afe_weight(static_cast<double>(m) * step) / std::sqrt(static_cast<double>(m));
        tail.add(t);
        if (t < 1e-30) break;
      }
      k.tail_bound = 1.01 * tail.value();
      break;
    }
    const double w = v / std::sqrt(static_cast<double>(n));
    k.weights.push_back(w);
    total.add(w);
  }
  k.weight_total = total.value();
  return k;
}

namespace {

double afe_error(const AfeKernel& k) {
  // two truncated sums plus rounding in sums of O(N) terms
  return 2.0 * k.tail_bound + 1e-14 * (1.0 + 2.0 * k.weight_total);
}

}  // namespace

CentralValue l_central_afe(const DirichletCharacter& chi) { return l_central_afe(chi, make_afe_kernel(chi.modulus())); }

CentralValue l_central_afe(const DirichletCharacter& chi, const AfeKernel& kernel) {
  if (!chi.is_even() || !chi.primitive()) throw DomainError("l_central_afe requires an even primitive character");
  if (kernel.q != chi.modulus()) throw DomainError("AFE kernel built for a different modulus");
  ComplexCompensatedSum first, second;
  for (std::size_t i = 0; i < kernel.weights.size(); ++i) {
    const cd c = chi(static_cast<i64>(i + 1));
    first.add(kernel.weights[i] * c);
    second.add(kernel.weights[i] * std::conj(c));
  }
  const cd root_number = gauss_sum(chi) / std::sqrt(static_cast<double>(chi.modulus()));
  return make_central_value(first.value() + root_number * second.value(), EvalMethod::afe, afe_error(kernel));
}

CentralValueTable central_values_even_primitive(const ContextPtr& ctx) {
  CentralValueTable table;
  table.ctx = ctx;
  table.characters = enumerate_class(ctx, CharacterClass::even_primitive);
  if (table.characters.empty()) return table;
  const u64 q = ctx->q();
  const AfeKernel kernel = make_afe_kernel(q);

  // Fold the weights onto residues in increasing n, compensated per residue.
  std::vector<CompensatedSum> folded(ctx->phi());
  for (std::size_t i = 0; i < kernel.weights.size(); ++i) {
    const std::uint32_t u = ctx->unit_index((i + 1) % q);
    if (u != ModulusContext::kNotUnit) folded[u].add(kernel.weights[i]);
  }
  std::vector<cd> f(ctx->phi());
  std::vector<cd> g(ctx->phi());
  for (std::uint32_t u = 0; u < ctx->phi(); ++u) {
    f[u] = folded[u].value();
    g[u] = unit_root(ctx->unit_residue(u), q);
  }
  const std::vector<cd> F = character_transform(*ctx, f);
  const std::vector<cd> tau = character_transform(*ctx, g);
  const double sq = std::sqrt(static_cast<double>(q));
  const double err = afe_error(kernel) + 1e-15 * std::log2(static_cast<double>(ctx->phi()) + 1.0) * kernel.weight_total;
  table.values.reserve(table.characters.size());
  for (const auto& chi : table.characters) {
    const cd Fi = F[chi.index()];
    table.values.push_back(make_central_value(Fi + tau[chi.index()] / sq * std::conj(Fi), EvalMethod::afe, err));
  }
  return table;
}

CentralValueTable central_values_hurwitz(const ContextPtr& ctx, unsigned threads) {
  CentralValueTable table;
  table.ctx = ctx;
  table.characters = enumerate_class(ctx, CharacterClass::even_primitive);
  const u64 q = ctx->q();
  // zeta(1/2, a/q) does not depend on the character; compute it once.
  std::vector<double> zeta(q, 0.0);
  std::vector<u64> units;
  for (u64 a = 1; a < q; ++a) {
    if (ctx->unit_index(a) == ModulusContext::kNotUnit) continue;
    zeta[a] = hurwitz_zeta(0.5, static_cast<double>(a) / static_cast<double>(q));
    units.push_back(a);
  }
  double magnitude = 0.0;
  for (u64 a : units) magnitude += std::fabs(zeta[a]);
  const double scale = 1.0 / std::sqrt(static_cast<double>(q));
  const double err = scale * (magnitude * 4e-16 + 1e-12 * static_cast<double>(ctx->phi()));
  table.values.resize(table.characters.size());
  parallel_for(table.characters.size(), threads, [&](std::size_t i) {
    const auto& chi = table.characters[i];
    ComplexCompensatedSum sum;
    for (u64 a : units) sum.add(ctx->root(chi.phase(a)) * zeta[a]);
    table.values[i] = make_central_value(scale * sum.value(), EvalMethod::hurwitz, err);
  });
  return table;
}

}  // namespace lq
