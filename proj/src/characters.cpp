#include "lqlab/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "lqlab/errors.hpp"
#include "lqlab/log.hpp"
#include "lqlab/summation.hpp"

namespace lq {

std::string_view class_name(CharacterClass c) {
  switch (c) {
    case CharacterClass::all: return "all";
    case CharacterClass::even: return "even";
    case CharacterClass::primitive: return "primitive";
    case CharacterClass::even_primitive: return "even_primitive";
  }
  return "all";
}

CharacterClass parse_class(std::string_view name) {
  if (name == "all") return CharacterClass::all;
  if (name == "even") return CharacterClass::even;
  if (name == "primitive") return CharacterClass::primitive;
  if (name == "even_primitive") return CharacterClass::even_primitive;
  throw DomainError("unknown character class: " + std::string(name));
}

cd unit_root(u64 k, u64 n) {
  k %= n;
  const unsigned __int128 four_k = static_cast<unsigned __int128>(k) * 4;
  const u64 quarter = static_cast<u64>(four_k / n);
  const u64 r = static_cast<u64>(four_k % n);  // remaining angle is (pi/2) * r / n
  double c = 1.0, s = 0.0;
  if (r != 0) {
    const double half_pi = std::numbers::pi / 2.0;
    if (2 * r <= n) {
      const double t = half_pi * static_cast<double>(r) / static_cast<double>(n);
      c = std::cos(t);
      s = std::sin(t);
    } else {
      const double t = half_pi * static_cast<double>(n - r) / static_cast<double>(n);
      c = std::sin(t);
      s = std::cos(t);
    }
  }
  switch (quarter) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

namespace {

u64 primitive_root_prime(u64 p) {
  if (p == 2) return 1;
  const auto f = factorize(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& pf : f.factors) {
      if (mod_pow(g, (p - 1) / pf.prime, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw InvariantViolation("no primitive root found");
}

// x = a mod m1, x = b mod m2 with gcd(m1, m2) = 1.
u64 crt_pair(u64 a, u64 m1, u64 b, u64 m2) {
  // x = a + m1 * t, t = (b - a) * inv(m1) mod m2
  i64 x0 = 0, x1 = 1, r0 = static_cast<i64>(m2), r1 = static_cast<i64>(m1 % m2);
  while (r1 != 0) {
    const i64 qt = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - qt * r1);
    std::tie(x0, x1) = std::make_pair(x1, x0 - qt * x1);
  }
  const u64 inv = mod_reduce(x0, m2);
  const u64 diff = mod_reduce(static_cast<i64>(b % m2) - static_cast<i64>(a % m2), m2);
  const u64 t = mod_mul(diff, inv, m2);
  return (a % m1) + m1 * t;
}

u64 lift_to_q(u64 local, u64 pa, u64 q) {
  const u64 rest = q / pa;
  if (rest == 1) return local % q;
  return crt_pair(local, pa, 1, rest) % q;
}

}  // namespace

std::span<const std::uint32_t> ModulusContext::dlog(u64 residue) const {
  const std::uint32_t idx = unit_index_[residue % q_];
  if (idx == kNotUnit) throw DomainError("dlog of a non-unit residue");
  return {dlog_.data() + static_cast<std::size_t>(idx) * components_.size(), components_.size()};
}

ContextPtr build_context(u64 q) {
  if (q < 3) throw DomainError("modulus must be at least 3");
  if (q > (u64{1} << 31)) throw ResourceError("modulus too large for dense discrete-log tables");
  std::shared_ptr<ModulusContext> ctx(new ModulusContext());
  ctx->q_ = q;
  ctx->factorization_ = factorize(q);
  ctx->phi_ = mult_functions(ctx->factorization_).phi;
  if (q % 4 == 2) log::warn("q = " + std::to_string(q) + " is 2 mod 4: no primitive characters exist");

  for (const auto& pf : ctx->factorization_.factors) {
    u64 pa = 1;
    for (int i = 0; i < pf.exponent; ++i) pa *= pf.prime;
    if (pf.prime == 2) {
      if (pf.exponent == 1) continue;
      ctx->components_.push_back({lift_to_q(pa - 1, pa, q), 2, 2, pf.exponent, CyclicComponent::Kind::minus_one});
      if (pf.exponent >= 3)
        ctx->components_.push_back(
            {lift_to_q(5, pa, q), static_cast<std::uint32_t>(pa / 4), 2, pf.exponent, CyclicComponent::Kind::five});
    } else {
      u64 g = primitive_root_prime(pf.prime);
      if (pf.exponent >= 2 && mod_pow(g, pf.prime - 1, pf.prime * pf.prime) == 1) g += pf.prime;
      ctx->components_.push_back({lift_to_q(g, pa, q), static_cast<std::uint32_t>(pa / pf.prime * (pf.prime - 1)),
                                  pf.prime, pf.exponent, CyclicComponent::Kind::odd_prime_power});
    }
  }

  const std::size_t r = ctx->components_.size();
  ctx->strides_.assign(r, 1);
  for (std::size_t i = r; i-- > 1;) ctx->strides_[i - 1] = ctx->strides_[i] * ctx->components_[i].order;
  u64 prod = 1, lcm = 1;
  for (const auto& c : ctx->components_) {
    prod *= c.order;
    lcm = std::lcm(lcm, static_cast<u64>(c.order));
  }
  if (prod != ctx->phi_) throw InvariantViolation("component orders do not multiply to phi(q)");
  ctx->root_order_ = lcm;

  ctx->unit_index_.assign(q, ModulusContext::kNotUnit);
  ctx->unit_residue_.assign(ctx->phi_, 0);
  ctx->dlog_.assign(ctx->phi_ * r, 0);
  std::vector<std::vector<u64>> powers(r);
  for (std::size_t i = 0; i < r; ++i) {
    powers[i].resize(ctx->components_[i].order);
    u64 x = 1;
    for (std::uint32_t k = 0; k < ctx->components_[i].order; ++k) {
      powers[i][k] = x;
      x = mod_mul(x, ctx->components_[i].generator, q);
    }
    if (x != 1 % q) throw InvariantViolation("generator order mismatch");
  }
  std::vector<std::uint32_t> d(r, 0);
  for (u64 idx = 0; idx < ctx->phi_; ++idx) {
    u64 res = 1 % q;
    for (std::size_t i = 0; i < r; ++i) res = mod_mul(res, powers[i][d[i]], q);
    if (ctx->unit_index_[res] != ModulusContext::kNotUnit) throw InvariantViolation("discrete log is not unique");
    ctx->unit_index_[res] = static_cast<std::uint32_t>(idx);
    ctx->unit_residue_[idx] = res;
    std::copy(d.begin(), d.end(), ctx->dlog_.begin() + static_cast<std::ptrdiff_t>(idx * r));
    for (std::size_t i = r; i-- > 0;) {
      if (++d[i] < ctx->components_[i].order) break;
      d[i] = 0;
    }
  }

  ctx->root_cos_.resize(ctx->root_order_);
  ctx->root_sin_.resize(ctx->root_order_);
  for (u64 k = 0; k < ctx->root_order_; ++k) {
    const cd z = unit_root(k, ctx->root_order_);
    ctx->root_cos_[k] = z.real();
    ctx->root_sin_[k] = z.imag();
  }
  return ctx;
}

namespace {

int v2(u64 x) {
  int v = 0;
  while (x % 2 == 0) {
    x /= 2;
    ++v;
  }
  return v;
}

int vp(u64 x, u64 p) {
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

u64 local_conductor(const ModulusContext& ctx, std::span<const std::uint32_t> e) {
  u64 f = 1;
  const auto comps = ctx.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    int cexp = 0;
    if (c.kind == CyclicComponent::Kind::odd_prime_power) {
      if (e[i] != 0) cexp = std::max(1, c.prime_exponent - vp(e[i], c.prime));
    } else if (c.kind == CyclicComponent::Kind::minus_one) {
      const bool has_five = i + 1 < comps.size() && comps[i + 1].kind == CyclicComponent::Kind::five;
      const std::uint32_t e5 = has_five ? e[i + 1] : 0;
      if (e5 != 0)
        cexp = c.prime_exponent - v2(e5);
      else if (e[i] != 0)
        cexp = 2;
      if (has_five) ++i;
    }
    for (int k = 0; k < cexp; ++k) f *= c.prime;
  }
  return f;
}

}  // namespace

DirichletCharacter::DirichletCharacter(ContextPtr ctx, std::vector<std::uint32_t> exponents)
    : ctx_(std::move(ctx)), exponents_(std::move(exponents)) {
  const auto comps = ctx_->components();
  if (exponents_.size() != comps.size()) throw DomainError("exponent vector has wrong length");
  const u64 L = ctx_->root_order();
  weights_.resize(comps.size());
  index_ = 0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (exponents_[i] >= comps[i].order) throw DomainError("exponent out of range");
    weights_[i] = (static_cast<u64>(exponents_[i]) * (L / comps[i].order)) % L;
    index_ += exponents_[i] * ctx_->strides()[i];
  }
  const u64 ph = phase(ctx_->q() - 1);
  parity_ = (ph == 0) ? 1 : -1;
  conductor_ = local_conductor(*ctx_, exponents_);
}

bool DirichletCharacter::is_principal() const {
  for (auto e : exponents_)
    if (e != 0) return false;
  return true;
}

bool DirichletCharacter::is_real() const {
  const u64 L = ctx_->root_order();
  for (auto w : weights_)
    if ((2 * w) % L != 0) return false;
  return true;
}

u64 DirichletCharacter::phase(u64 unit_residue) const {
  const auto d = ctx_->dlog(unit_residue);
  const u64 L = ctx_->root_order();
  u64 acc = 0;
  for (std::size_t i = 0; i < d.size(); ++i) acc = (acc + weights_[i] * d[i]) % L;
  return acc;
}

cd DirichletCharacter::operator()(i64 n) const {
  const u64 a = mod_reduce(n, ctx_->q());
  if (ctx_->unit_index(a) == ModulusContext::kNotUnit) return {0.0, 0.0};
  return ctx_->root(phase(a));
}

DirichletCharacter DirichletCharacter::conjugate() const {
  std::vector<std::uint32_t> e(exponents_.size());
  const auto comps = ctx_->components();
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = exponents_[i] == 0 ? 0 : comps[i].order - exponents_[i];
  return DirichletCharacter(ctx_, std::move(e));
}

DirichletCharacter character_from_index(const ContextPtr& ctx, std::uint32_t index) {
  if (index >= ctx->phi()) throw DomainError("character index out of range");
  std::vector<std::uint32_t> e(ctx->rank());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = index / ctx->strides()[i];
    index %= ctx->strides()[i];
  }
  return DirichletCharacter(ctx, std::move(e));
}

bool in_class(const DirichletCharacter& chi, CharacterClass cls) {
  switch (cls) {
    case CharacterClass::all: return true;
    case CharacterClass::even: return chi.is_even();
    case CharacterClass::primitive: return chi.primitive();
    case CharacterClass::even_primitive: return chi.is_even() && chi.primitive();
  }
  return false;
}

std::vector<DirichletCharacter> enumerate_class(const ContextPtr& ctx, CharacterClass cls) {
  std::vector<DirichletCharacter> out;
  for (std::uint32_t idx = 0; idx < ctx->phi(); ++idx) {
    DirichletCharacter chi = character_from_index(ctx, idx);
    if (in_class(chi, cls)) out.push_back(std::move(chi));
  }
  return out;
}

ConductorInfo conductor_and_primitivity(const DirichletCharacter& chi) {
  return {chi.conductor(), chi.primitive()};
}

ConductorInfo conductor_brute_force(const DirichletCharacter& chi) {
  const ModulusContext& ctx = chi.context();
  const u64 q = ctx.q();
  for (u64 f : divisors(ctx.factorization())) {
    bool induced = true;
    for (u64 n = 1; n < q && induced; n += f) {
      if (!ctx.is_unit(static_cast<i64>(n))) continue;
      if (chi.phase(n) != 0) induced = false;
    }
    if (induced) return {f, f == q};
  }
  return {q, true};
}

cd gauss_sum(const DirichletCharacter& chi) {
  const ModulusContext& ctx = chi.context();
  ComplexCompensatedSum s;
  for (u64 a = 1; a <= ctx.q(); ++a) {
    const u64 r = a % ctx.q();
    if (ctx.unit_index(r) == ModulusContext::kNotUnit) continue;
    s.add(ctx.root(chi.phase(r)) * unit_root(r, ctx.q()));
  }
  return s.value();
}

namespace {

i64 primitive_formula(const ModulusContext& ctx, i64 m) {
  const u64 q = ctx.q();
  i64 total = 0;
  for (u64 w : divisors(ctx.factorization())) {
    const u64 v = q / w;
    if (mod_reduce(m - 1, w) != 0) continue;
    total += static_cast<i64>(mobius(v)) * static_cast<i64>(euler_phi(w));
  }
  return total;
}

cd direct_class_sum(const std::vector<DirichletCharacter>& chars, i64 m) {
  ComplexCompensatedSum s;
  for (const auto& chi : chars) s.add(chi(m));
  return s.value();
}

}  // namespace

ClassSum char_class_sum(const ContextPtr& ctx, i64 m, CharacterClass cls) {
  if (std::gcd(mod_reduce(m, ctx->q()), ctx->q()) != 1) throw DomainError("m must be coprime to q");
  if (cls != CharacterClass::primitive && cls != CharacterClass::even_primitive)
    throw DomainError("char_class_sum supports primitive and even_primitive classes");
  const auto prims = enumerate_class(ctx, CharacterClass::primitive);
  auto checked = [&](i64 x) {
    const cd direct = direct_class_sum(prims, x);
    const i64 formula = primitive_formula(*ctx, x);
    if (std::fabs(direct.real() - static_cast<double>(formula)) > 1e-6 || std::fabs(direct.imag()) > 1e-6)
      throw InvariantViolation("primitive character sum disagrees with the Moebius formula at q=" +
                               std::to_string(ctx->q()) + ", m=" + std::to_string(x));
    return std::make_pair(direct, formula);
  };
  const auto [d1, f1] = checked(m);
  if (cls == CharacterClass::primitive) return {d1, static_cast<double>(f1)};
  const auto [d2, f2] = checked(-m);
  return {0.5 * (d1 + d2), 0.5 * static_cast<double>(f1 + f2)};
}

}  // namespace lq
