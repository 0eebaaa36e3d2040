#include "lqlab/dirichlet_poly.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "lqlab/errors.hpp"
#include "lqlab/special.hpp"
#include "lqlab/summation.hpp"

namespace lq {

DirichletPolynomial::DirichletPolynomial(std::map<u64, cd> coeffs, std::optional<SupportDescriptor> support)
    : coeffs_(std::move(coeffs)), support_(support) {
  if (coeffs_.count(0)) throw DomainError("Dirichlet polynomial indices start at 1");
}

DirichletPolynomial DirichletPolynomial::one() { return DirichletPolynomial({{1, cd(1.0, 0.0)}}); }

void DirichletPolynomial::set(u64 n, cd a) {
  if (n == 0) throw DomainError("Dirichlet polynomial indices start at 1");
  coeffs_[n] = a;
}

cd DirichletPolynomial::coeff(u64 n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? cd{} : it->second;
}

bool DirichletPolynomial::satisfies_support() const {
  if (!support_) return true;
  for (const auto& [n, a] : coeffs_) {
    const auto f = factorize(n);
    for (const auto& pf : f.factors) {
      const double p = static_cast<double>(pf.prime);
      if (!(p > support_->lo && p <= support_->hi)) return false;
    }
    if (mult_functions(f).big_omega > support_->omega_bound) return false;
  }
  return true;
}

double DirichletPolynomial::mean_square_half() const {
  CompensatedSum s;
  for (const auto& [n, a] : coeffs_) s.add(std::norm(a) / static_cast<double>(n));
  return s.value();
}

DirichletPolynomial DirichletPolynomial::operator*(const DirichletPolynomial& other) const {
  std::map<u64, ComplexCompensatedSum> acc;
  for (const auto& [n, a] : coeffs_)
    for (const auto& [m, b] : other.coeffs_) {
      const unsigned __int128 nm = static_cast<unsigned __int128>(n) * m;
      if (nm >> 63) throw ResourceError("Dirichlet polynomial product index overflow");
      acc[static_cast<u64>(nm)].add(a * b);
    }
  std::map<u64, cd> out;
  for (const auto& [n, s] : acc) out[n] = s.value();
  return DirichletPolynomial(std::move(out));
}

cd eval_at_half(const DirichletPolynomial& P, const DirichletCharacter& chi) {
  ComplexCompensatedSum s;
  for (const auto& [n, a] : P.coeffs()) {
    const cd c = chi(static_cast<i64>(n));
    if (c == cd{}) continue;
    s.add(a * c / std::sqrt(static_cast<double>(n)));
  }
  return s.value();
}

double partial_sum_cutoff(double k) { return std::exp(std::exp(k)); }

namespace {

std::span<const u64> primes_between(double lo, double hi) {
  if (!(hi > lo) || hi < 2.0) return {};
  if (!(hi < static_cast<double>(kMaxSieveLimit))) throw ResourceError("prime cutoff beyond the sieve range");
  return PrimeTable::covering(static_cast<u64>(std::floor(hi)))->primes_in(lo, hi);
}

}  // namespace

cd s_tilde_interval(const DirichletCharacter& chi, double lo, double hi) {
  const ModulusContext& ctx = chi.context();
  const u64 L = ctx.root_order();
  ComplexCompensatedSum s;
  for (u64 p : primes_between(lo, hi)) {
    if (ctx.unit_index(p % ctx.q()) == ModulusContext::kNotUnit) continue;
    const u64 k = chi.phase(p % ctx.q());
    const double pd = static_cast<double>(p);
    s.add(ctx.root(k) / std::sqrt(pd));
    s.add(ctx.root((2 * k) % L) / (2.0 * pd));
  }
  return s.value();
}

cd s_tilde(const DirichletCharacter& chi, double k) { return s_tilde_interval(chi, 0.0, partial_sum_cutoff(k)); }

double s_real(const DirichletCharacter& chi, double k) {
  CompensatedSum s;
  for (u64 p : primes_between(0.0, partial_sum_cutoff(k))) {
    const double pd = static_cast<double>(p);
    const i64 pi = static_cast<i64>(p);
    s.add(chi(pi).real() / std::sqrt(pd));
    s.add(chi(static_cast<i64>(mod_mul(p, p, chi.modulus()))).real() / (2.0 * pd));
  }
  return s.value();
}

DirichletPolynomial mollifier_polynomial(double lo, double hi, int cap) {
  const auto primes = primes_between(lo, hi);
  std::map<u64, cd> coeffs{{1, cd(1.0, 0.0)}};
  constexpr std::size_t kMaxTerms = std::size_t{1} << 20;
  // grow squarefree products prime by prime, tracking Omega via the sign
  std::vector<std::pair<u64, int>> terms{{1, 0}};
  for (u64 p : primes) {
    const std::size_t base = terms.size();
    for (std::size_t i = 0; i < base; ++i) {
      if (terms[i].second >= cap) continue;
      const unsigned __int128 n = static_cast<unsigned __int128>(terms[i].first) * p;
      if (n >> 63) throw ResourceError("mollifier index overflow");
      terms.push_back({static_cast<u64>(n), terms[i].second + 1});
      if (terms.size() > kMaxTerms) throw ResourceError("mollifier support too large to enumerate");
    }
  }
  for (const auto& [n, omega] : terms) coeffs[n] = cd((omega % 2) ? -1.0 : 1.0, 0.0);
  return DirichletPolynomial(std::move(coeffs), SupportDescriptor{lo, hi, cap});
}

DirichletPolynomial mollifier_factor(const ScaleSchedule& schedule, int l) {
  if (l < 1 || l > schedule.top_level()) throw DomainError("mollifier level out of range");
  return mollifier_polynomial(schedule.level(l - 1).q_l, schedule.level(l).q_l, schedule.omega_cap(l));
}

cd mollifier_value(const DirichletCharacter& chi, double lo, double hi, int cap) {
  const ModulusContext& ctx = chi.context();
  const auto primes = primes_between(lo, hi);
  const std::size_t depth = std::min<std::size_t>(static_cast<std::size_t>(std::max(cap, 0)), primes.size());
  std::vector<cd> e(depth + 1, cd{});
  e[0] = 1.0;
  std::size_t seen = 0;
  for (u64 p : primes) {
    const u64 r = p % ctx.q();
    if (ctx.unit_index(r) == ModulusContext::kNotUnit) continue;
    const cd x = -ctx.root(chi.phase(r)) / std::sqrt(static_cast<double>(p));
    ++seen;
    for (std::size_t k = std::min(depth, seen); k >= 1; --k) e[k] += e[k - 1] * x;
  }
  ComplexCompensatedSum s;
  for (const cd& v : e) s.add(v);
  return s.value();
}

double mollifier_log_length(double lo, double hi, int cap) {
  const auto primes = primes_between(lo, hi);
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(std::max(cap, 0)), primes.size());
  double total = 0.0;
  for (std::size_t i = 0; i < take; ++i) total += std::log(static_cast<double>(primes[primes.size() - 1 - i]));
  return total;
}

cd mollifier_product_eval(const DirichletCharacter& chi, const ScaleSchedule& schedule, int l, LengthGuard guard) {
  if (l < 0 || l > schedule.top_level()) throw DomainError("mollifier level out of range");
  if (guard == LengthGuard::enforce) {
    double log_len = 0.0;
    for (int j = 1; j <= l; ++j)
      log_len += mollifier_log_length(schedule.level(j - 1).q_l, schedule.level(j).q_l, schedule.omega_cap(j));
    if (log_len > 0.5 * std::log(static_cast<double>(schedule.q)))
      throw PreconditionError("mollifier product longer than q^{1/2}");
  }
  cd prod = 1.0;
  for (int j = 1; j <= l; ++j)
    prod *= mollifier_value(chi, schedule.level(j - 1).q_l, schedule.level(j).q_l, schedule.omega_cap(j));
  return prod;
}

double log_r_of_q(u64 q, double eta) {
  if (q < 3) throw DomainError("R(q) requires q >= 3");
  return 0.5 * std::log(static_cast<double>(q) / std::numbers::pi) + 0.5 * digamma_quarter() + kEulerGamma + eta;
}

double r_of_q(u64 q, double eta) { return std::exp(log_r_of_q(q, eta)); }

cd q_form_complex(const TwistMatrix& X, u64 q, double R) {
  std::vector<std::pair<IndexPair, cd>> entries;
  for (const auto& [jk, x] : X)
    if (std::gcd(jk.first, q) == 1 && std::gcd(jk.second, q) == 1) entries.push_back({jk, x});
  const double log_r2 = 2.0 * std::log(R);
  ComplexCompensatedSum s;
  for (const auto& [a, x1] : entries)
    for (const auto& [b, x2] : entries) {
      const u64 j1 = a.first, k1 = a.second, j2 = b.first, k2 = b.second;
      const u64 g = std::gcd(j1 * k2, j2 * k1);
      const double prod = static_cast<double>(j1) * static_cast<double>(j2) * static_cast<double>(k1) *
                          static_cast<double>(k2);
      const double gd = static_cast<double>(g);
      const double kernel = gd / prod * (log_r2 + 2.0 * std::log(gd) - std::log(prod));
      s.add(x1 * std::conj(x2) * kernel);
    }
  return s.value();
}

double q_form(const TwistMatrix& X, u64 q, double R) { return q_form_complex(X, q, R).real(); }

}  // namespace lq
