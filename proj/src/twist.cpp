#include "lqlab/twist.hpp"

#include <cmath>
#include <numeric>

#include "lqlab/errors.hpp"
#include "lqlab/summation.hpp"

namespace lq {

int RealTwistFactor::degree() const {
  for (std::size_t i = K.size(); i-- > 0;)
    if (K[i] != 0.0) return static_cast<int>(i);
  return 0;
}

u64 RealTwistFactor::length() const {
  u64 m = 0;
  for (const auto& [n, v] : b)
    if (v != cd{}) m = std::max(m, n);
  return m;
}

void RealTwistFactor::validate() const {
  for (const auto& [n, v] : b) {
    const auto f = factorize(n);
    if (f.factors.size() != 1 || f.factors[0].exponent > 2)
      throw DomainError("twist support must be primes or prime squares");
    if (interval) {
      const double p = static_cast<double>(f.factors[0].prime);
      if (!(p > interval->first && p <= interval->second)) throw DomainError("twist support outside its interval");
    }
  }
}

double RealTwistFactor::value(const DirichletCharacter& chi) const {
  ComplexCompensatedSum s;
  for (const auto& [n, v] : b) s.add(v * chi(static_cast<i64>(n)) / std::sqrt(static_cast<double>(n)));
  const double x = s.value().real();
  double acc = 0.0;
  for (std::size_t i = K.size(); i-- > 0;) acc = acc * x + K[i];
  return acc;
}

namespace {

using RawMap = std::map<IndexPair, cd>;

u64 checked_mul(u64 a, u64 b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  if (p >> 62) throw ResourceError("twist coefficient index overflow");
  return static_cast<u64>(p);
}

// chi(j1) conj chi(k1) * chi(j2) conj chi(k2), with common factors of j and k cancelled
RawMap multiply(const RawMap& x, const RawMap& y) {
  std::map<IndexPair, ComplexCompensatedSum> acc;
  for (const auto& [a, u] : x)
    for (const auto& [b, v] : y) {
      u64 j = checked_mul(a.first, b.first);
      u64 k = checked_mul(a.second, b.second);
      const u64 g = std::gcd(j, k);
      acc[{j / g, k / g}].add(u * v);
    }
  RawMap out;
  for (const auto& [key, s] : acc) out[key] = s.value();
  return out;
}

}  // namespace

TwistCoefficients real_twist_coeffs(const RealTwistFactor& f) {
  f.validate();
  RawMap linear;
  for (const auto& [m, v] : f.b) {
    if (v == cd{}) continue;
    const double scale = 0.5 / std::sqrt(static_cast<double>(m));
    linear[{m, 1}] += v * scale;
    linear[{1, m}] += std::conj(v) * scale;
  }
  std::map<IndexPair, ComplexCompensatedSum> total;
  RawMap power{{{1, 1}, cd(1.0, 0.0)}};
  for (std::size_t i = 0; i < f.K.size(); ++i) {
    if (i > 0) power = multiply(power, linear);
    if (f.K[i] == 0.0) continue;
    for (const auto& [key, c] : power) total[key].add(f.K[i] * c);
  }
  TwistCoefficients out;
  for (const auto& [key, s] : total) {
    const cd c = s.value();
    if (c == cd{}) continue;
    out.entries[key] = c * std::sqrt(static_cast<double>(key.first) * static_cast<double>(key.second));
  }
  return out;
}

TwistCoefficients product_coeffs(const std::vector<TwistCoefficients>& parts) {
  RawMap acc{{{1, 1}, cd(1.0, 0.0)}};
  for (const auto& p : parts) {
    RawMap raw;
    for (const auto& [key, c] : p.entries)
      raw[key] = c / std::sqrt(static_cast<double>(key.first) * static_cast<double>(key.second));
    acc = multiply(acc, raw);
  }
  TwistCoefficients out;
  for (const auto& [key, c] : acc)
    out.entries[key] = c * std::sqrt(static_cast<double>(key.first) * static_cast<double>(key.second));
  return out;
}

double TwistCoefficients::mean_square_diagonal() const {
  CompensatedSum s;
  for (const auto& [key, c] : entries)
    s.add(std::norm(c) / (static_cast<double>(key.first) * static_cast<double>(key.second)));
  return s.value();
}

cd TwistCoefficients::evaluate(const DirichletCharacter& chi) const {
  ComplexCompensatedSum s;
  for (const auto& [key, c] : entries) {
    const double norm = std::sqrt(static_cast<double>(key.first) * static_cast<double>(key.second));
    s.add(c / norm * chi(static_cast<i64>(key.first)) * std::conj(chi(static_cast<i64>(key.second))));
  }
  return s.value();
}

double TwistCoefficients::hermitian_defect() const {
  double worst = 0.0;
  for (const auto& [key, c] : entries) {
    auto it = entries.find({key.second, key.first});
    const cd mirror = it == entries.end() ? cd{} : it->second;
    worst = std::max(worst, std::abs(c - std::conj(mirror)));
  }
  return worst;
}

bool twist_admissible(const TwistCoefficients& c, u64 q) {
  std::vector<IndexPair> keys;
  for (const auto& [key, v] : c.entries) keys.push_back(key);
  for (const auto& a : keys)
    for (const auto& b : keys) {
      const u64 x = checked_mul(a.first, b.second);
      const u64 y = checked_mul(a.second, b.first);
      if (x == y) continue;
      if ((x % q) == (y % q) || (x + y) % q == 0) return false;
    }
  return true;
}

double twist_mean_square_mod(const TwistCoefficients& c, u64 q) {
  CompensatedSum s;
  for (const auto& [a, ca] : c.entries) {
    if (std::gcd(a.first * a.second, q) != 1) throw PreconditionError("twist support must be coprime to q");
    for (const auto& [b, cb] : c.entries) {
      const u64 x = checked_mul(a.first, b.second) % q;
      const u64 y = checked_mul(a.second, b.first) % q;
      int hits = (x == y) ? 1 : 0;
      if ((x + y) % q == 0) ++hits;
      if (!hits) continue;
      const double norm = std::sqrt(static_cast<double>(a.first) * static_cast<double>(a.second) *
                                    static_cast<double>(b.first) * static_cast<double>(b.second));
      s.add(hits * (ca * std::conj(cb)).real() / norm);
    }
  }
  return s.value();
}

double even_mean(const ContextPtr& ctx, const std::function<double(const DirichletCharacter&)>& g) {
  CompensatedSum s;
  std::size_t count = 0;
  for (std::uint32_t i = 0; i < ctx->phi(); ++i) {
    const auto chi = character_from_index(ctx, i);
    if (!chi.is_even()) continue;
    s.add(g(chi));
    ++count;
  }
  if (count == 0) throw DomainError("no even characters");
  return s.value() / static_cast<double>(count);
}

}  // namespace lq
