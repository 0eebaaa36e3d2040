#include "lqlab/random_model.hpp"

#include <cmath>
#include <numbers>

#include "lqlab/errors.hpp"
#include "lqlab/parallel.hpp"
#include "lqlab/stats.hpp"
#include "lqlab/summation.hpp"
#include "lqlab/twist.hpp"

namespace lq {
namespace {

u64 splitmix(u64 x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

double phase_uniform(u64 seed, u64 prime) {
  const u64 bits = splitmix(splitmix(seed) ^ splitmix(prime ^ 0xD1B54A32D192ED03ull));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

u64 trial_seed(u64 seed, u64 trial) { return splitmix(seed ^ splitmix(trial + 0x632BE59BD9B4E019ull)); }

cd PhaseSample::at(u64 p) const {
  auto it = assignment.find(p);
  if (it == assignment.end()) throw DomainError("prime " + std::to_string(p) + " has no assigned phase");
  return it->second;
}

PhaseSample sample_phases(std::span<const u64> primes, u64 seed) {
  if (primes.empty()) throw DomainError("sample_phases needs at least one prime");
  PhaseSample s;
  s.seed = seed;
  for (u64 p : primes) s.assignment[p] = std::polar(1.0, 2.0 * std::numbers::pi * phase_uniform(seed, p));
  return s;
}

cd x_of(const PhaseSample& sample, const FactoredInteger& n) {
  cd v = 1.0;
  for (const auto& f : n.factors) v *= std::pow(sample.at(f.prime), f.exponent);
  return v;
}

double exact_real_moment(const std::map<u64, cd>& coeffs, int k) {
  if (k < 0) throw DomainError("moment order must be nonnegative");
  if (coeffs.size() > 12 || 2 * k > 12) throw ResourceError("exact moment limited to 12 primes and 2k <= 12");
  std::vector<double> w;
  for (const auto& [p, a] : coeffs) w.push_back(std::norm(a));
  // (Re aX)^{j+m} picks (aX/2)^j (conj(aX)/2)^m; balance forces j = m at each prime:
  // E = 4^{-k} (2k)! sum_{j_1+...+j_n = k} prod |a_p|^{2 j_p} / (j_p!)^2
  CompensatedSum total;
  std::vector<int> j(w.size(), 0);
  auto recurse = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == w.size()) {
      if (left != 0) return;
      double term = 1.0;
      for (std::size_t t = 0; t < w.size(); ++t) term *= std::pow(w[t], j[t]) / (factorial(j[t]) * factorial(j[t]));
      total.add(term);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      j[i] = v;
      self(self, i + 1, left - v);
    }
    j[i] = 0;
  };
  recurse(recurse, 0, k);
  return factorial(2 * k) * std::pow(0.25, k) * total.value();
}

double gaussian_moment(double s2, int k) {
  if (s2 < 0.0) throw DomainError("variance must be nonnegative");
  if (k == 0) return 1.0;
  return factorial(2 * k) / (std::pow(2.0, k) * factorial(k)) * std::pow(s2, k);
}

MonteCarloMoment mc_real_moment(const std::map<u64, cd>& coeffs, int k, std::size_t trials, u64 seed) {
  if (trials < 2) throw DomainError("need at least two trials");
  CompensatedSum s, s2;
  for (std::size_t t = 0; t < trials; ++t) {
    const u64 key = trial_seed(seed, t);
    double x = 0.0;
    for (const auto& [p, a] : coeffs) x += (a * std::polar(1.0, 2.0 * std::numbers::pi * phase_uniform(key, p))).real();
    const double v = std::pow(x, 2 * k);
    s.add(v);
    s2.add(v * v);
  }
  const double n = static_cast<double>(trials);
  const double mean = s.value() / n;
  const double var = std::max(0.0, (s2.value() / n - mean * mean) * n / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

CltSummary mc_clt(std::span<const u64> primes, std::size_t trials, u64 seed, unsigned threads) {
  if (trials < 1000) throw DomainError("mc_clt requires at least 1000 trials");
  if (primes.empty()) throw DomainError("mc_clt needs primes");
  CompensatedSum recip;
  std::vector<double> inv_sqrt(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    recip.add(1.0 / static_cast<double>(primes[i]));
    inv_sqrt[i] = 1.0 / std::sqrt(static_cast<double>(primes[i]));
  }
  const double var = 0.5 * recip.value();
  std::vector<double> raw(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    const u64 key = trial_seed(seed, t);
    CompensatedSum x;
    for (std::size_t i = 0; i < primes.size(); ++i)
      x.add(std::cos(2.0 * std::numbers::pi * phase_uniform(key, primes[i])) * inv_sqrt[i]);
    raw[t] = x.value();
  });
  CompensatedSum s, ss;
  for (double v : raw) s.add(v);
  const double n = static_cast<double>(trials);
  const double mean = s.value() / n;
  for (double v : raw) ss.add((v - mean) * (v - mean));
  std::vector<double> normalised(trials);
  const double scale = 1.0 / std::sqrt(var);
  for (std::size_t t = 0; t < trials; ++t) normalised[t] = raw[t] * scale;
  return {mean * scale, ss.value() / (n - 1.0), var, ks_distance_normal(std::move(normalised)), trials};
}

PhasePolynomial PhasePolynomial::constant(cd c) {
  PhasePolynomial p;
  if (c != cd{}) p.terms_[{}] = c;
  return p;
}

PhasePolynomial PhasePolynomial::term(const FactoredInteger& n, cd c, bool conjugate) {
  Monomial m;
  for (const auto& f : n.factors) m[f.prime] = conjugate ? -f.exponent : f.exponent;
  PhasePolynomial p;
  if (c != cd{}) p.terms_[m] = c;
  return p;
}

PhasePolynomial PhasePolynomial::operator+(const PhasePolynomial& o) const {
  PhasePolynomial r = *this;
  for (const auto& [m, c] : o.terms_) {
    r.terms_[m] += c;
    if (r.terms_[m] == cd{}) r.terms_.erase(m);
  }
  return r;
}

PhasePolynomial PhasePolynomial::operator*(const PhasePolynomial& o) const {
  PhasePolynomial r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m = m1;
      for (const auto& [p, e] : m2) {
        m[p] += e;
        if (m[p] == 0) m.erase(p);
      }
      r.terms_[m] += c1 * c2;
    }
  return r;
}

PhasePolynomial PhasePolynomial::scaled(cd c) const {
  PhasePolynomial r = *this;
  for (auto& [m, v] : r.terms_) v *= c;
  return r;
}

cd PhasePolynomial::expectation() const {
  auto it = terms_.find({});
  return it == terms_.end() ? cd{} : it->second;
}

cd random_cross_moment(u64 n, u64 m) {
  const auto a = PhasePolynomial::term(factorize(n), 1.0);
  const auto b = PhasePolynomial::term(factorize(m), 1.0, true);
  return (a * b).expectation();
}

double random_twist_mean_square(const RealTwistFactor& f) {
  f.validate();
  PhasePolynomial x;
  for (const auto& [m, v] : f.b) {
    const double scale = 0.5 / std::sqrt(static_cast<double>(m));
    const auto fm = factorize(m);
    x = x + PhasePolynomial::term(fm, v * scale) + PhasePolynomial::term(fm, std::conj(v) * scale, true);
  }
  PhasePolynomial k;
  for (std::size_t i = f.K.size(); i-- > 0;) k = k * x + PhasePolynomial::constant(f.K[i]);
  return (k * k).expectation().real();
}

}  // namespace lq
