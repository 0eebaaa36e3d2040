#include "lqlab/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "lqlab/errors.hpp"

namespace lq {
namespace {

constexpr double kTolerance = 1e-14;
constexpr int kMaxIterations = 10000;

// B_2, B_4, ..., B_20
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,          -1.0 / 30.0,   1.0 / 42.0,        -1.0 / 30.0,     5.0 / 66.0,
    -691.0 / 2730.0,    7.0 / 6.0,     -3617.0 / 510.0,   43867.0 / 798.0, -174611.0 / 330.0,
};

double lower_series_p(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kTolerance * 0.01) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double upper_continued_fraction_q(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / kTolerance;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kTolerance * 0.01) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0)) throw DomainError("gamma_q requires a > 0");
  if (x < 0.0) throw DomainError("gamma_q requires x >= 0");
  if (x == 0.0) return 1.0;
  // the continued fraction converges slowly below x = a + 1
  if (x <= std::max(1.5, a + 1.0)) return 1.0 - lower_series_p(a, x);
  return upper_continued_fraction_q(a, x);
}

double afe_weight(double x) { return gamma_q(0.25, x * x); }

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma requires x > 0");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  // log x - 1/(2x) - sum B_2k / (2k x^{2k})
  const double series =
      r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * 691.0 / 32760)))));
  return acc + std::log(x) - 0.5 / x - series;
}

double digamma_quarter() { return -kEulerGamma - 3.0 * std::numbers::ln2 - std::numbers::pi / 2.0; }

std::complex<double> hurwitz_zeta(std::complex<double> s, double a) {
  if (!(s.real() > 0.0)) throw DomainError("hurwitz_zeta requires Re(s) > 0");
  if (s == std::complex<double>(1.0, 0.0)) throw DomainError("hurwitz_zeta has a pole at s = 1");
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("hurwitz_zeta requires 0 < a <= 1");
  const int M = 20 + static_cast<int>(std::ceil(std::abs(s)));
  std::complex<double> sum = 0.0;
  for (int j = M - 1; j >= 0; --j) sum += std::exp(-s * std::log(j + a));
  const double x = M + a;
  const double lx = std::log(x);
  const std::complex<double> x_ms = std::exp(-s * lx);
  sum += x * x_ms / (s - 1.0) + 0.5 * x_ms;
  // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * x^{-s-2k+1}
  std::complex<double> rising = s;
  std::complex<double> power = x_ms / x;
  double factorial = 2.0;
  for (int k = 1; k <= 10; ++k) {
    sum += kBernoulli[k - 1] / factorial * rising * power;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    power /= x * x;
    factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return sum;
}

double hurwitz_zeta(double s, double a) {
  if (!(s > 0.0)) throw DomainError("hurwitz_zeta requires Re(s) > 0");
  if (s == 1.0) throw DomainError("hurwitz_zeta has a pole at s = 1");
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("hurwitz_zeta requires 0 < a <= 1");
  const int M = 20 + static_cast<int>(std::ceil(s));
  double sum = 0.0;
  for (int j = M - 1; j >= 0; --j) sum += std::pow(j + a, -s);
  const double x = M + a;
  const double x_ms = std::pow(x, -s);
  sum += x * x_ms / (s - 1.0) + 0.5 * x_ms;
  double rising = s;
  double power = x_ms / x;
  double factorial = 2.0;
  for (int k = 1; k <= 10; ++k) {
    sum += kBernoulli[k - 1] / factorial * rising * power;
    rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
    power /= x * x;
    factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return sum;
}

}  // namespace lq
