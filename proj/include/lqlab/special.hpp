#pragma once

#include <complex>
#include <numbers>

namespace lq {

inline constexpr double kEulerGamma = std::numbers::egamma;

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a), a > 0, x >= 0.
// Series for x <= max(1.5, a + 1), Lentz continued fraction above; relative tolerance 1e-14.
double gamma_q(double a, double x);

// Smoothing weight of the central-value AFE: Gamma(1/4, x^2) / Gamma(1/4).
double afe_weight(double x);

// psi(x) for x > 0, by upward recurrence to x >= 10 and the asymptotic series.
double digamma(double x);

// psi(1/4) = -gamma - 3 log 2 - pi/2.
double digamma_quarter();

// Hurwitz zeta by Euler-Maclaurin with Bernoulli corrections through B_20.
// Requires Re(s) > 0, s != 1 and 0 < a <= 1.
std::complex<double> hurwitz_zeta(std::complex<double> s, double a);
double hurwitz_zeta(double s, double a);

}  // namespace lq
