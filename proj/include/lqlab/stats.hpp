#pragma once

#include <span>
#include <vector>

namespace lq {

double normal_cdf(double x);

// sup_x |F_n(x) - Phi(x)| for the empirical CDF of the sample.
double ks_distance_normal(std::vector<double> sample);

struct LinearFit {
  double slope;
  double intercept;
};
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace lq
