#pragma once

#include <cstddef>
#include <vector>

namespace phi4 {

struct Moments {
  size_t n = 0;
  double mean = 0.0;
  double var = 0.0;     // unbiased
  double stderr_mean = 0.0;
};
Moments moments(const std::vector<double>& xs);

// z-score for equality of means of two independent samples.
double z_two_sample(const std::vector<double>& a, const std::vector<double>& b);

// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
struct KsResult {
  double statistic;
  double p_value;
};
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Effective sample size from the autocorrelation of a chain (initial
// positive sequence estimator).
double effective_sample_size(const std::vector<double>& chain);

struct LinearFit {
  double slope;
  double intercept;
  double r2;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Smooth bump: 1 on [1/4,3/4], supported in [1/8,7/8], built from the
// exp(-1/x) mollifier.
double bump_rho(double t);

// Uniform-grid trapezoid weights on [0, t] with n intervals.
std::vector<double> trapezoid_weights(size_t n, double h);

}  // namespace phi4
