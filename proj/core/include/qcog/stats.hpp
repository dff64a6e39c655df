#ifndef QCOG_STATS_HPP
#define QCOG_STATS_HPP

#include <span>
#include <vector>

#include "qcog/types.hpp"

namespace qcog {

/// Student-t cumulative distribution via the regularized incomplete beta
/// function. Throws Error for df <= 0.
double t_cdf(double t, double df);

/// Inverse of t_cdf in t for fixed df (bisection; p in (0,1)).
double t_quantile(double p, double df);

struct TestResult {
  double statistic = 0;
  double df = 0;
  double p_value = 1;
  double threshold = 0.05;
  bool rejected = false;
};

/// Two-tailed paired t-test. Throws on length mismatch, n < 2, or
/// zero-variance differences.
TestResult paired_t_test(std::span<const double> x, std::span<const double> y,
                         double threshold = 0.05);

/// Two-tailed one-sample t-test against mu0.
TestResult one_sample_t_test(std::span<const double> x, double mu0,
                             double threshold = 0.05);

double bonferroni_threshold(double alpha, std::size_t comparisons);

struct RegressionResult {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;  // 0 by convention for a zero-variance response
};

/// Ordinary least squares of the values sorted ascending against their
/// rank 0..n-1. At least 3 points required.
RegressionResult sorted_regression(std::vector<double> values);

/// The two readings of a "level" band over a sample, reported side by
/// side: a t-based confidence interval of the mean, and the empirical
/// central quantile band trimming (1-level)/2 from each tail.
struct ValueBand {
  Interval mean_ci;
  Interval quantile_band;
};

ValueBand value_band(std::vector<double> values, double level);

/// Linear-interpolation empirical quantile (exposed for the band tests).
double quantile(std::vector<double> values, double p);

}  // namespace qcog

#endif  // QCOG_STATS_HPP
