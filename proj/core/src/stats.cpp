#include "qcog/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qcog {

namespace {

// Continued-fraction part of the regularized incomplete beta (Lentz).
double betacf(double a, double b, double x) {
  constexpr double kFpMin = 1e-300;
  constexpr double kEps = 1e-15;
  constexpr int kMaxIter = 500;

  double qab = a + b, qap = a + 1, qam = a - 1;
  double c = 1;
  double d = 1 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1) < kEps) return h;
  }
  throw Error("incomplete beta did not converge");
}

double betai(double a, double b, double x) {
  if (x < 0 || x > 1) throw Error("incomplete beta: x outside [0, 1]");
  if (x == 0 || x == 1) return x;
  double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1) / (a + b + 2)) return bt * betacf(a, b, x) / a;
  return 1 - bt * betacf(b, a, 1 - x) / b;
}

double mean_of(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) /
         static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x, double mean) {
  double s = 0;
  for (double v : x) s += (v - mean) * (v - mean);
  return s / static_cast<double>(x.size() - 1);
}

TestResult t_test_from(double mean_diff, double variance, std::size_t n,
                       double threshold) {
  if (variance <= 0) {
    throw DegenerateInputError("zero variance, t statistic undefined");
  }
  TestResult r;
  r.df = static_cast<double>(n - 1);
  r.statistic = mean_diff / std::sqrt(variance / static_cast<double>(n));
  r.p_value = 2 * (1 - t_cdf(std::abs(r.statistic), r.df));
  r.threshold = threshold;
  r.rejected = r.p_value < threshold;
  return r;
}

}  // namespace

double t_cdf(double t, double df) {
  if (!(df > 0)) throw Error("t_cdf: df must be positive");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  double x = df / (df + t * t);
  double tail = 0.5 * betai(0.5 * df, 0.5, x);
  return t >= 0 ? 1 - tail : tail;
}

double t_quantile(double p, double df) {
  if (!(df > 0)) throw Error("t_quantile: df must be positive");
  if (!(p > 0 && p < 1)) throw Error("t_quantile: p must be in (0, 1)");
  double lo = -1e8, hi = 1e8;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (t_cdf(mid, df) < p) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

TestResult paired_t_test(std::span<const double> x, std::span<const double> y,
                         double threshold) {
  if (x.size() != y.size()) throw Error("paired_t_test: length mismatch");
  if (x.size() < 2) throw Error("paired_t_test: need at least 2 pairs");
  std::vector<double> diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
  double mean = mean_of(diff);
  return t_test_from(mean, sample_variance(diff, mean), diff.size(), threshold);
}

TestResult one_sample_t_test(std::span<const double> x, double mu0,
                             double threshold) {
  if (x.size() < 2) throw Error("one_sample_t_test: need at least 2 values");
  double mean = mean_of(x);
  return t_test_from(mean - mu0, sample_variance(x, mean), x.size(), threshold);
}

double bonferroni_threshold(double alpha, std::size_t comparisons) {
  if (comparisons < 1) throw Error("bonferroni_threshold: need >= 1 comparison");
  return alpha / static_cast<double>(comparisons);
}

RegressionResult sorted_regression(std::vector<double> values) {
  if (values.size() < 3) throw Error("sorted_regression: need at least 3 values");
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  double xm = (n - 1) / 2;
  double ym = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double sxy = 0, sxx = 0, sstot = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double dx = static_cast<double>(i) - xm;
    sxy += dx * (values[i] - ym);
    sxx += dx * dx;
    sstot += (values[i] - ym) * (values[i] - ym);
  }
  RegressionResult r;
  r.slope = sxy / sxx;
  r.intercept = ym - r.slope * xm;
  if (sstot <= 0) {
    r.r_squared = 0;  // constant response
    r.slope = 0;
    r.intercept = ym;
    return r;
  }
  double ssres = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double fit = r.intercept + r.slope * static_cast<double>(i);
    ssres += (values[i] - fit) * (values[i] - fit);
  }
  r.r_squared = 1 - ssres / sstot;
  return r;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw Error("quantile of empty sample");
  std::sort(values.begin(), values.end());
  double h = p * static_cast<double>(values.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(h));
  auto hi = std::min(lo + 1, values.size() - 1);
  double frac = h - std::floor(h);
  return values[lo] + frac * (values[hi] - values[lo]);
}

ValueBand value_band(std::vector<double> values, double level) {
  if (values.size() < 3) throw Error("value_band: need at least 3 values");
  if (!(level > 0 && level < 1)) throw Error("value_band: level must be in (0, 1)");
  ValueBand band;
  double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                static_cast<double>(values.size());
  double var = 0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size() - 1);
  double half = t_quantile(0.5 + level / 2, static_cast<double>(values.size() - 1)) *
                std::sqrt(var / static_cast<double>(values.size()));
  band.mean_ci = {mean - half, mean + half};
  double tail = (1 - level) / 2;
  band.quantile_band = {quantile(values, tail), quantile(values, 1 - tail)};
  return band;
}

}  // namespace qcog
