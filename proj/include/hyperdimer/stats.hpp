#pragma once

#include <cstddef>
#include <vector>

namespace hyperdimer {

double mean(const std::vector<double>& xs);
double sample_variance(const std::vector<double>& xs);   // unbiased, n-1
double standard_error(const std::vector<double>& xs);    // sqrt(var/n)
double median(std::vector<double> xs);

// Upper regularized incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
double igamc(double a, double x);

// P(Chi2_dof >= stat).
double chi_square_pvalue(double stat, int dof);

// Chi-square statistic of observed counts against expected probabilities
// (expected counts = p[i] * total observed).
double chi_square_stat(const std::vector<long long>& observed,
                       const std::vector<double>& expected_prob);

// Wilson score interval for a binomial proportion.
struct Interval {
  double lo = 0.0, hi = 0.0;
};
Interval wilson_interval(long long successes, long long n, double z = 1.96);

// Total variation distance between two distributions over the same support.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

// Empirical distribution from counts.
std::vector<double> normalize_counts(const std::vector<long long>& counts);

// Ordinary least squares y ~ intercept + slope * x, with the usual OLS
// standard error of the slope.
struct LinearFit {
  double slope = 0.0, intercept = 0.0, slope_se = 0.0;
};
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Weighted least squares with per-point standard deviations sigma.
LinearFit weighted_linear_fit(const std::vector<double>& x,
                              const std::vector<double>& y,
                              const std::vector<double>& sigma);

}  // namespace hyperdimer
