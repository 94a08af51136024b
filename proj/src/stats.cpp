#include "hyperdimer/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperdimer {

double mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_variance(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean(xs), s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

double standard_error(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
}

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

namespace {

// Lower regularized incomplete gamma by its power series (x < a + 1).
double igam_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma by continued fraction (x >= a + 1).
double igamc_cf(double a, double x) {
  const double fpmin = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double igamc(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("igamc domain");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - igam_series(a, x);
  return igamc_cf(a, x);
}

double chi_square_pvalue(double stat, int dof) {
  if (stat <= 0.0) return 1.0;
  return igamc(0.5 * dof, 0.5 * stat);
}

double chi_square_stat(const std::vector<long long>& observed,
                       const std::vector<double>& expected_prob) {
  long long total = 0;
  for (long long o : observed) total += o;
  double stat = 0.0;
  for (size_t i = 0; i < observed.size(); ++i) {
    double e = expected_prob[i] * static_cast<double>(total);
    if (e <= 0.0) throw std::invalid_argument("zero expected count");
    double d = static_cast<double>(observed[i]) - e;
    stat += d * d / e;
  }
  return stat;
}

Interval wilson_interval(long long successes, long long n, double z) {
  double nn = static_cast<double>(n);
  double p = static_cast<double>(successes) / nn;
  double z2 = z * z;
  double denom = 1.0 + z2 / nn;
  double center = (p + z2 / (2.0 * nn)) / denom;
  double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return Interval{center - half, center + half};
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - q[i]);
  return 0.5 * s;
}

std::vector<double> normalize_counts(const std::vector<long long>& counts) {
  long long total = 0;
  for (long long c : counts) total += c;
  std::vector<double> out(counts.size());
  for (size_t i = 0; i < counts.size(); ++i)
    out[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  return out;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  size_t n = x.size();
  double mx = mean(x), my = mean(y);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (n > 2) {
    double sse = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double r = y[i] - (f.intercept + f.slope * x[i]);
      sse += r * r;
    }
    f.slope_se = std::sqrt(sse / (static_cast<double>(n) - 2.0) / sxx);
  }
  return f;
}

LinearFit weighted_linear_fit(const std::vector<double>& x,
                              const std::vector<double>& y,
                              const std::vector<double>& sigma) {
  double sw = 0.0, swx = 0.0, swy = 0.0, swxx = 0.0, swxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    double w = 1.0 / (sigma[i] * sigma[i]);
    sw += w;
    swx += w * x[i];
    swy += w * y[i];
    swxx += w * x[i] * x[i];
    swxy += w * x[i] * y[i];
  }
  double d = sw * swxx - swx * swx;
  LinearFit f;
  f.slope = (sw * swxy - swx * swy) / d;
  f.intercept = (swxx * swy - swx * swxy) / d;
  f.slope_se = std::sqrt(sw / d);
  return f;
}

}  // namespace hyperdimer
