#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperdimer/stats.hpp"

using namespace hyperdimer;

TEST_CASE("moments of a known list") {
  std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
  CHECK(mean(xs) == doctest::Approx(5.0));
  CHECK(sample_variance(xs) == doctest::Approx(32.0 / 7.0));
  CHECK(standard_error(xs) == doctest::Approx(std::sqrt(32.0 / 7.0 / 8.0)));
  CHECK(median(xs) == doctest::Approx(4.5));
  CHECK(median({3.0, 1.0, 2.0}) == doctest::Approx(2.0));
}

// Independent oracles: for even dof the chi-square tail has a closed form
// Q(x; 2m) = e^{-x/2} * sum_{j<m} (x/2)^j / j!, and for dof=1 it equals
// erfc(sqrt(x/2)).
static double tail_even_dof(double x, int dof) {
  int m = dof / 2;
  double s = 0.0, term = 1.0;
  for (int j = 0; j < m; ++j) {
    if (j > 0) term *= (x / 2.0) / j;
    s += term;
  }
  return std::exp(-x / 2.0) * s;
}

TEST_CASE("chi_square_pvalue vs closed forms") {
  for (double x : {0.5, 1.0, 2.3, 5.99, 11.07, 25.0}) {
    CHECK(chi_square_pvalue(x, 2) == doctest::Approx(tail_even_dof(x, 2)).epsilon(1e-10));
    CHECK(chi_square_pvalue(x, 4) == doctest::Approx(tail_even_dof(x, 4)).epsilon(1e-10));
    CHECK(chi_square_pvalue(x, 10) == doctest::Approx(tail_even_dof(x, 10)).epsilon(1e-10));
    CHECK(chi_square_pvalue(x, 1) == doctest::Approx(std::erfc(std::sqrt(x / 2.0))).epsilon(1e-10));
  }
  // Classic critical values.
  CHECK(chi_square_pvalue(3.841458821, 1) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(chi_square_pvalue(5.991464547, 2) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(chi_square_pvalue(18.30703805, 10) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(chi_square_pvalue(0.0, 3) == doctest::Approx(1.0));
}

TEST_CASE("chi_square_stat on uniform counts") {
  std::vector<long long> obs{25, 25, 25, 25};
  std::vector<double> p{0.25, 0.25, 0.25, 0.25};
  CHECK(chi_square_stat(obs, p) == doctest::Approx(0.0));
  std::vector<long long> obs2{30, 20, 25, 25};
  CHECK(chi_square_stat(obs2, p) == doctest::Approx(2.0));  // (25+25)/25
}

TEST_CASE("wilson interval endpoints satisfy the score equation") {
  // Endpoints p* of the Wilson interval solve (phat - p)^2 = z^2 p(1-p)/n.
  long long s = 37, n = 120;
  double z = 1.96, phat = double(s) / double(n);
  Interval iv = wilson_interval(s, n, z);
  for (double p : {iv.lo, iv.hi}) {
    double lhs = (phat - p) * (phat - p);
    double rhs = z * z * p * (1.0 - p) / double(n);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
  CHECK(iv.lo < phat);
  CHECK(iv.hi > phat);
  CHECK(iv.lo > 0.0);
  CHECK(iv.hi < 1.0);
}

TEST_CASE("total variation") {
  std::vector<double> p{0.5, 0.5}, q{0.8, 0.2};
  CHECK(total_variation(p, q) == doctest::Approx(0.3));
  CHECK(total_variation(p, p) == doctest::Approx(0.0));
  auto n = normalize_counts({10, 30, 60});
  CHECK(n[0] == doctest::Approx(0.1));
  CHECK(n[2] == doctest::Approx(0.6));
}

TEST_CASE("linear fit recovers an exact line") {
  std::vector<double> x{1, 2, 3, 4, 5}, y;
  for (double xi : x) y.push_back(3.0 - 0.7 * xi);
  LinearFit f = linear_fit(x, y);
  CHECK(f.slope == doctest::Approx(-0.7).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.slope_se == doctest::Approx(0.0).epsilon(1e-10));

  // Hand-computed least squares: x = 0,1,2; y = 0,2,3 -> slope 1.5, icpt 1/6.
  LinearFit g = linear_fit({0, 1, 2}, {0, 2, 3});
  CHECK(g.slope == doctest::Approx(1.5));
  CHECK(g.intercept == doctest::Approx(1.0 / 6.0));

  // Weighted fit with equal sigmas agrees with OLS slope.
  LinearFit w = weighted_linear_fit({0, 1, 2}, {0, 2, 3}, {2.0, 2.0, 2.0});
  CHECK(w.slope == doctest::Approx(1.5));
  CHECK(w.slope_se == doctest::Approx(2.0 / std::sqrt(2.0)));  // sigma/sqrt(Sxx)
}
