// Copyright 2026 The polylab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POLYLAB_STATS_HPP
#define POLYLAB_STATS_HPP

#include <vector>

#include "common.hpp"

namespace polylab {

struct MomentEstimate {
  double q = 1.0;
  double mean = 0.0;
  double std_error = 0.0;
  long reps = 0;
};

// Monte Carlo mean of x^q with plug-in standard error.
MomentEstimate estimate_moment(const std::vector<double>& samples, double q);

// Monte Carlo mean of prod_{j=0}^{q-1} (R - j) / (n + q - j) over vertex
// counts R of hulls of n+q points.
MomentEstimate falling_factorial_mean(const std::vector<int>& r_samples,
                                      long n, int q);

struct RateFit {
  double exponent = 0.0;
  double intercept = 0.0;  // log-scale
  double exponent_stderr = 0.0;
  double r_squared = 0.0;
  std::vector<long> n_grid;
};

// Weighted least squares of log(moment) on log(n); weights from the
// delta-method standard errors of the log estimates.
RateFit fit_rate(const std::vector<long>& n_grid,
                 const std::vector<MomentEstimate>& moments);

// Ordinary least squares y = a + b x; returns (a, b, stderr_b, r^2).
struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double r_squared = 0.0;
};
LinearFit least_squares(const std::vector<double>& x,
                        const std::vector<double>& y);

// Two-sample Kolmogorov-Smirnov test; asymptotic p-value.
struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Chi-square goodness of fit of observed counts against expected
// probabilities; p-value with k-1 degrees of freedom.
struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 0.0;
  int dof = 0;
};
ChiSquareResult chi_square_gof(const std::vector<long>& observed,
                               const std::vector<double>& expected_probs);

// Survival function of the chi-square distribution (regularized upper
// incomplete gamma).
double chi_square_sf(double x, double dof);

double quantile(std::vector<double> samples, double p);

}  // namespace polylab

#endif  // POLYLAB_STATS_HPP
