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

#include "stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

namespace polylab {

MomentEstimate estimate_moment(const std::vector<double>& samples, double q) {
  if (samples.empty()) throw EmptyInput("no samples");
  if (q <= 0) throw ValidationError("moment order must be positive");
  double sum = 0.0, sum2 = 0.0;
  for (double x : samples) {
    const double p = std::pow(x, q);
    sum += p;
    sum2 += p * p;
  }
  const long n = static_cast<long>(samples.size());
  MomentEstimate est;
  est.q = q;
  est.reps = n;
  est.mean = sum / n;
  const double var = std::max(0.0, sum2 / n - est.mean * est.mean);
  est.std_error = std::sqrt(var / n);
  return est;
}

MomentEstimate falling_factorial_mean(const std::vector<int>& r_samples,
                                      long n, int q) {
  if (r_samples.empty()) throw EmptyInput("no vertex-count samples");
  if (q < 1) throw ValidationError("q must be a positive integer");
  double sum = 0.0, sum2 = 0.0;
  for (int r : r_samples) {
    double prod = 1.0;
    for (int j = 0; j < q; ++j)
      prod *= static_cast<double>(r - j) / static_cast<double>(n + q - j);
    sum += prod;
    sum2 += prod * prod;
  }
  const long reps = static_cast<long>(r_samples.size());
  MomentEstimate est;
  est.q = q;
  est.reps = reps;
  est.mean = sum / reps;
  const double var = std::max(0.0, sum2 / reps - est.mean * est.mean);
  est.std_error = std::sqrt(var / reps);
  return est;
}

LinearFit least_squares(const std::vector<double>& x,
                        const std::vector<double>& y) {
  std::vector<double> w(x.size(), 1.0);
  const size_t n = x.size();
  if (n < 2 || y.size() != n) throw EmptyInput("need >= 2 (x, y) pairs");
  double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sw += w[i];
    swx += w[i] * x[i];
    swy += w[i] * y[i];
    swxx += w[i] * x[i] * x[i];
    swxy += w[i] * x[i] * y[i];
  }
  const double denom = sw * swxx - swx * swx;
  LinearFit fit;
  fit.slope = (sw * swxy - swx * swy) / denom;
  fit.intercept = (swy - fit.slope * swx) / sw;
  double ss_res = 0, ss_tot = 0;
  const double ybar = swy / sw;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    ss_res += r * r;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  const double sigma2 = n > 2 ? ss_res / (n - 2) : 0.0;
  fit.slope_stderr = std::sqrt(sigma2 * sw / denom);
  return fit;
}

RateFit fit_rate(const std::vector<long>& n_grid,
                 const std::vector<MomentEstimate>& moments) {
  if (n_grid.size() < 4)
    throw ValidationError("rate fit needs a grid of at least 4 sizes");
  if (n_grid.size() != moments.size())
    throw DimensionMismatch("grid/moment size mismatch");
  const size_t k = n_grid.size();
  std::vector<double> x(k), y(k), w(k);
  for (size_t i = 0; i < k; ++i) {
    if (moments[i].mean <= 0)
      throw NonPositiveMoment("moment estimate <= 0 at n = " +
                              std::to_string(n_grid[i]) +
                              "; increase replicates");
    x[i] = std::log(static_cast<double>(n_grid[i]));
    y[i] = std::log(moments[i].mean);
    const double se_log = moments[i].std_error / moments[i].mean;
    w[i] = se_log > 0 ? 1.0 / (se_log * se_log) : 1.0;
  }
  double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
  for (size_t i = 0; i < k; ++i) {
    sw += w[i];
    swx += w[i] * x[i];
    swy += w[i] * y[i];
    swxx += w[i] * x[i] * x[i];
    swxy += w[i] * x[i] * y[i];
  }
  const double denom = sw * swxx - swx * swx;
  RateFit fit;
  fit.n_grid = n_grid;
  fit.exponent = (sw * swxy - swx * swy) / denom;
  fit.intercept = (swy - fit.exponent * swx) / sw;
  fit.exponent_stderr = std::sqrt(sw / denom);  // from the per-point se_log
  double ss_res = 0, ss_tot = 0;
  const double ybar = swy / sw;
  for (size_t i = 0; i < k; ++i) {
    const double r = y[i] - fit.intercept - fit.exponent * x[i];
    ss_res += w[i] * r * r;
    ss_tot += w[i] * (y[i] - ybar) * (y[i] - ybar);
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw EmptyInput("empty KS sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const size_t na = a.size(), nb = b.size();
  size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < na && ib < nb) {
    const double va = a[ia], vb = b[ib];
    if (va <= vb) ++ia;
    if (vb <= va) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na -
                             static_cast<double>(ib) / nb));
  }
  const double ne = static_cast<double>(na) * nb / (na + nb);
  const double lambda =
      (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  double p = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    p += 2.0 * sign * term;
    sign = -sign;
    if (term < 1e-12) break;
  }
  KsResult out;
  out.statistic = d;
  out.p_value = std::clamp(p, 0.0, 1.0);
  return out;
}

double chi_square_sf(double x, double dof) {
  return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

ChiSquareResult chi_square_gof(const std::vector<long>& observed,
                               const std::vector<double>& expected_probs) {
  if (observed.size() != expected_probs.size() || observed.empty())
    throw DimensionMismatch("observed/expected size mismatch");
  long total = 0;
  for (long o : observed) total += o;
  ChiSquareResult out;
  for (size_t i = 0; i < observed.size(); ++i) {
    const double e = total * expected_probs[i];
    if (e <= 0) throw ValidationError("expected bin probability must be > 0");
    const double diff = observed[i] - e;
    out.statistic += diff * diff / e;
  }
  out.dof = static_cast<int>(observed.size()) - 1;
  out.p_value = chi_square_sf(out.statistic, out.dof);
  return out;
}

double quantile(std::vector<double> samples, double p) {
  if (samples.empty()) throw EmptyInput("no samples");
  std::sort(samples.begin(), samples.end());
  const double idx = p * (samples.size() - 1);
  const size_t lo = static_cast<size_t>(idx);
  const size_t hi = std::min(lo + 1, samples.size() - 1);
  const double frac = idx - lo;
  return samples[lo] * (1 - frac) + samples[hi] * frac;
}

}  // namespace polylab
