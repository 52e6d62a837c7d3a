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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <vector>

#include "analysis.hpp"

using namespace polylab;

TEST_CASE("moment estimator on uniform(0,1)") {
  RngStream rng(30, 0);
  std::vector<double> xs(200000);
  for (auto& x : xs) x = rng.uniform();
  const auto m1 = estimate_moment(xs, 1.0);
  const auto m2 = estimate_moment(xs, 2.0);
  CHECK(std::abs(m1.mean - 0.5) < 5.0 * m1.std_error);
  CHECK(std::abs(m2.mean - 1.0 / 3.0) < 5.0 * m2.std_error);
  CHECK_THROWS_AS(estimate_moment({}, 1.0), EmptyInput);
}

TEST_CASE("falling factorial mean: constant samples give exact values") {
  // All R = 3, n = 7, q = 2: denominators n+q, n+q-1, so (3/9)(2/8) = 1/12.
  const auto est = falling_factorial_mean(std::vector<int>(100, 3), 7, 2);
  CHECK(est.mean == doctest::Approx(1.0 / 12.0));
  CHECK(est.std_error == doctest::Approx(0.0));
  // q = 1 reduces to mean(R) / (n+1).
  const auto e1 = falling_factorial_mean({2, 4}, 9, 1);
  CHECK(e1.mean == doctest::Approx(0.3));
}

TEST_CASE("rate fit recovers a synthetic power law exactly") {
  std::vector<long> grid = {64, 128, 256, 512, 1024};
  std::vector<MomentEstimate> moments;
  for (long n : grid) {
    MomentEstimate m;
    m.mean = 2.5 * std::pow(static_cast<double>(n), -2.0 / 3.0);
    m.std_error = 0.01 * m.mean;
    m.q = 1;
    m.reps = 1;
    moments.push_back(m);
  }
  const RateFit fit = fit_rate(grid, moments);
  CHECK(fit.exponent == doctest::Approx(-2.0 / 3.0).epsilon(1e-10));
  CHECK(std::exp(fit.intercept) == doctest::Approx(2.5).epsilon(1e-10));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("least squares on noisy synthetic exponential tail") {
  // Survival log S(x) = -3x: fit recovers the slope within 10%.
  RngStream rng(32, 0);
  std::vector<double> xs, ys;
  for (int i = 1; i <= 12; ++i) {
    const double x = 0.1 * i;
    xs.push_back(x);
    ys.push_back(-3.0 * x + 0.02 * rng.normal());
  }
  const LinearFit fit = least_squares(xs, ys);
  CHECK(std::abs(fit.slope + 3.0) < 0.3);
  CHECK(fit.r_squared > 0.98);
}

TEST_CASE("two-sample KS: same law accepted, shifted law rejected") {
  RngStream rng(33, 0);
  std::vector<double> a(4000), b(4000), c(4000);
  for (int i = 0; i < 4000; ++i) {
    a[i] = rng.normal();
    b[i] = rng.normal();
    c[i] = rng.normal() + 0.25;
  }
  CHECK(ks_two_sample(a, b).p_value > 1e-3);
  CHECK(ks_two_sample(a, c).p_value < 1e-4);
}

TEST_CASE("chi-square survival function pinned values") {
  // 1 dof at x = 3.841: p = 0.05 (tables).
  CHECK(chi_square_sf(3.841, 1) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(chi_square_sf(18.307, 10) == doctest::Approx(0.05).epsilon(1e-3));
}

TEST_CASE("replicates are deterministic and independent of thread count") {
  const DensitySpec spec = DensitySpec::uniform(ConvexBody::unit_ball(2));
  const auto a = run_replicates(spec, 20, 40, 500, RngStream(34, 0), 1);
  const auto b = run_replicates(spec, 20, 40, 500, RngStream(34, 0), 4);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].vertex_count == b[i].vertex_count);
    CHECK(a[i].missing_volume == b[i].missing_volume);
    CHECK(a[i].missing_mass == b[i].missing_mass);
  }
}

TEST_CASE("replicate missing volume is consistent with the exact body volume") {
  const DensitySpec spec = DensitySpec::uniform(ConvexBody::unit_box(2));
  const auto reps = run_replicates(spec, 50, 20, 100, RngStream(35, 0), 1);
  for (const auto& r : reps) {
    CHECK(r.missing_volume >= 0.0);
    CHECK(r.missing_volume <= 1.0);
    // Uniform density: missing mass is the missing volume fraction.
    CHECK(r.missing_mass ==
          doctest::Approx(r.missing_volume / 1.0).epsilon(1e-12));
    CHECK(r.vertex_count >= 3);
    CHECK(r.vertex_count <= 50);
  }
}

TEST_CASE("identity between expected missing mass and expected vertex ratio "
          "holds on a small case") {
  const DensitySpec spec = DensitySpec::uniform(ConvexBody::unit_ball(2));
  const CheckReport r =
      check_efron(spec, 6, 4000, 1000, RngStream(36, 0), 1);
  CHECK(r.pass);
  CHECK(r.stat("abs_diff") <= 3.0 * r.stat("combined_stderr"));
}

TEST_CASE("moment inequality check: both routes agree for q = 2") {
  const DensitySpec spec = DensitySpec::uniform(ConvexBody::unit_box(2));
  const CheckReport r =
      check_extended_efron(spec, 10, 2, 3000, 1500, RngStream(37, 0), 1);
  CHECK(r.pass);
  // The fresh-indicator route and the plug-in route estimate the same
  // moment; they must agree within combined error.
  const double diff = std::abs(r.stat("rhs_fresh_indicator") -
                               r.stat("rhs_plug_in"));
  CHECK(diff <= 4.0 * (r.stat("rhs_fresh_stderr") +
                       r.stat("rhs_plug_in_stderr")));
}

TEST_CASE("margin transfer holds on the disk with gamma = 1") {
  const DensitySpec spec = DensitySpec::margin_power(
      ConvexBody::unit_ball(2), 1.0, 0.5, RngStream(38, 0), 100000);
  const CheckReport r =
      check_margin_transfer(spec, 100, 100, 20000, RngStream(39, 0), 1);
  CHECK(r.pass);
  CHECK(r.stat("violations") == 0.0);
}

TEST_CASE("rate check on the disk reproduces the n^{-2/3} decay") {
  const DensitySpec spec = DensitySpec::uniform(ConvexBody::unit_ball(2));
  const std::vector<long> grid = {32, 64, 128, 256};
  const RateCheck rc = check_rate(spec, RateQuantity::MissingVolumeFraction,
                                  1.0, grid, 400, 0, -2.0 / 3.0,
                                  /*bound_mode=*/false, 0.1, RngStream(40, 0),
                                  1);
  CHECK(rc.report.pass);
  CHECK(std::abs(rc.fit.exponent + 2.0 / 3.0) < 0.1);
}

TEST_CASE("affine invariance check accepts a well-conditioned shear") {
  Mat lin(2, 2);
  lin << 1, 4, 0, 1;
  const CheckReport r = check_affine_invariance(
      ConvexBody::standard_simplex(2), AffineMap{lin, Vec::Zero(2)}, 40, 800,
      RngStream(41, 0), 1);
  CHECK(r.pass);
  CHECK(r.stat("p_value") > 1e-3);
}

TEST_CASE("symmetric difference stays below the scaled Hausdorff bound") {
  const CheckReport r =
      check_nykodim_domination(2, 50, 15, 4000, RngStream(42, 0), 1);
  CHECK(r.pass);
  CHECK(r.stat("violations") == 0.0);
  CHECK(r.stat("worst_bound_ratio") <= 1.0);
}

TEST_CASE("projection density check on a moderate sample") {
  const CheckReport r = check_projection_density(3, 2, 200000,
                                                 RngStream(43, 0));
  CHECK(r.pass);
  CHECK(r.stat("chi2_p_value") > 1e-3);
}

TEST_CASE("parallel_for covers every index exactly once") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(4, 1000, [&](long i) { hits[i]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
}
