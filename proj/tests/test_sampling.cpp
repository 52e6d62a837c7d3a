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

#include <cmath>
#include <vector>

#include "sampling.hpp"
#include "stats.hpp"

using namespace polylab;

namespace {

const ConvexBody kDisk = ConvexBody::unit_ball(2);

}  // namespace

TEST_CASE("uniform sampling is deterministic in the stream") {
  for (const ConvexBody& body :
       {ConvexBody::unit_ball(3), ConvexBody::unit_box(3),
        ConvexBody::standard_simplex(3)}) {
    const PointSet a = sample_uniform(body, 50, RngStream(9, 1));
    const PointSet b = sample_uniform(body, 50, RngStream(9, 1));
    CHECK((a - b).norm() == 0.0);
    const PointSet c = sample_uniform(body, 50, RngStream(9, 2));
    CHECK((a - c).norm() > 0.0);
  }
}

TEST_CASE("uniform samples stay in the body") {
  Mat shape(2, 2);
  shape << 4, 1, 1, 2;
  for (const ConvexBody& body :
       {ConvexBody::unit_ball(4), ConvexBody::unit_box(2),
        ConvexBody::standard_simplex(4),
        ConvexBody::ellipsoid(Vec::Ones(2), shape)}) {
    const PointSet pts = sample_uniform(body, 2000, RngStream(10, 3));
    for (long i = 0; i < pts.rows(); ++i)
      CHECK(body.contains(pts.row(i).transpose(), 1e-9));
  }
}

TEST_CASE("uniform ball radial marginal passes chi-square") {
  // In the unit disk, P(|X| <= r) = r^2: 10 equal-probability shells.
  const long n = 50000;
  const PointSet pts = sample_uniform(kDisk, n, RngStream(12, 0));
  std::vector<long> observed(10, 0);
  for (long i = 0; i < n; ++i) {
    const double u = pts.row(i).norm() * pts.row(i).norm();
    ++observed[std::min(9, static_cast<int>(u * 10))];
  }
  const auto gof = chi_square_gof(observed, std::vector<double>(10, 0.1));
  CHECK(gof.p_value > 1e-3);
}

TEST_CASE("uniform box and simplex first moments") {
  const long n = 100000;
  const PointSet box = sample_uniform(ConvexBody::unit_box(3), n,
                                      RngStream(14, 0));
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(box.col(j).mean() - 0.5) < 5.0 / std::sqrt(12.0 * n));
  // Standard simplex in R^d: E[X_j] = 1/(d+1).
  const PointSet simp = sample_uniform(ConvexBody::standard_simplex(3), n,
                                       RngStream(15, 0));
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(simp.col(j).mean() - 0.25) < 0.01);
}

TEST_CASE("margin-power density: values, bound and parameters on the disk") {
  // gamma = 1, rho0 = 1 (never clipped): f(x) = (1 - |x|) / Z with
  // Z = integral (1 - |x|) dx = pi / 3 on the unit disk.
  DensitySpec spec =
      DensitySpec::margin_power(kDisk, 1.0, 1.0, RngStream(16, 0), 400000);
  const double z_exact = M_PI / 3.0;
  CHECK(std::abs(spec.normalization() - z_exact) <
        5.0 * spec.normalization_stderr() + 1e-12);
  Vec x = Vec::Zero(2);
  CHECK(spec.density(x) == doctest::Approx(1.0 / spec.normalization()));
  x(0) = 0.5;
  CHECK(spec.density(x) == doctest::Approx(0.5 / spec.normalization()));
  CHECK(spec.margin_alpha() == doctest::Approx(1.0));
  CHECK(spec.margin_t0() ==
        doctest::Approx(1.0 / spec.normalization()));  // c * rho0^gamma
  CHECK(spec.bound_M() >= spec.density(Vec::Zero(2)) * (1.0 - 1e-6));
}

TEST_CASE("margin-power samples obey the density (radial chi-square)") {
  // gamma = 1, rho0 = 1 on the disk: radial density 2 pi r (1-r) / Z,
  // P(R <= r) = (3 r^2 - 2 r^3).
  DensitySpec spec =
      DensitySpec::margin_power(kDisk, 1.0, 1.0, RngStream(17, 0), 200000);
  const long n = 30000;
  const PointSet pts = spec.sample(n, RngStream(18, 0));
  const int bins = 10;
  std::vector<long> observed(bins, 0);
  std::vector<double> expected(bins);
  auto cdf = [](double r) { return 3 * r * r - 2 * r * r * r; };
  for (int b = 0; b < bins; ++b)
    expected[b] = cdf((b + 1.0) / bins) - cdf(static_cast<double>(b) / bins);
  for (long i = 0; i < n; ++i) {
    const double r = pts.row(i).norm();
    ++observed[std::min(bins - 1, static_cast<int>(r * bins))];
  }
  CHECK(chi_square_gof(observed, expected).p_value > 1e-3);
}

TEST_CASE("margin-power samples stay within the density bound region") {
  // Every sampled point has f(x) <= bound_M (the certified sup bound).
  DensitySpec spec = DensitySpec::margin_power(ConvexBody::unit_box(2), 2.0,
                                               0.25, RngStream(19, 0), 200000);
  const PointSet pts = spec.sample(3000, RngStream(20, 0));
  for (long i = 0; i < pts.rows(); ++i) {
    CHECK(spec.support().contains(pts.row(i).transpose(), 1e-9));
    CHECK(spec.density(pts.row(i).transpose()) <=
          spec.bound_M() * (1.0 + 1e-6));
  }
}

TEST_CASE("projection density of the ball onto the disk") {
  // Uniform on B^3, first two coordinates: density
  // f(x) = 2 sqrt(1-|x|^2) / vol(B^3) = (3 / 2 pi) sqrt(1 - |x|^2).
  DensitySpec spec = DensitySpec::projection(ConvexBody::unit_ball(3), 2);
  CHECK(spec.ambient_dim() == 3);
  CHECK(spec.dim() == 2);
  Vec x = Vec::Zero(2);
  CHECK(spec.density(x) == doctest::Approx(3.0 / (2.0 * M_PI)));
  x(0) = 0.6;
  CHECK(spec.density(x) ==
        doctest::Approx(3.0 / (2.0 * M_PI) * std::sqrt(1 - 0.36)));
  CHECK(spec.bound_M() == doctest::Approx(3.0 / (2.0 * M_PI)));
  CHECK(spec.rolling_radius() == doctest::Approx(1.0));

  // Radial law of the projected sample: P(R <= r) = 1 - (1 - r^2)^{3/2}.
  const long n = 30000;
  const PointSet pts = spec.sample(n, RngStream(22, 0));
  const int bins = 10;
  std::vector<long> observed(bins, 0);
  std::vector<double> expected(bins);
  auto cdf = [](double r) { return 1.0 - std::pow(1 - r * r, 1.5); };
  for (int b = 0; b < bins; ++b)
    expected[b] = cdf((b + 1.0) / bins) - cdf(static_cast<double>(b) / bins);
  for (long i = 0; i < n; ++i) {
    const double r = std::min(0.999999, pts.row(i).norm());
    ++observed[std::min(bins - 1, static_cast<int>(r * bins))];
  }
  CHECK(chi_square_gof(observed, expected).p_value > 1e-3);
}

TEST_CASE("affine pushforward of the uniform law matches direct sampling") {
  // T(X) with X uniform on K has the same law as uniform on T(K):
  // KS on a 1-d projection of the two samples.
  Mat lin(2, 2);
  lin << 1.5, 0.7, 0.0, 0.8;
  AffineMap t{lin, Vec::Ones(2)};
  const ConvexBody mapped = affine_map(t, kDisk);
  const long n = 20000;
  const PointSet direct = sample_uniform(mapped, n, RngStream(23, 1));
  PointSet pushed = sample_uniform(kDisk, n, RngStream(23, 2));
  pushed = affine_map(t, pushed);
  Vec dir(2);
  dir << 0.3, 0.9;
  std::vector<double> a(n), b(n);
  for (long i = 0; i < n; ++i) {
    a[i] = direct.row(i) * dir;
    b[i] = pushed.row(i) * dir;
  }
  CHECK(ks_two_sample(a, b).p_value > 1e-3);
}

TEST_CASE("uniform density spec reports 1/|K|") {
  DensitySpec spec = DensitySpec::uniform(kDisk);
  CHECK(spec.density(Vec::Zero(2)) == doctest::Approx(1.0 / M_PI));
  CHECK(spec.bound_M() == doctest::Approx(1.0 / M_PI));
  Vec outside(2);
  outside << 2, 0;
  CHECK_THROWS_AS(spec.density(outside), OutsideSupport);
}

TEST_CASE("density sampling is deterministic in the stream") {
  DensitySpec spec =
      DensitySpec::margin_power(kDisk, 1.0, 0.5, RngStream(25, 0), 50000);
  const PointSet a = spec.sample(100, RngStream(26, 0));
  const PointSet b = spec.sample(100, RngStream(26, 0));
  CHECK((a - b).norm() == 0.0);
}
