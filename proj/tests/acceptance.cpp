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

// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; run with the criterion number (1-11) as the only argument. All
// tolerances are pinned here, not configurable.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "config.hpp"

using namespace polylab;

namespace {

constexpr std::uint64_t kSeed = 20260823;

bool g_all = true;

void report(int crit, const std::string& label, bool pass,
            const std::string& detail) {
  std::printf("criterion %2d (%s): %s  [%s]\n", crit, label.c_str(),
              pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  g_all = g_all && pass;
}

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, args...);
  return buf;
}

const int kThreads = 1;

// 1. Identity between expected missing mass and expected vertex ratio on the
// triangle, n = 3, with the pinned point value 11/12.
void criterion1() {
  const DensitySpec tri = DensitySpec::uniform(ConvexBody::standard_simplex(2));
  const CheckReport r =
      check_efron(tri, 3, 200000, 0, RngStream(kSeed, 1), kThreads);
  const double lhs = r.stat("lhs_missing_mass");
  const bool identity = r.pass;
  const bool point = std::abs(lhs - 11.0 / 12.0) <= 0.005;
  report(1, "missing-mass / vertex-ratio identity", identity && point,
         fmt("|lhs-rhs|=%.2e <= 3sigma=%.2e, lhs=%.5f vs 11/12=%.5f",
             r.stat("abs_diff"), 3 * r.stat("combined_stderr"), lhs,
             11.0 / 12.0));
}

// 2. Falling-factorial moment inequality on the disk for (n,q) in
// {(30,2),(10,3)}, plus the q = 1 degeneration back to criterion 1.
void criterion2() {
  const DensitySpec disk = DensitySpec::uniform(ConvexBody::unit_ball(2));
  bool all = true;
  std::string detail;
  int tag = 0;
  for (const auto& [n, q] : std::vector<std::pair<long, int>>{{30, 2},
                                                              {10, 3}}) {
    const CheckReport r = check_extended_efron(
        disk, n, q, 100000, 0, RngStream(kSeed, 20 + tag++), kThreads);
    all = all && r.pass;
    detail += fmt("(n=%ld,q=%d): lhs=%.4g rhs=%.4g; ", n, q,
                  r.stat("lhs_falling_factorial"),
                  r.stat("rhs_fresh_indicator"));
  }
  const DensitySpec tri = DensitySpec::uniform(ConvexBody::standard_simplex(2));
  const CheckReport r1 =
      check_extended_efron(tri, 3, 1, 100000, 0, RngStream(kSeed, 25),
                           kThreads);
  const double sigma =
      std::sqrt(std::pow(r1.stat("rhs_plug_in_stderr"), 2) +
                std::pow(r1.stat("lhs_stderr"), 2));
  const bool q1_matches =
      r1.pass &&
      std::abs(r1.stat("rhs_plug_in") - 11.0 / 12.0) <= 0.005 + 3 * sigma;
  all = all && q1_matches;
  detail += fmt("q=1 plug-in=%.5f", r1.stat("rhs_plug_in"));
  report(2, "moment inequality, both routes", all, detail);
}

std::vector<long> dyadic_grid(long base, int levels) {
  std::vector<long> grid;
  for (int i = 0; i < levels; ++i) grid.push_back(base << i);
  return grid;
}

// 3. Missing-volume decay exponent -2/(d+1) for the disk and the 3-ball.
void criterion3() {
  const std::vector<long> grid = dyadic_grid(64, 8);
  bool all = true;
  std::string detail;
  int tag = 0;
  for (int d : {2, 3}) {
    const DensitySpec ball = DensitySpec::uniform(ConvexBody::unit_ball(d));
    const double target = -2.0 / (d + 1);
    const RateCheck rc = check_rate(
        ball, RateQuantity::MissingVolumeFraction, 1.0, grid, 2000, 0, target,
        /*bound_mode=*/false, 0.08, RngStream(kSeed, 30 + tag++), kThreads);
    const bool ok = rc.report.pass && rc.fit.r_squared >= 0.98;
    all = all && ok;
    detail += fmt("d=%d: exp=%.4f (target %.4f), r2=%.4f; ", d,
                  rc.fit.exponent, target, rc.fit.r_squared);
  }
  report(3, "missing-volume rate", all, detail);
}

// 4. Vertex-count growth exponent q(d-1)/(d+1): tight on the disk for
// q = 1, 2; upper bound on the square and the triangle.
void criterion4() {
  const std::vector<long> grid = dyadic_grid(64, 8);
  bool all = true;
  std::string detail;
  const DensitySpec disk = DensitySpec::uniform(ConvexBody::unit_ball(2));
  int tag = 0;
  for (double q : {1.0, 2.0}) {
    const RateCheck rc = check_rate(
        disk, RateQuantity::VertexCount, q, grid, 2000, 0, q / 3.0,
        /*bound_mode=*/false, q >= 2 ? 0.12 : 0.08,
        RngStream(kSeed, 40 + tag++), kThreads);
    all = all && rc.report.pass;
    detail += fmt("disk q=%g: exp=%.4f; ", q, rc.fit.exponent);
  }
  for (const auto& [label, body] :
       std::vector<std::pair<std::string, ConvexBody>>{
           {"square", ConvexBody::unit_box(2)},
           {"triangle", ConvexBody::standard_simplex(2)}}) {
    const RateCheck rc = check_rate(
        DensitySpec::uniform(body), RateQuantity::VertexCount, 1.0, grid,
        2000, 0, 1.0 / 3.0, /*bound_mode=*/true, 0.08,
        RngStream(kSeed, 40 + tag++), kThreads);
    all = all && rc.report.pass;
    detail += fmt("%s: exp=%.4f <= 1/3+0.08; ", label.c_str(),
                  rc.fit.exponent);
  }
  report(4, "vertex-count rate", all, detail);
}

// 5. Missing-volume control by the weighted missing mass under the margin
// condition: no violations over gamma in {1,2}, n in {200,500}.
void criterion5() {
  bool all = true;
  std::string detail;
  int tag = 0;
  for (double gamma : {1.0, 2.0}) {
    const DensitySpec spec = DensitySpec::margin_power(
        ConvexBody::unit_ball(2), gamma, 0.5, RngStream(kSeed, 50 + tag),
        1000000);
    for (long n : {200L, 500L}) {
      const CheckReport r = check_margin_transfer(
          spec, n, 1000, 100000, RngStream(kSeed, 55 + tag++), kThreads);
      all = all && r.pass;
      detail += fmt("g=%g,n=%ld: viol=%g/%g; ", gamma, n,
                    r.stat("violations"), r.stat("qualifying_fraction") * 1000);
    }
  }
  report(5, "margin transfer", all, detail);
}

// 6. Missing-volume decay under the gamma = 1 margin density is at least as
// fast as n^{-1/3} (upper bound mode).
void criterion6() {
  const DensitySpec spec = DensitySpec::margin_power(
      ConvexBody::unit_ball(2), 1.0, 0.5, RngStream(kSeed, 60), 1000000);
  const std::vector<long> grid = dyadic_grid(64, 6);
  const RateCheck rc = check_rate(
      spec, RateQuantity::MissingVolumeFraction, 1.0, grid, 1000, 1000,
      -1.0 / 3.0, /*bound_mode=*/true, 0.08, RngStream(kSeed, 61), kThreads);
  report(6, "margin-density volume rate", rc.report.pass,
         fmt("exp=%.4f <= -1/3 + 0.08", rc.fit.exponent));
}

// 7. Symmetric-difference volume dominated by alpha_1 times the Hausdorff
// distance on 1000 random hull pairs in B_2 and B_3.
void criterion7() {
  bool all = true;
  std::string detail;
  for (int d : {2, 3}) {
    const CheckReport r = check_nykodim_domination(
        d, 1000, 30, 20000, RngStream(kSeed, 70 + d), kThreads);
    all = all && r.pass && r.stat("violations") == 0.0;
    detail += fmt("d=%d: worst ratio=%.3f, viol=%g; ", d,
                  r.stat("worst_bound_ratio"), r.stat("violations"));
  }
  report(7, "symmetric-difference domination", all, detail);
}

// 8. Projected 3-ball density: binned lower bound near the boundary and the
// full radial chi-square, n = 10^6.
void criterion8() {
  const CheckReport r =
      check_projection_density(3, 2, 1000000, RngStream(kSeed, 80));
  report(8, "projection density", r.pass,
         fmt("worst bin gap=%.3g, chi2 p=%.4g", r.stat("worst_bin_gap"),
             r.stat("chi2_p_value")));
}

// 9. Log-linear decay of the centered missing-volume tail on the square and
// the disk, n = 1024.
void criterion9() {
  bool all = true;
  std::string detail;
  int tag = 0;
  for (const auto& [label, body] :
       std::vector<std::pair<std::string, ConvexBody>>{
           {"square", ConvexBody::unit_box(2)},
           {"disk", ConvexBody::unit_ball(2)}}) {
    const CheckReport r =
        check_deviation_tail(DensitySpec::uniform(body), 1024, 50000,
                             RngStream(kSeed, 90 + tag++), kThreads);
    all = all && r.pass;
    detail += fmt("%s: r2=%.4f, rate=%.3g; ", label.c_str(),
                  r.stat("r_squared"), r.stat("decay_rate"));
  }
  report(9, "deviation tail", all, detail);
}

// 10. KS agreement of the missing-volume fraction across a random shear of
// the triangle with condition number <= 50.
void criterion10() {
  RngStream rng(kSeed, 100);
  Mat lin(2, 2);
  double cond = 1e100;
  // Rejection-sample a shear with the required conditioning.
  while (cond > 50.0) {
    lin << 1.0, rng.uniform(2.0, 8.0), 0.0, 1.0;
    const Eigen::JacobiSVD<Mat> svd(lin);
    cond = svd.singularValues()(0) / svd.singularValues()(1);
  }
  Vec shift(2);
  shift << rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0);
  const CheckReport r = check_affine_invariance(
      ConvexBody::standard_simplex(2), AffineMap{lin, shift}, 100, 10000,
      RngStream(kSeed, 101), kThreads);
  report(10, "affine invariance", r.pass,
         fmt("cond=%.1f, KS p=%.4g > 1e-3", cond, r.stat("p_value")));
}

// 11. Byte-identical CSV output for the same seed at different thread counts.
void criterion11() {
  const std::string base =
      "d = 2\nbody = disk\ndensity = uniform\nn = 64\nn_grid = 16:128:x2\n"
      "reps = 300\nfresh_m = 1000\nseed = 424242\n"
      "checks = efron,rate_vn,rate_rn\n";
  std::string csv1, csv4;
  {
    ExperimentConfig cfg = parse_config_text(base + "threads = 1\n");
    csv1 = run_experiment(cfg).csv;
  }
  {
    ExperimentConfig cfg = parse_config_text(base + "threads = 4\n");
    csv4 = run_experiment(cfg).csv;
  }
  report(11, "thread-count determinism", csv1 == csv4 && !csv1.empty(),
         fmt("%zu CSV bytes, identical=%d", csv1.size(),
             static_cast<int>(csv1 == csv4)));
}

}  // namespace

int main(int argc, char** argv) {
  void (*criteria[])() = {criterion1, criterion2, criterion3, criterion4,
                          criterion5, criterion6, criterion7, criterion8,
                          criterion9, criterion10, criterion11};
  if (argc == 2) {
    const int k = std::atoi(argv[1]);
    if (k < 1 || k > 11) {
      std::fprintf(stderr, "usage: %s [1-11]\n", argv[0]);
      return 2;
    }
    criteria[k - 1]();
  } else {
    for (auto* c : criteria) c();
  }
  return g_all ? 0 : 1;
}
