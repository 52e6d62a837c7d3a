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

#ifndef POLYLAB_ANALYSIS_HPP
#define POLYLAB_ANALYSIS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sampling.hpp"
#include "stats.hpp"

namespace polylab {

// One hull of n fresh draws from the density.
struct HullReplicate {
  long n = 0;
  int vertex_count = 0;
  double missing_volume = 0.0;  // |K| - |hull|, exact
  double missing_mass = 0.0;    // f-mass of K \ hull
  int redraws = 0;              // degenerate samples redrawn
  Polytope hull;
};

// Replicate-level parallelism keyed by index; results are identical for any
// thread count. fresh_m is the per-replicate fresh-point budget for the
// missing-mass estimate (ignored for uniform densities, where the mass is
// the exact volume fraction).
std::vector<HullReplicate> run_replicates(const DensitySpec& spec, long n,
                                          long reps, long fresh_m,
                                          RngStream base, int threads);

// Pass/fail record of one verification; every numeric entry carries its
// uncertainty as a companion stat.
struct CheckReport {
  std::string name;
  bool pass = false;
  std::vector<std::pair<std::string, double>> stats;
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;

  double stat(const std::string& key) const;
};

// E[1 - mu(hull_n)] == E[R_{n+1}] / (n+1), estimated from independent
// replicate pools; passes within 3 combined standard errors.
CheckReport check_efron(const DensitySpec& spec, long n, long reps,
                        long fresh_m, RngStream rng, int threads);

// E[prod_{j<q} (R_{n+q}-j)/(n+q-j)] <= E[(1 - mu(hull_n))^q], with the
// right side estimated by two routes (plug-in volume fraction for uniform
// densities, q-fresh-point indicator for any density).
CheckReport check_extended_efron(const DensitySpec& spec, long n, int q,
                                 long reps, long fresh_m, RngStream rng,
                                 int threads);

// Per-replicate missing-volume control by the weighted missing mass:
// |K \ hull| <= (L+1) d_f^{alpha/(alpha+1)} whenever d_f <= t0^{alpha+1}.
CheckReport check_margin_transfer(const DensitySpec& spec, long n, long reps,
                                  long fresh_m, RngStream rng, int threads);

enum class RateQuantity { MissingMass, MissingVolumeFraction, VertexCount };

struct RateCheck {
  RateFit fit;
  CheckReport report;
  std::vector<MomentEstimate> moments;
};

// Fits the growth exponent of E[quantity^q] on a geometric n-grid.
// tight mode: |exponent - target| <= tol_exp; bound mode: exponent <=
// target + tol_exp.
RateCheck check_rate(const DensitySpec& spec, RateQuantity quantity, double q,
                     const std::vector<long>& n_grid, long reps, long fresh_m,
                     double target, bool bound_mode, double tol_exp,
                     RngStream rng, int threads);

// Exponential-tail property of n (missing_mass - c_hat n^{-2/(d+1)}):
// log empirical survival must be decreasing and log-linear (r^2 >= 0.9)
// on the 60th-99.5th percentile grid.
CheckReport check_deviation_tail(const DensitySpec& spec, long n, long reps,
                                 RngStream rng, int threads);

// Two-sample KS between the missing volume fractions on K and on T(K).
CheckReport check_affine_invariance(const ConvexBody& body, const AffineMap& t,
                                    long n, long reps, RngStream rng,
                                    int threads);

// Vertex-count growth exponents over a roster of bounded densities never
// exceed (d-1)/(d+1) + tol_exp.
CheckReport check_worst_case_uniform(const ConvexBody& body,
                                     const std::vector<long>& n_grid,
                                     long reps, double tol_exp, RngStream rng,
                                     int threads);

// Nykodim distance dominated by Hausdorff distance: MC |G triangle G'| <=
// alpha_1 d_H(G, G') + 3 stderr on random hull pairs in the unit ball.
CheckReport check_nykodim_domination(int d, long pairs, long points_per_hull,
                                     long mc_points, RngStream rng,
                                     int threads);

// Projection push-forward density: binned lower bound near the boundary and
// chi-square fit of the full radial law (ambient ball -> disk).
CheckReport check_projection_density(int ambient_dim, int d, long n,
                                     RngStream rng);

// Parallel loop helper with deterministic work assignment by index.
void parallel_for(int threads, long count,
                  const std::function<void(long)>& body);

}  // namespace polylab

#endif  // POLYLAB_ANALYSIS_HPP
