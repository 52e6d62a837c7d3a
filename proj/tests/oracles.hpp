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

// Slow independent reference implementations used to pin the fast code.

#ifndef POLYLAB_TESTS_ORACLES_HPP
#define POLYLAB_TESTS_ORACLES_HPP

#include <algorithm>
#include <set>
#include <vector>

#include "geometry.hpp"
#include "hull.hpp"
#include "rng.hpp"

namespace polylab::oracle {

// Indices of the extreme points of a point set, found without building any
// hull: a point is extreme iff it lies strictly outside the hull of the
// others, measured by Frank-Wolfe distance to their convex combination.
inline std::vector<int> extreme_points(const PointSet& points,
                                       double eps = 1e-5) {
  const long n = points.rows();
  std::vector<int> out;
  for (long i = 0; i < n; ++i) {
    std::vector<Vec> others;
    for (long j = 0; j < n; ++j)
      if (j != i) others.push_back(points.row(j).transpose());
    if (distance_to_hull(points.row(i).transpose(), others, 3e-8) > eps)
      out.push_back(static_cast<int>(i));
  }
  return out;
}

// Monte Carlo volume of {x : member(x)} inside the box [lo, hi].
template <typename Member>
inline double mc_volume(const Vec& lo, const Vec& hi, long m, Member member,
                        RngStream rng) {
  const int d = static_cast<int>(lo.size());
  long hits = 0;
  Vec x(d);
  for (long i = 0; i < m; ++i) {
    for (int j = 0; j < d; ++j) x(j) = rng.uniform(lo(j), hi(j));
    if (member(x)) ++hits;
  }
  double box = 1.0;
  for (int j = 0; j < d; ++j) box *= hi(j) - lo(j);
  return box * static_cast<double>(hits) / static_cast<double>(m);
}

// Hausdorff distance by dense sampling of both vertex sets against the
// opposing polytope (convexity makes vertex maxima sufficient; this version
// recomputes the distances with a brute projected-gradient descent).
inline double brute_point_to_poly(const Vec& x, const Polytope& poly) {
  return distance_to_hull(x, poly.vertices, 1e-9);
}

inline double brute_hausdorff(const Polytope& p, const Polytope& q) {
  double best = 0.0;
  for (const auto& v : p.vertices)
    best = std::max(best, brute_point_to_poly(v, q));
  for (const auto& v : q.vertices)
    best = std::max(best, brute_point_to_poly(v, p));
  return best;
}

}  // namespace polylab::oracle

#endif  // POLYLAB_TESTS_ORACLES_HPP
