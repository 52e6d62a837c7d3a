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

#ifndef POLYLAB_HULL_HPP
#define POLYLAB_HULL_HPP

#include <vector>

#include "common.hpp"

namespace polylab {

// Convex polytope in V-representation plus facet half-spaces {x : n.x <= b}.
// Facet normals are unit vectors, offsets absolute. Facets are simplicial
// (d vertices each); coplanar facets may appear and are harmless.
struct Polytope {
  int dim = 0;
  std::vector<Vec> vertices;
  struct Facet {
    Vec normal;
    double offset = 0.0;
    std::vector<int> vertex_ids;  // indices into `vertices`, size == dim
  };
  std::vector<Facet> facets;
  Vec interior_point;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
};

// Incremental beneath-beyond hull of n points in R^d (rows of `points`).
// Requires >= d+1 points affinely spanning R^d. `tol` < 0 picks the adaptive
// default 1e-9 * coordinate scale.
Polytope convex_hull(const PointSet& points, double tol = -1.0);

// Exact volume by signed-simplex decomposition from the interior point.
double polytope_volume(const Polytope& poly);

// Half-space membership with slack >= -tol on every facet.
bool contains(const Polytope& poly, const Vec& x, double tol = 1e-9);

// Euclidean distance from x to conv(vertices), by away-step Frank-Wolfe with
// duality-gap stopping. Works on any finite point set, hull not required.
double distance_to_hull(const Vec& x, const std::vector<Vec>& vertices,
                        double tol = 1e-8);

double distance_to_convex(const Vec& x, const Polytope& poly,
                          double tol = 1e-8);

// Hausdorff distance between convex polytopes: max over the vertices of each
// of the distance to the other.
double hausdorff_distance(const Polytope& p, const Polytope& q,
                          double tol = 1e-8);

// Consistency check used by polytope_volume and tests: every vertex satisfies
// every facet inequality and lies on >= dim facets, all within tol.
void validate_polytope(const Polytope& poly, double tol = 1e-7);

}  // namespace polylab

#endif  // POLYLAB_HULL_HPP
