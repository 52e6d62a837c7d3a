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

#ifndef POLYLAB_GEOMETRY_HPP
#define POLYLAB_GEOMETRY_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "hull.hpp"
#include "rng.hpp"

namespace polylab {

// Parametric convex body with membership, boundary distance and exact volume.
// Immutable after construction; cheap to copy (Poly payload is shared).
class ConvexBody {
 public:
  enum class Kind { Ball, Box, Simplex, Ellipsoid, Poly };

  static ConvexBody ball(Vec center, double radius);
  static ConvexBody box(Vec lower, Vec upper);
  static ConvexBody simplex(std::vector<Vec> vertices);
  // Ellipsoid {x : (x-c)^T A^{-1} (x-c) <= 1}, A symmetric positive definite.
  static ConvexBody ellipsoid(Vec center, Mat shape);
  static ConvexBody poly(Polytope p);

  // Common parametric instances.
  static ConvexBody unit_ball(int d) { return ball(Vec::Zero(d), 1.0); }
  static ConvexBody unit_box(int d) { return box(Vec::Zero(d), Vec::Ones(d)); }
  // conv{0, e_1, ..., e_d}
  static ConvexBody standard_simplex(int d);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  std::string kind_name() const;

  bool contains(const Vec& x, double tol = 1e-9) const;
  double exact_volume() const;
  // Distance from an interior point to the boundary. Throws OutsideBody.
  double boundary_distance(const Vec& x) const;
  // Axis-aligned bounding box (lower, upper).
  std::pair<Vec, Vec> bounding_box() const;
  // Upper bound on sup_{x in K} rho(x, boundary); exact inradius for
  // Ball/Box/Ellipsoid/Simplex, half the smallest box side for Poly.
  double inradius_bound() const;
  // Upper bound on the surface area (sphere of the circumscribed ball).
  double surface_area_bound() const;

  // Accessors for kind-specific parameters.
  const Vec& center() const { return center_; }
  double radius() const { return radius_; }
  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }
  const std::vector<Vec>& simplex_vertices() const { return simplex_vtx_; }
  const Mat& shape() const { return shape_; }
  const Polytope& polytope() const;

 private:
  ConvexBody() = default;

  Kind kind_ = Kind::Ball;
  int dim_ = 0;
  Vec center_;
  double radius_ = 0.0;
  Vec lower_, upper_;
  std::vector<Vec> simplex_vtx_;
  Mat shape_;        // ellipsoid
  Mat shape_inv_;    // cached inverse
  Vec shape_eigval_; // eigenvalues of shape (squared semi-axes)
  Mat shape_eigvec_;
  std::shared_ptr<const Polytope> poly_;
  // Simplex facet half-spaces (outward unit normals) and (d-1)-volumes.
  std::vector<Vec> facet_normals_;
  std::vector<double> facet_offsets_;
  std::vector<double> facet_areas_;
  double simplex_inradius_ = 0.0;
};

struct SteinerBallConstants {
  std::vector<double> coefficients;  // L_j(B_d), j = 1..d
  double alpha1 = 0.0;               // sum L_j 2^j
  double alpha2 = 0.0;               // sum L_j
};

// Neighborhood-volume expansion coefficients of the unit ball:
// |B^lambda \ B| = beta_d ((1+lambda)^d - 1), so L_j = C(d,j) beta_d.
SteinerBallConstants steiner_ball_constants(int d);

// Maximum-volume inscribed ellipsoid for the closed-form kinds
// (Ball, Ellipsoid, Box, Simplex). Throws Unsupported for Poly.
ConvexBody john_ellipsoid_analytic(const ConvexBody& body);

// Invertible affine transform x -> A x + b.
struct AffineMap {
  Mat linear;
  Vec shift;

  static AffineMap identity(int d) {
    return {Mat::Identity(d, d), Vec::Zero(d)};
  }
};

PointSet affine_map(const AffineMap& t, const PointSet& points);
Polytope affine_map(const AffineMap& t, const Polytope& poly);
ConvexBody affine_map(const AffineMap& t, const ConvexBody& body);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

// Unbiased Monte Carlo estimate of |G triangle H| from m uniform points in
// the union of the two bounding boxes.
MonteCarloEstimate symmetric_difference_volume(const ConvexBody& g,
                                               const ConvexBody& h, long m,
                                               RngStream rng);

}  // namespace polylab

#endif  // POLYLAB_GEOMETRY_HPP
