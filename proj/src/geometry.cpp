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

#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polylab {

namespace {

double gram_volume(const Mat& edges) {
  // (k)-volume of the parallelotope spanned by the columns, / k!.
  const int k = static_cast<int>(edges.cols());
  double factorial = 1.0;
  for (int i = 2; i <= k; ++i) factorial *= i;
  const Mat gram = edges.transpose() * edges;
  const double det = gram.determinant();
  return det > 0 ? std::sqrt(det) / factorial : 0.0;
}

}  // namespace

ConvexBody ConvexBody::ball(Vec center, double radius) {
  if (radius <= 0) throw ValidationError("ball radius must be positive");
  ConvexBody b;
  b.kind_ = Kind::Ball;
  b.dim_ = static_cast<int>(center.size());
  b.center_ = std::move(center);
  b.radius_ = radius;
  return b;
}

ConvexBody ConvexBody::box(Vec lower, Vec upper) {
  if (lower.size() != upper.size())
    throw DimensionMismatch("box bounds dimension mismatch");
  if (((upper - lower).array() <= 0).any())
    throw ValidationError("box must have positive side lengths");
  ConvexBody b;
  b.kind_ = Kind::Box;
  b.dim_ = static_cast<int>(lower.size());
  b.lower_ = std::move(lower);
  b.upper_ = std::move(upper);
  b.center_ = 0.5 * (b.lower_ + b.upper_);
  return b;
}

ConvexBody ConvexBody::simplex(std::vector<Vec> vertices) {
  if (vertices.empty()) throw ValidationError("simplex needs vertices");
  const int d = static_cast<int>(vertices[0].size());
  if (static_cast<int>(vertices.size()) != d + 1)
    throw ValidationError("simplex in R^d needs d+1 vertices");
  ConvexBody b;
  b.kind_ = Kind::Simplex;
  b.dim_ = d;
  b.simplex_vtx_ = std::move(vertices);
  b.center_ = Vec::Zero(d);
  for (const Vec& v : b.simplex_vtx_) b.center_ += v;
  b.center_ /= static_cast<double>(d + 1);

  // Facet half-spaces and areas; facet i omits vertex i.
  double total_area = 0.0;
  for (int omit = 0; omit <= d; ++omit) {
    std::vector<const Vec*> face;
    for (int i = 0; i <= d; ++i)
      if (i != omit) face.push_back(&b.simplex_vtx_[i]);
    Mat edges(d, d - 1);
    for (int i = 1; i < d; ++i) edges.col(i - 1) = *face[i] - *face[0];
    Vec normal;
    if (d == 2) {
      normal = Vec(2);
      normal << -edges(1, 0), edges(0, 0);
    } else {
      Eigen::HouseholderQR<Mat> qr(edges);
      Mat q = qr.householderQ();
      normal = q.col(d - 1);
    }
    const double len = normal.norm();
    if (len <= 0) throw DegenerateInput("simplex is degenerate");
    normal /= len;
    double offset = normal.dot(*face[0]);
    if (normal.dot(b.simplex_vtx_[omit]) > offset) {
      normal = -normal;
      offset = -offset;
    }
    if (std::abs(normal.dot(b.simplex_vtx_[omit]) - offset) < 1e-14)
      throw DegenerateInput("simplex has zero volume");
    b.facet_normals_.push_back(normal);
    b.facet_offsets_.push_back(offset);
    const double area = gram_volume(edges);
    b.facet_areas_.push_back(area);
    total_area += area;
  }
  b.simplex_inradius_ = b.dim_ * b.exact_volume() / total_area;
  return b;
}

ConvexBody ConvexBody::standard_simplex(int d) {
  std::vector<Vec> v;
  v.push_back(Vec::Zero(d));
  for (int i = 0; i < d; ++i) v.push_back(Vec::Unit(d, i));
  return simplex(std::move(v));
}

ConvexBody ConvexBody::ellipsoid(Vec center, Mat shape) {
  const int d = static_cast<int>(center.size());
  if (shape.rows() != d || shape.cols() != d)
    throw DimensionMismatch("ellipsoid shape matrix dimension mismatch");
  ConvexBody b;
  b.kind_ = Kind::Ellipsoid;
  b.dim_ = d;
  b.center_ = std::move(center);
  b.shape_ = 0.5 * (shape + shape.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(b.shape_);
  if (eig.eigenvalues().minCoeff() <= 0)
    throw ValidationError("ellipsoid shape matrix must be positive definite");
  b.shape_eigval_ = eig.eigenvalues();
  b.shape_eigvec_ = eig.eigenvectors();
  b.shape_inv_ = b.shape_eigvec_ *
                 b.shape_eigval_.cwiseInverse().asDiagonal() *
                 b.shape_eigvec_.transpose();
  return b;
}

ConvexBody ConvexBody::poly(Polytope p) {
  ConvexBody b;
  b.kind_ = Kind::Poly;
  b.dim_ = p.dim;
  b.center_ = p.interior_point;
  b.poly_ = std::make_shared<const Polytope>(std::move(p));
  return b;
}

const Polytope& ConvexBody::polytope() const {
  if (kind_ != Kind::Poly) throw Unsupported("body is not a polytope");
  return *poly_;
}

std::string ConvexBody::kind_name() const {
  switch (kind_) {
    case Kind::Ball: return "ball";
    case Kind::Box: return "box";
    case Kind::Simplex: return "simplex";
    case Kind::Ellipsoid: return "ellipsoid";
    case Kind::Poly: return "poly";
  }
  return "?";
}

bool ConvexBody::contains(const Vec& x, double tol) const {
  if (x.size() != dim_)
    throw DimensionMismatch("point/body dimension mismatch");
  switch (kind_) {
    case Kind::Ball:
      return (x - center_).norm() <= radius_ + tol;
    case Kind::Box:
      return ((x - lower_).array() >= -tol).all() &&
             ((upper_ - x).array() >= -tol).all();
    case Kind::Simplex: {
      for (size_t i = 0; i < facet_normals_.size(); ++i)
        if (facet_normals_[i].dot(x) - facet_offsets_[i] > tol) return false;
      return true;
    }
    case Kind::Ellipsoid: {
      const Vec u = x - center_;
      return u.dot(shape_inv_ * u) <= 1.0 + tol;
    }
    case Kind::Poly:
      return polylab::contains(*poly_, x, tol);
  }
  return false;
}

double ConvexBody::exact_volume() const {
  switch (kind_) {
    case Kind::Ball:
      return unit_ball_volume(dim_) * std::pow(radius_, dim_);
    case Kind::Box:
      return (upper_ - lower_).prod();
    case Kind::Simplex: {
      Mat edges(dim_, dim_);
      for (int i = 0; i < dim_; ++i)
        edges.col(i) = simplex_vtx_[i + 1] - simplex_vtx_[0];
      double factorial = 1.0;
      for (int i = 2; i <= dim_; ++i) factorial *= i;
      return std::abs(edges.determinant()) / factorial;
    }
    case Kind::Ellipsoid:
      return unit_ball_volume(dim_) * std::sqrt(shape_.determinant());
    case Kind::Poly:
      return polytope_volume(*poly_);
  }
  return 0.0;
}

double ConvexBody::boundary_distance(const Vec& x) const {
  if (!contains(x, 1e-9)) throw OutsideBody("point is outside the body");
  switch (kind_) {
    case Kind::Ball:
      return std::max(0.0, radius_ - (x - center_).norm());
    case Kind::Box:
      return std::max(
          0.0, std::min((x - lower_).minCoeff(), (upper_ - x).minCoeff()));
    case Kind::Simplex: {
      double best = std::numeric_limits<double>::infinity();
      for (size_t i = 0; i < facet_normals_.size(); ++i)
        best = std::min(best, facet_offsets_[i] - facet_normals_[i].dot(x));
      return std::max(0.0, best);
    }
    case Kind::Ellipsoid: {
      // Closest boundary point via the secular equation in the eigenbasis:
      // w_i = u_i a_i^2 / (a_i^2 + mu), sum w_i^2 / a_i^2 = 1, mu in
      // (-a_min^2, 0] for interior points.
      const Vec u = shape_eigvec_.transpose() * (x - center_);
      const Vec a2 = shape_eigval_;
      auto residual = [&](double mu) {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) {
          const double w = u(i) * a2(i) / (a2(i) + mu);
          s += w * w / a2(i);
        }
        return s;
      };
      const double a2_min = a2.minCoeff();
      double lo = -a2_min * (1.0 - 1e-12), hi = 0.0;
      if (residual(lo) < 1.0) {
        // No root before the pole: the minimizer is pinned at mu = -a_min^2
        // and picks up a component along a smallest axis (where u_i ~ 0).
        const double mu = -a2_min;
        double dist2 = 0.0;
        double mass = 0.0;
        for (int i = 0; i < dim_; ++i) {
          if (std::abs(a2(i) - a2_min) < 1e-12 * a2_min) continue;
          const double w = u(i) * a2(i) / (a2(i) + mu);
          dist2 += (u(i) - w) * (u(i) - w);
          mass += w * w / a2(i);
        }
        dist2 += std::max(0.0, (1.0 - mass) * a2_min);
        return std::sqrt(dist2);
      }
      for (int it = 0; it < 200; ++it) {
        const double mu = 0.5 * (lo + hi);
        if (residual(mu) > 1.0)
          lo = mu;
        else
          hi = mu;
      }
      const double mu = 0.5 * (lo + hi);
      double dist2 = 0.0;
      for (int i = 0; i < dim_; ++i) {
        const double w = u(i) * a2(i) / (a2(i) + mu);
        dist2 += (u(i) - w) * (u(i) - w);
      }
      return std::sqrt(dist2);
    }
    case Kind::Poly: {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& f : poly_->facets)
        best = std::min(best, f.offset - f.normal.dot(x));
      return std::max(0.0, best);
    }
  }
  return 0.0;
}

std::pair<Vec, Vec> ConvexBody::bounding_box() const {
  switch (kind_) {
    case Kind::Ball:
      return {center_.array() - radius_, center_.array() + radius_};
    case Kind::Box:
      return {lower_, upper_};
    case Kind::Ellipsoid: {
      Vec half(dim_);
      for (int i = 0; i < dim_; ++i) half(i) = std::sqrt(shape_(i, i));
      return {center_ - half, center_ + half};
    }
    case Kind::Simplex:
    case Kind::Poly: {
      const std::vector<Vec>& vs =
          kind_ == Kind::Simplex ? simplex_vtx_ : poly_->vertices;
      Vec lo = vs[0], hi = vs[0];
      for (const Vec& v : vs) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
      }
      return {lo, hi};
    }
  }
  throw NoBoundingBox("body exposes no bounding box");
}

double ConvexBody::inradius_bound() const {
  switch (kind_) {
    case Kind::Ball:
      return radius_;
    case Kind::Box:
      return 0.5 * (upper_ - lower_).minCoeff();
    case Kind::Ellipsoid:
      return std::sqrt(shape_eigval_.minCoeff());
    case Kind::Simplex:
      return simplex_inradius_;
    case Kind::Poly: {
      auto [lo, hi] = bounding_box();
      return 0.5 * (hi - lo).minCoeff();
    }
  }
  return 0.0;
}

double ConvexBody::surface_area_bound() const {
  switch (kind_) {
    case Kind::Ball:
      return unit_sphere_area(dim_) * std::pow(radius_, dim_ - 1);
    case Kind::Box: {
      const Vec side = upper_ - lower_;
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) s += 2.0 * side.prod() / side(i);
      return s;
    }
    case Kind::Simplex: {
      double s = 0.0;
      for (double a : facet_areas_) s += a;
      return s;
    }
    case Kind::Ellipsoid:
    case Kind::Poly: {
      // Surface area is monotone under inclusion for convex bodies; use the
      // circumscribed sphere around the bounding-box center.
      auto [lo, hi] = bounding_box();
      const double rad = 0.5 * (hi - lo).norm();
      return unit_sphere_area(dim_) * std::pow(rad, dim_ - 1);
    }
  }
  return 0.0;
}

SteinerBallConstants steiner_ball_constants(int d) {
  if (d < 2) throw ValidationError("dimension must be >= 2");
  SteinerBallConstants out;
  const double beta = unit_ball_volume(d);
  double binom = 1.0;
  for (int j = 1; j <= d; ++j) {
    binom = binom * (d - j + 1) / j;  // C(d, j)
    out.coefficients.push_back(binom * beta);
    out.alpha1 += binom * beta * std::pow(2.0, j);
    out.alpha2 += binom * beta;
  }
  return out;
}

ConvexBody john_ellipsoid_analytic(const ConvexBody& body) {
  const int d = body.dim();
  switch (body.kind()) {
    case ConvexBody::Kind::Ball:
      return ConvexBody::ellipsoid(
          body.center(), body.radius() * body.radius() * Mat::Identity(d, d));
    case ConvexBody::Kind::Ellipsoid:
      return ConvexBody::ellipsoid(body.center(), body.shape());
    case ConvexBody::Kind::Box: {
      const Vec half = 0.5 * (body.upper() - body.lower());
      return ConvexBody::ellipsoid(body.center(),
                                   half.array().square().matrix().asDiagonal());
    }
    case ConvexBody::Kind::Simplex: {
      // Affine image of the inscribed ball of a centered regular simplex.
      Mat basis = Mat::Zero(d + 1, d + 1);
      basis.col(0) = Vec::Ones(d + 1).normalized();
      Eigen::HouseholderQR<Mat> qr(basis);
      Mat q = qr.householderQ();  // cols 1..d span the sum-zero hyperplane
      std::vector<Vec> ref(d + 1);
      const Vec centroid = Vec::Ones(d + 1) / (d + 1);
      for (int i = 0; i <= d; ++i)
        ref[i] = q.rightCols(d).transpose() * (Vec::Unit(d + 1, i) - centroid);
      const double circum = ref[0].norm();  // sqrt(d/(d+1))
      const double inrad = circum / d;

      Mat m_ref(d, d), m_tgt(d, d);
      const auto& v = body.simplex_vertices();
      for (int i = 0; i < d; ++i) {
        m_ref.col(i) = ref[i + 1] - ref[0];
        m_tgt.col(i) = v[i + 1] - v[0];
      }
      const Mat lin = m_tgt * m_ref.inverse();
      return ConvexBody::ellipsoid(body.center(),
                                   inrad * inrad * lin * lin.transpose());
    }
    case ConvexBody::Kind::Poly:
      throw Unsupported("john ellipsoid for general polytopes");
  }
  throw Unsupported("unknown body kind");
}

PointSet affine_map(const AffineMap& t, const PointSet& points) {
  const int d = static_cast<int>(t.linear.rows());
  Eigen::FullPivLU<Mat> lu(t.linear);
  if (!lu.isInvertible()) throw SingularTransform("affine map not invertible");
  PointSet out = points * t.linear.transpose();
  out.rowwise() += t.shift.transpose();
  (void)d;
  return out;
}

Polytope affine_map(const AffineMap& t, const Polytope& poly) {
  Eigen::FullPivLU<Mat> lu(t.linear);
  if (!lu.isInvertible()) throw SingularTransform("affine map not invertible");
  const Mat inv_t = lu.inverse().transpose();
  Polytope out;
  out.dim = poly.dim;
  out.vertices.reserve(poly.vertices.size());
  for (const Vec& v : poly.vertices)
    out.vertices.push_back(t.linear * v + t.shift);
  out.interior_point = t.linear * poly.interior_point + t.shift;
  out.facets.reserve(poly.facets.size());
  for (const auto& f : poly.facets) {
    Polytope::Facet nf;
    nf.vertex_ids = f.vertex_ids;
    Vec n = inv_t * f.normal;
    const double len = n.norm();
    if (len <= 0) throw SingularTransform("degenerate facet image");
    n /= len;
    nf.normal = n;
    nf.offset = n.dot(out.vertices[f.vertex_ids[0]]);
    out.facets.push_back(std::move(nf));
  }
  return out;
}

ConvexBody affine_map(const AffineMap& t, const ConvexBody& body) {
  Eigen::FullPivLU<Mat> lu(t.linear);
  if (!lu.isInvertible()) throw SingularTransform("affine map not invertible");
  const int d = body.dim();
  switch (body.kind()) {
    case ConvexBody::Kind::Ball: {
      const double r2 = body.radius() * body.radius();
      return ConvexBody::ellipsoid(t.linear * body.center() + t.shift,
                                   r2 * t.linear * t.linear.transpose());
    }
    case ConvexBody::Kind::Ellipsoid:
      return ConvexBody::ellipsoid(
          t.linear * body.center() + t.shift,
          t.linear * body.shape() * t.linear.transpose());
    case ConvexBody::Kind::Simplex: {
      std::vector<Vec> v;
      for (const Vec& p : body.simplex_vertices())
        v.push_back(t.linear * p + t.shift);
      return ConvexBody::simplex(std::move(v));
    }
    case ConvexBody::Kind::Box: {
      // Diagonal positive maps keep the kind; otherwise map the corners.
      bool diag_pos = t.linear.isDiagonal(1e-14);
      if (diag_pos)
        for (int i = 0; i < d; ++i)
          if (t.linear(i, i) <= 0) diag_pos = false;
      if (diag_pos)
        return ConvexBody::box(t.linear * body.lower() + t.shift,
                               t.linear * body.upper() + t.shift);
      PointSet corners(1 << d, d);
      for (int mask = 0; mask < (1 << d); ++mask)
        for (int i = 0; i < d; ++i)
          corners(mask, i) =
              (mask >> i) & 1 ? body.upper()(i) : body.lower()(i);
      return ConvexBody::poly(convex_hull(affine_map(t, corners)));
    }
    case ConvexBody::Kind::Poly:
      return ConvexBody::poly(affine_map(t, body.polytope()));
  }
  throw Unsupported("unknown body kind");
}

MonteCarloEstimate symmetric_difference_volume(const ConvexBody& g,
                                               const ConvexBody& h, long m,
                                               RngStream rng) {
  if (m < 1) throw ValidationError("need at least one sample");
  if (g.dim() != h.dim()) throw DimensionMismatch("body dimensions differ");
  auto [glo, ghi] = g.bounding_box();
  auto [hlo, hhi] = h.bounding_box();
  const Vec lo = glo.cwiseMin(hlo);
  const Vec hi = ghi.cwiseMax(hhi);
  const double box_vol = (hi - lo).prod();

  long hits = 0;
  Vec x(g.dim());
  for (long i = 0; i < m; ++i) {
    for (int c = 0; c < g.dim(); ++c) x(c) = rng.uniform(lo(c), hi(c));
    if (g.contains(x) != h.contains(x)) ++hits;
  }
  const double p = static_cast<double>(hits) / m;
  MonteCarloEstimate est;
  est.mean = p * box_vol;
  est.std_error = box_vol * std::sqrt(std::max(0.0, p * (1 - p) / m));
  est.samples = m;
  return est;
}

}  // namespace polylab
