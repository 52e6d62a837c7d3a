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

#include "hull.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <unordered_map>
#include <vector>

namespace polylab {

namespace {

struct BuildFacet {
  std::vector<int> vtx;        // d point indices
  std::vector<int> neighbors;  // neighbors[i] across ridge opposite vtx[i]
  Vec normal;
  double offset = 0.0;
  std::vector<int> outside;  // conflict list
  int furthest = -1;
  double furthest_dist = 0.0;
  bool alive = true;
};

// Unit normal of the hyperplane through d points (columns of P indexed by
// vtx). Closed forms for d=2,3; QR nullspace otherwise.
Vec facet_normal(const Mat& pts, const std::vector<int>& vtx) {
  const int d = static_cast<int>(pts.rows());
  if (d == 2) {
    const Vec e = pts.col(vtx[1]) - pts.col(vtx[0]);
    Vec n(2);
    n << -e(1), e(0);
    const double len = n.norm();
    if (len > 0) n /= len;
    return n;
  }
  if (d == 3) {
    const Eigen::Vector3d a = pts.col(vtx[1]) - pts.col(vtx[0]);
    const Eigen::Vector3d b = pts.col(vtx[2]) - pts.col(vtx[0]);
    Eigen::Vector3d n = a.cross(b);
    const double len = n.norm();
    if (len > 0) n /= len;
    return n;
  }
  Mat edges(d, d - 1);
  for (int i = 1; i < d; ++i) edges.col(i - 1) = pts.col(vtx[i]) - pts.col(vtx[0]);
  Eigen::HouseholderQR<Mat> qr(edges);
  Mat q = qr.householderQ();
  return q.col(d - 1);
}

struct PlaneSetter {
  const Mat& pts;
  const Vec& interior;

  void operator()(BuildFacet& f) const {
    f.normal = facet_normal(pts, f.vtx);
    f.offset = f.normal.dot(pts.col(f.vtx[0]));
    if (f.normal.dot(interior) > f.offset) {
      f.normal = -f.normal;
      f.offset = -f.offset;
    }
  }
};

// Greedy affinely-independent subset of d+1 points, maximizing the spread at
// each step. Throws DegenerateInput if the points do not span R^d.
std::vector<int> initial_simplex(const Mat& pts, double tol) {
  const int d = static_cast<int>(pts.rows());
  const int n = static_cast<int>(pts.cols());

  int lo = 0, hi = 0;
  double best_spread = -1.0;
  for (int c = 0; c < d; ++c) {
    int cl = 0, ch = 0;
    for (int i = 1; i < n; ++i) {
      if (pts(c, i) < pts(c, cl)) cl = i;
      if (pts(c, i) > pts(c, ch)) ch = i;
    }
    const double spread = pts(c, ch) - pts(c, cl);
    if (spread > best_spread) {
      best_spread = spread;
      lo = cl;
      hi = ch;
    }
  }
  if (best_spread <= tol)
    throw DegenerateInput("all points coincide within tolerance");

  std::vector<int> sel = {lo, hi};
  Mat basis(d, d);  // orthonormal columns spanning the affine hull so far
  basis.col(0) = (pts.col(hi) - pts.col(lo)).normalized();
  int k = 1;
  while (k < d) {
    int best = -1;
    double best_res = tol;
    Vec best_dir(d);
    for (int i = 0; i < n; ++i) {
      Vec r = pts.col(i) - pts.col(lo);
      r -= basis.leftCols(k) * (basis.leftCols(k).transpose() * r);
      const double res = r.norm();
      if (res > best_res) {
        best_res = res;
        best = i;
        best_dir = r / res;
      }
    }
    if (best < 0)
      throw DegenerateInput(
          "points lie in a lower-dimensional affine subspace (rank " +
          std::to_string(k) + " of " + std::to_string(d) + ")");
    sel.push_back(best);
    basis.col(k++) = best_dir;
  }
  return sel;
}

}  // namespace

Polytope convex_hull(const PointSet& points, double tol) {
  const int n = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());
  if (d < 1) throw DimensionMismatch("empty point set");
  if (n < d + 1)
    throw DegenerateInput("need at least d+1 points, got " +
                          std::to_string(n));

  const Mat pts = points.transpose();  // d x n, contiguous columns

  if (tol < 0) {
    double scale = 0.0;
    for (int c = 0; c < d; ++c)
      scale = std::max(scale, pts.row(c).maxCoeff() - pts.row(c).minCoeff());
    tol = 1e-9 * std::max(scale, 1.0);
  }

  const std::vector<int> sel = initial_simplex(pts, tol);

  Vec interior = Vec::Zero(d);
  for (int id : sel) interior += pts.col(id);
  interior /= static_cast<double>(d + 1);

  PlaneSetter set_plane{pts, interior};

  std::vector<BuildFacet> facets;
  facets.reserve(64);
  // Facet j omits sel[j]; its neighbor opposite vertex sel[k] is facet k.
  for (int j = 0; j <= d; ++j) {
    BuildFacet f;
    for (int k = 0; k <= d; ++k) {
      if (k == j) continue;
      f.vtx.push_back(sel[k]);
      f.neighbors.push_back(k);
    }
    set_plane(f);
    facets.push_back(std::move(f));
  }

  std::vector<char> in_simplex(n, 0);
  for (int id : sel) in_simplex[id] = 1;

  auto assign_point = [&](int p, const std::vector<int>& candidates) {
    int best = -1;
    double best_dist = tol;
    for (int fid : candidates) {
      const BuildFacet& f = facets[fid];
      if (!f.alive) continue;
      const double dist = f.normal.dot(pts.col(p)) - f.offset;
      if (dist > best_dist) {
        best_dist = dist;
        best = fid;
      }
    }
    if (best >= 0) {
      BuildFacet& f = facets[best];
      f.outside.push_back(p);
      if (best_dist > f.furthest_dist) {
        f.furthest_dist = best_dist;
        f.furthest = p;
      }
    }
  };

  std::vector<int> all_initial(d + 1);
  for (int j = 0; j <= d; ++j) all_initial[j] = j;
  for (int p = 0; p < n; ++p)
    if (!in_simplex[p]) assign_point(p, all_initial);

  std::vector<int> pending;
  for (int j = 0; j <= d; ++j)
    if (!facets[j].outside.empty()) pending.push_back(j);

  std::vector<int> visit_mark;  // epoch per facet
  int epoch = 0;

  while (!pending.empty()) {
    const int start = pending.back();
    pending.pop_back();
    if (!facets[start].alive || facets[start].outside.empty()) continue;

    const int apex = facets[start].furthest;

    // Visible set by BFS over the adjacency graph.
    ++epoch;
    visit_mark.resize(facets.size(), 0);
    std::vector<int> visible;
    std::vector<int> queue = {start};
    visit_mark[start] = epoch;
    while (!queue.empty()) {
      const int fid = queue.back();
      queue.pop_back();
      visible.push_back(fid);
      for (int nb : facets[fid].neighbors) {
        if (visit_mark[nb] == epoch) continue;
        const BuildFacet& g = facets[nb];
        if (g.normal.dot(pts.col(apex)) - g.offset > tol) {
          visit_mark[nb] = epoch;
          queue.push_back(nb);
        } else {
          visit_mark[nb] = -epoch;  // inspected, not visible
        }
      }
    }

    // Horizon ridges and replacement facets.
    std::vector<int> new_ids;
    std::map<std::vector<int>, std::pair<int, int>> open_ridges;
    for (int gid : visible) {
      const BuildFacet g = facets[gid];  // copy: facets vector may reallocate
      for (int i = 0; i < d; ++i) {
        const int hid = g.neighbors[i];
        if (visit_mark[hid] == epoch) continue;  // internal ridge

        BuildFacet nf;
        nf.vtx.reserve(d);
        for (int k = 0; k < d; ++k)
          if (k != i) nf.vtx.push_back(g.vtx[k]);
        nf.vtx.push_back(apex);
        nf.neighbors.assign(d, -1);
        nf.neighbors[d - 1] = hid;
        set_plane(nf);

        const int nf_id = static_cast<int>(facets.size());
        facets.push_back(std::move(nf));
        visit_mark.push_back(0);
        new_ids.push_back(nf_id);

        // Redirect the horizon neighbor.
        for (int& hn : facets[hid].neighbors)
          if (hn == gid) hn = nf_id;

        // Pair ridges among new facets: a shared ridge is (d-2 ridge
        // vertices) + apex; key on the sorted d-2 vertices.
        std::vector<int>& rv = facets[nf_id].vtx;
        for (int k = 0; k < d - 1; ++k) {
          std::vector<int> key;
          key.reserve(d - 2);
          for (int m = 0; m < d - 1; ++m)
            if (m != k) key.push_back(rv[m]);
          std::sort(key.begin(), key.end());
          auto it = open_ridges.find(key);
          if (it == open_ridges.end()) {
            open_ridges.emplace(std::move(key), std::make_pair(nf_id, k));
          } else {
            facets[nf_id].neighbors[k] = it->second.first;
            facets[it->second.first].neighbors[it->second.second] = nf_id;
            open_ridges.erase(it);
          }
        }
      }
    }
    if (!open_ridges.empty())
      throw InvalidPolytope("hull adjacency inconsistent during insertion");

    // Reassign conflict points of the dead facets.
    for (int gid : visible) facets[gid].alive = false;
    for (int gid : visible) {
      for (int p : facets[gid].outside)
        if (p != apex) assign_point(p, new_ids);
      facets[gid].outside.clear();
    }
    for (int fid : new_ids)
      if (!facets[fid].outside.empty()) pending.push_back(fid);
  }

  // Compact into the output representation.
  Polytope out;
  out.dim = d;
  std::unordered_map<int, int> vmap;
  for (const BuildFacet& f : facets) {
    if (!f.alive) continue;
    Polytope::Facet pf;
    pf.normal = f.normal;
    pf.offset = f.offset;
    pf.vertex_ids.reserve(d);
    for (int id : f.vtx) {
      auto [it, inserted] = vmap.emplace(id, static_cast<int>(vmap.size()));
      if (inserted) out.vertices.push_back(pts.col(id));
      pf.vertex_ids.push_back(it->second);
    }
    out.facets.push_back(std::move(pf));
  }
  out.interior_point = Vec::Zero(d);
  for (const Vec& v : out.vertices) out.interior_point += v;
  out.interior_point /= static_cast<double>(out.vertices.size());
  return out;
}

double polytope_volume(const Polytope& poly) {
  const int d = poly.dim;
  if (d <= 0 || poly.facets.empty())
    throw InvalidPolytope("polytope has no facets");
  Mat simplex(d, d);
  double total = 0.0;
  double factorial = 1.0;
  for (int k = 2; k <= d; ++k) factorial *= k;
  for (const auto& f : poly.facets) {
    if (static_cast<int>(f.vertex_ids.size()) != d)
      throw InvalidPolytope("facet is not simplicial");
    for (int i = 0; i < d; ++i)
      simplex.col(i) = poly.vertices[f.vertex_ids[i]] - poly.interior_point;
    total += std::abs(simplex.determinant()) / factorial;
  }
  return total;
}

bool contains(const Polytope& poly, const Vec& x, double tol) {
  if (x.size() != poly.dim)
    throw DimensionMismatch("point dimension " + std::to_string(x.size()) +
                            " vs polytope dimension " +
                            std::to_string(poly.dim));
  for (const auto& f : poly.facets)
    if (f.normal.dot(x) - f.offset > tol) return false;
  return true;
}

// Wolfe's minimum-norm-point algorithm on the shifted set {v_i - x}:
// maintains an affinely independent corral S and solves the affine
// least-norm problem on S exactly, so it terminates finitely and reaches
// solver precision rather than a step-size dependent accuracy.
double distance_to_hull(const Vec& x, const std::vector<Vec>& vertices,
                        double tol) {
  if (vertices.empty()) throw EmptyInput("no vertices");
  const int nv = static_cast<int>(vertices.size());
  const int d = static_cast<int>(x.size());
  for (const Vec& v : vertices)
    if (v.size() != d)
      throw DimensionMismatch("vertex/point dimension mismatch");

  Mat z(d, nv);
  double scale2 = 0.0;
  for (int i = 0; i < nv; ++i) {
    z.col(i) = vertices[i] - x;
    scale2 = std::max(scale2, z.col(i).squaredNorm());
  }
  if (scale2 == 0.0) return 0.0;
  const double eps = std::max(tol * tol, 1e-14) * scale2;

  int start = 0;
  for (int i = 1; i < nv; ++i)
    if (z.col(i).squaredNorm() < z.col(start).squaredNorm()) start = i;

  std::vector<int> corral = {start};
  std::vector<double> w = {1.0};
  Vec y = z.col(start);

  const int max_iter = 8 * (nv + d) + 64;
  for (int iter = 0; iter < max_iter; ++iter) {
    // Optimality: y already minimal iff min_i y.z_i >= y.y (within eps).
    int s = 0;
    double s_val = y.dot(z.col(0));
    for (int i = 1; i < nv; ++i) {
      const double v = y.dot(z.col(i));
      if (v < s_val) {
        s_val = v;
        s = i;
      }
    }
    if (y.squaredNorm() - s_val <= eps) return y.norm();
    if (std::find(corral.begin(), corral.end(), s) == corral.end()) {
      corral.push_back(s);
      w.push_back(0.0);
    }

    // Inner loop: pull y toward the affine least-norm point of the corral,
    // dropping vertices whose weight would go negative.
    for (;;) {
      const int k = static_cast<int>(corral.size());
      // Affine minimizer a: (Z^T Z + 1 1^T) b = 1, a = b / (1^T b).
      Mat m = Mat::Ones(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          m(i, j) += z.col(corral[i]).dot(z.col(corral[j]));
      const Vec b = m.ldlt().solve(Vec::Ones(k));
      const double bsum = b.sum();
      if (!(std::abs(bsum) > 1e-300)) {
        // Numerically defective corral; restart from the incoming vertex.
        corral = {s};
        w = {1.0};
        y = z.col(s);
        break;
      }
      const Vec a = b / bsum;
      if (a.minCoeff() > 1e-12) {
        w.assign(a.data(), a.data() + k);
        y.setZero();
        for (int i = 0; i < k; ++i) y += w[i] * z.col(corral[i]);
        break;
      }
      // Step to the boundary of the simplex and drop a vanished vertex.
      double theta = 1.0;
      for (int i = 0; i < k; ++i)
        if (a(i) <= 1e-12 && w[i] > a(i))
          theta = std::min(theta, w[i] / (w[i] - a(i)));
      int drop = -1;
      for (int i = 0; i < k; ++i) {
        w[i] += theta * (a(i) - w[i]);
        if (w[i] <= 1e-12 && drop < 0) drop = i;
      }
      if (drop < 0) drop = 0;
      corral.erase(corral.begin() + drop);
      w.erase(w.begin() + drop);
      double wsum = 0.0;
      for (double wi : w) wsum += wi;
      for (double& wi : w) wi /= wsum;
      y.setZero();
      for (size_t i = 0; i < corral.size(); ++i) y += w[i] * z.col(corral[i]);
    }
  }
  // The algorithm is finite in exact arithmetic; if rounding cycles it, the
  // current point is still primal feasible and near optimal.
  return y.norm();
}

double distance_to_convex(const Vec& x, const Polytope& poly, double tol) {
  if (contains(poly, x, tol)) return 0.0;
  return distance_to_hull(x, poly.vertices, tol);
}

double hausdorff_distance(const Polytope& p, const Polytope& q, double tol) {
  if (p.dim != q.dim)
    throw DimensionMismatch("polytope dimensions differ");
  double best = 0.0;
  for (const Vec& v : p.vertices)
    best = std::max(best, distance_to_convex(v, q, tol));
  for (const Vec& v : q.vertices)
    best = std::max(best, distance_to_convex(v, p, tol));
  return best;
}

void validate_polytope(const Polytope& poly, double tol) {
  const int d = poly.dim;
  std::vector<int> incidence(poly.vertices.size(), 0);
  for (const auto& f : poly.facets) {
    if (static_cast<int>(f.vertex_ids.size()) != d)
      throw InvalidPolytope("facet vertex count != dim");
    for (int id : f.vertex_ids) {
      const double slack =
          std::abs(f.normal.dot(poly.vertices[id]) - f.offset);
      if (slack > tol)
        throw InvalidPolytope("facet vertex off its hyperplane by " +
                              std::to_string(slack));
      ++incidence[id];
    }
    if (f.normal.dot(poly.interior_point) - f.offset >= 0)
      throw InvalidPolytope("interior point not strictly inside");
  }
  for (size_t i = 0; i < poly.vertices.size(); ++i) {
    if (incidence[i] < d)
      throw InvalidPolytope("vertex on fewer than dim facets");
    if (!contains(poly, poly.vertices[i], tol))
      throw InvalidPolytope("vertex violates a facet inequality");
  }
}

}  // namespace polylab
