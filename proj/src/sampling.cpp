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

#include "sampling.hpp"

#include <cmath>
#include <limits>

namespace polylab {

namespace {

using RowRef = Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>>;

void sample_ball_into(const ConvexBody& body, RngStream& rng, RowRef row) {
  const int d = body.dim();
  double norm2 = 0.0;
  for (int c = 0; c < d; ++c) {
    const double g = rng.normal();
    row(c) = g;
    norm2 += g * g;
  }
  const double norm = std::sqrt(norm2);
  const double r =
      body.radius() * std::pow(rng.uniform(), 1.0 / d) / (norm > 0 ? norm : 1);
  for (int c = 0; c < d; ++c) row(c) = body.center()(c) + r * row(c);
}

}  // namespace

PointSet sample_uniform(const ConvexBody& body, long n, RngStream rng) {
  if (n < 0) throw ValidationError("sample size must be nonnegative");
  const int d = body.dim();
  PointSet out(n, d);

  switch (body.kind()) {
    case ConvexBody::Kind::Ball: {
      for (long i = 0; i < n; ++i) sample_ball_into(body, rng, out.row(i));
      return out;
    }
    case ConvexBody::Kind::Box: {
      for (long i = 0; i < n; ++i)
        for (int c = 0; c < d; ++c)
          out(i, c) = rng.uniform(body.lower()(c), body.upper()(c));
      return out;
    }
    case ConvexBody::Kind::Simplex: {
      // Flat Dirichlet weights from exponential spacings.
      const auto& v = body.simplex_vertices();
      for (long i = 0; i < n; ++i) {
        double total = 0.0;
        out.row(i).setZero();
        Vec w(d + 1);
        for (int k = 0; k <= d; ++k) {
          w(k) = rng.exponential();
          total += w(k);
        }
        for (int k = 0; k <= d; ++k)
          out.row(i) += (w(k) / total) * v[k].transpose();
      }
      return out;
    }
    case ConvexBody::Kind::Ellipsoid: {
      Eigen::SelfAdjointEigenSolver<Mat> eig(body.shape());
      const Mat sqrt_shape = eig.eigenvectors() *
                             eig.eigenvalues().cwiseSqrt().asDiagonal() *
                             eig.eigenvectors().transpose();
      const ConvexBody unit = ConvexBody::unit_ball(d);
      Eigen::RowVectorXd u(d);
      for (long i = 0; i < n; ++i) {
        sample_ball_into(unit, rng, u);
        out.row(i) = (sqrt_shape * u.transpose() + body.center()).transpose();
      }
      return out;
    }
    case ConvexBody::Kind::Poly: {
      auto [lo, hi] = body.bounding_box();
      Vec x(d);
      long proposals = 0, accepted = 0;
      for (long i = 0; i < n; ++i) {
        for (;;) {
          ++proposals;
          for (int c = 0; c < d; ++c) x(c) = rng.uniform(lo(c), hi(c));
          if (body.contains(x)) {
            ++accepted;
            out.row(i) = x.transpose();
            break;
          }
          if (proposals >= 100000 && accepted < proposals / 1000)
            throw LowAcceptance(
                "rejection acceptance below 1e-3; precondition the body "
                "(john_ellipsoid_analytic + affine_map)");
        }
      }
      return out;
    }
  }
  throw Unsupported("unknown body kind");
}

DensitySpec DensitySpec::uniform(ConvexBody support) {
  DensitySpec s;
  s.kind_ = Kind::Uniform;
  s.bound_m_ = 1.0 / support.exact_volume();
  s.margin_alpha_ = std::numeric_limits<double>::infinity();
  s.support_ = std::move(support);
  return s;
}

DensitySpec DensitySpec::margin_power(ConvexBody support, double gamma,
                                      double rho0, RngStream rng,
                                      long norm_samples) {
  if (gamma < 0) throw ValidationError("gamma must be >= 0");
  if (rho0 <= 0) throw ValidationError("rho0 must be positive");
  if (gamma == 0) return uniform(std::move(support));

  DensitySpec s;
  s.kind_ = Kind::MarginPower;
  s.gamma_ = gamma;
  s.rho0_ = rho0;

  // Z = |K| E_unif[min(rho0, rho(., boundary))^gamma], Monte Carlo.
  RngStream zrng = rng.derive(0x4E4F524Dull /* "NORM" */);
  const PointSet pts = sample_uniform(support, norm_samples, zrng);
  double sum = 0.0, sum2 = 0.0;
  for (long i = 0; i < norm_samples; ++i) {
    const double g = std::pow(
        std::min(rho0, support.boundary_distance(pts.row(i).transpose())),
        gamma);
    sum += g;
    sum2 += g * g;
  }
  const double mean = sum / norm_samples;
  const double var = std::max(0.0, sum2 / norm_samples - mean * mean);
  const double vol = support.exact_volume();
  s.norm_z_ = vol * mean;
  s.norm_z_stderr_ = vol * std::sqrt(var / norm_samples);

  const double rho_max = std::min(rho0, support.inradius_bound());
  s.bound_m_ = std::pow(rho_max, gamma) / s.norm_z_;
  s.slow_decay_c_ = 1.0 / s.norm_z_;
  s.margin_alpha_ = 1.0 / gamma;
  s.margin_t0_ = s.slow_decay_c_ * std::pow(rho0, gamma);
  s.margin_l_ = support.surface_area_bound() /
                std::pow(s.slow_decay_c_, 1.0 / gamma);
  s.support_ = std::move(support);
  return s;
}

DensitySpec DensitySpec::projection(ConvexBody ambient, int d) {
  const int big_d = ambient.dim();
  if (d < 2 || d >= big_d)
    throw ValidationError("projection requires 2 <= d < ambient dimension");

  DensitySpec s;
  s.kind_ = Kind::Projection;
  s.gamma_ = 0.5 * (big_d - d);

  switch (ambient.kind()) {
    case ConvexBody::Kind::Ball: {
      const double radius = ambient.radius();
      s.support_ = ConvexBody::ball(ambient.center().head(d), radius);
      s.rolling_r_ = radius;
      s.bound_m_ = unit_ball_volume(big_d - d) /
                   (unit_ball_volume(big_d) * std::pow(radius, d));
      s.slow_decay_c_ = std::pow(radius, s.gamma_) *
                        unit_ball_volume(big_d - d) / ambient.exact_volume();
      s.margin_alpha_ = 2.0 / (big_d - d);
      s.margin_t0_ = s.slow_decay_c_ * std::pow(radius, s.gamma_);
      s.margin_l_ = s.support_.surface_area_bound() /
                    std::pow(s.slow_decay_c_, 1.0 / s.gamma_);
      break;
    }
    case ConvexBody::Kind::Box: {
      // Coordinate projection of a box is uniform on the sub-box.
      s.support_ = ConvexBody::box(ambient.lower().head(d),
                                   ambient.upper().head(d));
      s.rolling_r_ = 0.0;
      s.bound_m_ = 1.0 / s.support_.exact_volume();
      break;
    }
    default:
      throw Unsupported("projection ambient must be a ball or a box");
  }
  s.ambient_ = std::move(ambient);
  return s;
}

std::string DensitySpec::kind_name() const {
  switch (kind_) {
    case Kind::Uniform: return "uniform";
    case Kind::MarginPower: return "margin_power";
    case Kind::Projection: return "projection";
  }
  return "?";
}

const ConvexBody& DensitySpec::ambient() const {
  if (!ambient_) throw Unsupported("density has no ambient body");
  return *ambient_;
}

int DensitySpec::ambient_dim() const { return ambient().dim(); }

PointSet DensitySpec::sample(long n, RngStream rng) const {
  switch (kind_) {
    case Kind::Uniform:
      return sample_uniform(support_, n, rng);
    case Kind::MarginPower: {
      const int d = support_.dim();
      const double rho_max = std::min(rho0_, support_.inradius_bound());
      PointSet out(n, d);
      RngStream prop = rng.derive(0x50524F50ull /* "PROP" */);
      RngStream coin = rng.derive(0x434F494Eull /* "COIN" */);
      long filled = 0;
      while (filled < n) {
        const long batch = std::max<long>(64, n - filled);
        const PointSet cand = sample_uniform(support_, batch, prop);
        for (long i = 0; i < batch && filled < n; ++i) {
          const double rho = std::min(
              rho0_, support_.boundary_distance(cand.row(i).transpose()));
          const double w = std::pow(rho / rho_max, gamma_);
          if (coin.uniform() <= w) out.row(filled++) = cand.row(i);
        }
      }
      return out;
    }
    case Kind::Projection: {
      const PointSet ys = sample_uniform(*ambient_, n, rng);
      return ys.leftCols(support_.dim());
    }
  }
  throw Unsupported("unknown density kind");
}

double DensitySpec::density(const Vec& x) const {
  if (!support_.contains(x, 1e-9))
    throw OutsideSupport("point outside the support body");
  switch (kind_) {
    case Kind::Uniform:
      return 1.0 / support_.exact_volume();
    case Kind::MarginPower:
      return std::pow(std::min(rho0_, support_.boundary_distance(x)), gamma_) /
             norm_z_;
    case Kind::Projection: {
      const ConvexBody& amb = *ambient_;
      if (amb.kind() == ConvexBody::Kind::Box)
        return 1.0 / support_.exact_volume();
      if (amb.kind() != ConvexBody::Kind::Ball)
        throw Unsupported("analytic projection density needs a ball ambient");
      const int d = support_.dim();
      const int big_d = amb.dim();
      const double radius = amb.radius();
      const double s2 = (x - support_.center()).squaredNorm();
      const double h2 = std::max(0.0, radius * radius - s2);
      return unit_ball_volume(big_d - d) *
             std::pow(h2, 0.5 * (big_d - d)) / amb.exact_volume();
    }
  }
  throw Unsupported("unknown density kind");
}

}  // namespace polylab
