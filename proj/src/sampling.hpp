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

#ifndef POLYLAB_SAMPLING_HPP
#define POLYLAB_SAMPLING_HPP

#include <optional>
#include <string>

#include "geometry.hpp"
#include "rng.hpp"

namespace polylab {

// n i.i.d. points uniform on the body. Closed-form transforms for
// Ball/Box/Simplex/Ellipsoid, rejection from the bounding box for Poly.
PointSet sample_uniform(const ConvexBody& body, long n, RngStream rng);

// Density class on a support body. Carries the essential sup bound_M and,
// for the margin-power kind, the derived margin parameters.
class DensitySpec {
 public:
  enum class Kind { Uniform, MarginPower, Projection };

  static DensitySpec uniform(ConvexBody support);

  // f(x) proportional to min(rho0, rho(x, boundary))^gamma on the support.
  // The normalization constant is estimated once by Monte Carlo
  // (norm_samples points) on a stream derived from `rng`.
  static DensitySpec margin_power(ConvexBody support, double gamma,
                                  double rho0, RngStream rng,
                                  long norm_samples = 1000000);

  // Push-forward of the uniform density on `ambient` (a body in R^D) under
  // the projection onto the first d coordinates. Supported ambient kinds:
  // Ball and Box (their coordinate projections are again Ball/Box).
  static DensitySpec projection(ConvexBody ambient, int d);

  Kind kind() const { return kind_; }
  std::string kind_name() const;
  const ConvexBody& support() const { return support_; }
  int dim() const { return support_.dim(); }
  double bound_M() const { return bound_m_; }

  double gamma() const { return gamma_; }
  double rho0() const { return rho0_; }
  // Margin-power normalization: f = min(rho0, rho(., boundary))^gamma / Z.
  double normalization() const { return norm_z_; }
  double normalization_stderr() const { return norm_z_stderr_; }

  // Margin-condition parameters (alpha, L, t0) implied by the slow-decay
  // lower bound f >= c min(rho0, rho(x, boundary))^gamma with c = 1/Z.
  double margin_alpha() const { return margin_alpha_; }
  double margin_L() const { return margin_l_; }
  double margin_t0() const { return margin_t0_; }
  double slow_decay_c() const { return slow_decay_c_; }

  const ConvexBody& ambient() const;
  int ambient_dim() const;
  // Rolling-ball radius of the ambient body (Ball: its radius).
  double rolling_radius() const { return rolling_r_; }

  // i.i.d. points from the density. Deterministic in (rng, parameters).
  PointSet sample(long n, RngStream rng) const;

  // Density value at x in the support. Throws OutsideSupport/Unsupported.
  double density(const Vec& x) const;

 private:
  DensitySpec() = default;

  Kind kind_ = Kind::Uniform;
  ConvexBody support_ = ConvexBody::unit_ball(2);
  double bound_m_ = 0.0;
  double gamma_ = 0.0, rho0_ = 1.0;
  double norm_z_ = 0.0, norm_z_stderr_ = 0.0;
  double margin_alpha_ = 0.0, margin_l_ = 0.0, margin_t0_ = 0.0;
  double slow_decay_c_ = 0.0;
  std::optional<ConvexBody> ambient_;
  double rolling_r_ = 0.0;
};

}  // namespace polylab

#endif  // POLYLAB_SAMPLING_HPP
