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

#ifndef POLYLAB_COMMON_HPP
#define POLYLAB_COMMON_HPP

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace polylab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
// One sample point per row.
using PointSet = Eigen::MatrixXd;

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct DegenerateInput : Error {
  using Error::Error;
};
struct InvalidPolytope : Error {
  using Error::Error;
};
struct NonConvergence : Error {
  using Error::Error;
};
struct OutsideBody : Error {
  using Error::Error;
};
struct OutsideSupport : Error {
  using Error::Error;
};
struct SingularTransform : Error {
  using Error::Error;
};
struct Unsupported : Error {
  using Error::Error;
};
struct NoBoundingBox : Error {
  using Error::Error;
};
struct EmptyInput : Error {
  using Error::Error;
};
struct NonPositiveMoment : Error {
  using Error::Error;
};
struct InsufficientTailMass : Error {
  using Error::Error;
};
struct LowAcceptance : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};

// Volume of the unit Euclidean ball in R^d.
inline double unit_ball_volume(int d) {
  return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

// Surface area of the unit sphere in R^d (boundary of the unit ball).
inline double unit_sphere_area(int d) { return d * unit_ball_volume(d); }

}  // namespace polylab

#endif  // POLYLAB_COMMON_HPP
