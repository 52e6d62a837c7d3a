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

#ifndef POLYLAB_CONFIG_HPP
#define POLYLAB_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "analysis.hpp"

namespace polylab {

// Flat key-value experiment description. Strict parsing: unknown keys are
// validation errors; the seed must be given explicitly.
struct ExperimentConfig {
  int d = 2;
  std::string body = "ball";  // ball|box|simplex|ellipsoid (+ aliases)
  double radius = 1.0;
  std::vector<double> lower, upper, semiaxes;

  std::string density = "uniform";  // uniform|margin_power|projection
  double gamma = 1.0;
  double rho0 = 1.0;
  int ambient_d = 0;  // projection source dimension D

  long n = 0;
  std::vector<long> n_grid;  // geometric grid, config syntax a:b:xF
  std::vector<double> q_list = {1.0};
  long reps = 1000;
  long fresh_m = 10000;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 1;
  std::vector<std::string> checks;
  std::string out_dir = ".";

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

// Registered check names, in canonical order.
const std::vector<std::string>& known_checks();

ConvexBody make_body(const ExperimentConfig& config);
DensitySpec make_density(const ExperimentConfig& config, RngStream rng);

struct ExperimentReport {
  std::string config_echo;
  std::vector<CheckReport> checks;
  std::vector<std::pair<std::string, RateFit>> fits;
  std::string csv;       // check,n,q,estimate,stderr,bound_or_target,pass
  std::string plot_csv;  // check,log_n,log_estimate,stderr
  double wall_seconds = 0.0;
  bool all_pass = true;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

std::string report_to_json(const ExperimentReport& report);

// Human-readable pass/fail matrix from one or more JSON reports; second
// member is the conjunction of all passes.
std::pair<std::string, bool> summarize_reports(
    const std::vector<std::string>& report_jsons);

}  // namespace polylab

#endif  // POLYLAB_CONFIG_HPP
