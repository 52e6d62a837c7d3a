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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "polylab/polylab.h"

namespace {

const char* kConfig =
    "d = 2\nbody = disk\ndensity = uniform\nn = 16\nreps = 100\n"
    "fresh_m = 100\nseed = 11\nchecks = efron\n";

}  // namespace

TEST_CASE("version and error strings are always available") {
  CHECK(pl_version() != nullptr);
  CHECK(pl_last_error() != nullptr);
}

TEST_CASE("parse, serialize and override a config") {
  pl_experiment* exp = nullptr;
  REQUIRE(pl_experiment_parse(kConfig, &exp) == PL_OK);
  char* text = nullptr;
  REQUIRE(pl_experiment_serialize(exp, &text) == PL_OK);
  CHECK(std::string(text).find("seed = 11") != std::string::npos);
  pl_string_free(text);

  CHECK(pl_experiment_set(exp, "seed", "99") == PL_OK);
  REQUIRE(pl_experiment_serialize(exp, &text) == PL_OK);
  CHECK(std::string(text).find("seed = 99") != std::string::npos);
  pl_string_free(text);

  CHECK(pl_experiment_set(exp, "nonsense", "1") == PL_ERR_VALIDATION);
  CHECK(std::string(pl_last_error()).find("nonsense") != std::string::npos);
  pl_experiment_free(exp);
}

TEST_CASE("malformed config reports parse and validation errors") {
  pl_experiment* exp = nullptr;
  CHECK(pl_experiment_parse("seed 1\n", &exp) == PL_ERR_PARSE);
  CHECK(pl_experiment_parse("d = 2\nbody = disk\n", &exp) ==
        PL_ERR_VALIDATION);  // missing seed
  CHECK(pl_experiment_parse(nullptr, &exp) == PL_ERR_ARGUMENT);
  CHECK(pl_experiment_from_file("/no/such/file", &exp) == PL_ERR_PARSE);
}

TEST_CASE("run an experiment and read every report view") {
  pl_experiment* exp = nullptr;
  REQUIRE(pl_experiment_parse(kConfig, &exp) == PL_OK);
  pl_report* rep = nullptr;
  REQUIRE(pl_experiment_run(exp, &rep) == PL_OK);

  char* csv = nullptr;
  REQUIRE(pl_report_csv(rep, &csv) == PL_OK);
  CHECK(std::string(csv).rfind("check,n,q,estimate,stderr,bound_or_target,"
                               "pass\n", 0) == 0);

  char* json = nullptr;
  REQUIRE(pl_report_json(rep, &json) == PL_OK);
  CHECK(std::string(json).find("efron-identity") != std::string::npos);

  char* plot = nullptr;
  REQUIRE(pl_report_plot_csv(rep, &plot) == PL_OK);
  CHECK(std::string(plot).rfind("check,log_n,log_estimate,stderr", 0) == 0);

  int all = -1;
  REQUIRE(pl_report_all_passed(rep, &all) == PL_OK);
  CHECK(all == 1);

  const char* jsons[] = {json};
  char* summary = nullptr;
  int sum_all = 0;
  REQUIRE(pl_summarize(jsons, 1, &summary, &sum_all) == PL_OK);
  CHECK(sum_all == 1);
  CHECK(std::string(summary).find("Efron identity") != std::string::npos);

  pl_string_free(summary);
  pl_string_free(plot);
  pl_string_free(json);
  pl_string_free(csv);
  pl_report_free(rep);
  pl_experiment_free(exp);
}

TEST_CASE("hull statistics entry point") {
  // Unit square plus its center: 4 extreme points, area 1.
  const double pts[] = {0, 0, 1, 0, 0, 1, 1, 1, 0.5, 0.5};
  long vertex_count = 0;
  double volume = 0.0;
  REQUIRE(pl_hull_stats(pts, 5, 2, &vertex_count, &volume) == PL_OK);
  CHECK(vertex_count == 4);
  CHECK(volume == doctest::Approx(1.0));

  CHECK(pl_hull_stats(nullptr, 5, 2, &vertex_count, &volume) ==
        PL_ERR_ARGUMENT);
  // Collinear points cannot span the plane.
  const double line[] = {0, 0, 1, 1, 2, 2, 3, 3};
  CHECK(pl_hull_stats(line, 4, 2, &vertex_count, &volume) ==
        PL_ERR_DEGENERATE);
}
