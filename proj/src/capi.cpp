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

#include "polylab/polylab.h"

#include <cstring>
#include <string>

#include "config.hpp"

using namespace polylab;

struct pl_experiment {
  ExperimentConfig cfg;
};

struct pl_report {
  ExperimentReport rep;
};

namespace {

thread_local std::string g_last_error;

pl_status fail(pl_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Maps the C++ error hierarchy onto status codes at the ABI boundary.
pl_status translate(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e))
    return fail(PL_ERR_PARSE, e.what());
  if (dynamic_cast<const DimensionMismatch*>(&e))
    return fail(PL_ERR_DIMENSION, e.what());
  if (dynamic_cast<const DegenerateInput*>(&e))
    return fail(PL_ERR_DEGENERATE, e.what());
  if (dynamic_cast<const NonConvergence*>(&e) ||
      dynamic_cast<const NonPositiveMoment*>(&e) ||
      dynamic_cast<const InsufficientTailMass*>(&e) ||
      dynamic_cast<const LowAcceptance*>(&e))
    return fail(PL_ERR_NUMERIC, e.what());
  if (dynamic_cast<const EmptyInput*>(&e)) return fail(PL_ERR_EMPTY, e.what());
  if (dynamic_cast<const ValidationError*>(&e))
    return fail(PL_ERR_VALIDATION, e.what());
  return fail(PL_ERR_INTERNAL, e.what());
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
pl_status guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return translate(e);
  } catch (...) {
    return fail(PL_ERR_INTERNAL, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* pl_version(void) { return "0.1.0"; }

const char* pl_last_error(void) { return g_last_error.c_str(); }

void pl_string_free(char* s) { delete[] s; }

pl_status pl_experiment_parse(const char* text, pl_experiment** out) {
  if (!text || !out) return fail(PL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new pl_experiment{parse_config_text(text)};
    return PL_OK;
  });
}

pl_status pl_experiment_from_file(const char* path, pl_experiment** out) {
  if (!path || !out) return fail(PL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new pl_experiment{parse_config_file(path)};
    return PL_OK;
  });
}

pl_status pl_experiment_set(pl_experiment* e, const char* key,
                            const char* value) {
  if (!e || !key || !value) return fail(PL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    // Reuse the text parser for one line, then merge: re-serialize the
    // current config, replace or append the key, and reparse.
    std::string text = serialize_config(e->cfg);
    const std::string needle = std::string(key) + " = ";
    const std::string line = needle + value + "\n";
    const auto pos = text.find(needle);
    if (pos != std::string::npos && (pos == 0 || text[pos - 1] == '\n')) {
      const auto end = text.find('\n', pos);
      text = text.substr(0, pos) + line + text.substr(end + 1);
    } else {
      text += line;
    }
    e->cfg = parse_config_text(text);
    return PL_OK;
  });
}

pl_status pl_experiment_serialize(const pl_experiment* e, char** out) {
  if (!e || !out) return fail(PL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup_string(serialize_config(e->cfg));
    return PL_OK;
  });
}

void pl_experiment_free(pl_experiment* e) { delete e; }

pl_status pl_experiment_run(const pl_experiment* e, pl_report** out) {
  if (!e || !out) return fail(PL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new pl_report{run_experiment(e->cfg)};
    return PL_OK;
  });
}

pl_status pl_report_json(const pl_report* r, char** out) {
  if (!r || !out) return fail(PL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup_string(report_to_json(r->rep));
    return PL_OK;
  });
}

pl_status pl_report_csv(const pl_report* r, char** out) {
  if (!r || !out) return fail(PL_ERR_ARGUMENT, "null argument");
  *out = dup_string(r->rep.csv);
  return PL_OK;
}

pl_status pl_report_plot_csv(const pl_report* r, char** out) {
  if (!r || !out) return fail(PL_ERR_ARGUMENT, "null argument");
  *out = dup_string(r->rep.plot_csv);
  return PL_OK;
}

pl_status pl_report_all_passed(const pl_report* r, int* out) {
  if (!r || !out) return fail(PL_ERR_ARGUMENT, "null argument");
  *out = r->rep.all_pass ? 1 : 0;
  return PL_OK;
}

void pl_report_free(pl_report* r) { delete r; }

pl_status pl_summarize(const char* const* report_jsons, size_t count,
                       char** out, int* all_passed) {
  if (!out || (count > 0 && !report_jsons))
    return fail(PL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<std::string> texts;
    for (size_t i = 0; i < count; ++i) {
      if (!report_jsons[i]) throw ValidationError("null report JSON");
      texts.emplace_back(report_jsons[i]);
    }
    auto [text, all] = summarize_reports(texts);
    *out = dup_string(text);
    if (all_passed) *all_passed = all ? 1 : 0;
    return PL_OK;
  });
}

pl_status pl_hull_stats(const double* points, long n, int d,
                        long* vertex_count, double* volume) {
  if (!points || !vertex_count || !volume || n < 1 || d < 2)
    return fail(PL_ERR_ARGUMENT, "bad argument");
  return guarded([&] {
    PointSet pts(n, d);
    for (long i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) pts(i, j) = points[i * d + j];
    const Polytope hull = convex_hull(pts);
    *vertex_count = static_cast<long>(hull.vertices.size());
    *volume = polytope_volume(hull);
    return PL_OK;
  });
}

}  // extern "C"
