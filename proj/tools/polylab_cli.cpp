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

// Command line front end. Talks to the engine only through the C API.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polylab/polylab.h"

namespace {

namespace fs = std::filesystem;

struct StringDeleter {
  void operator()(char* s) const { pl_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct ExperimentDeleter {
  void operator()(pl_experiment* e) const { pl_experiment_free(e); }
};
struct ReportDeleter {
  void operator()(pl_report* r) const { pl_report_free(r); }
};

[[noreturn]] void die(pl_status status) {
  std::cerr << "error (" << static_cast<int>(status)
            << "): " << pl_last_error() << "\n";
  std::exit(2);
}

void check(pl_status status) {
  if (status != PL_OK) die(status);
}

void write_file(const fs::path& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    std::exit(2);
  }
  out << text;
}

struct CommonOpts {
  std::string config_path;
  std::string seed;
  std::string reps;
  std::string threads;
  std::string out_dir;
  std::vector<std::string> checks;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("-c,--config", opts.config_path, "experiment config file")
      ->required();
  cmd->add_option("--seed", opts.seed, "override the RNG seed");
  cmd->add_option("--reps", opts.reps, "override the replicate count");
  cmd->add_option("--threads", opts.threads, "override the thread count");
  cmd->add_option("--out-dir", opts.out_dir, "output directory");
  cmd->add_option("--checks", opts.checks,
                  "restrict to a comma-separated subset of checks");
}

pl_experiment* load_experiment(const CommonOpts& opts) {
  pl_experiment* exp = nullptr;
  check(pl_experiment_from_file(opts.config_path.c_str(), &exp));
  // Seed precedence: command line flag, then POLYLAB_SEED, then the file.
  if (!opts.seed.empty()) {
    check(pl_experiment_set(exp, "seed", opts.seed.c_str()));
  } else if (const char* env = std::getenv("POLYLAB_SEED")) {
    check(pl_experiment_set(exp, "seed", env));
  }
  if (!opts.reps.empty())
    check(pl_experiment_set(exp, "reps", opts.reps.c_str()));
  if (!opts.threads.empty())
    check(pl_experiment_set(exp, "threads", opts.threads.c_str()));
  if (!opts.out_dir.empty())
    check(pl_experiment_set(exp, "out_dir", opts.out_dir.c_str()));
  if (!opts.checks.empty()) {
    std::string joined;
    for (size_t i = 0; i < opts.checks.size(); ++i)
      joined += (i ? "," : "") + opts.checks[i];
    check(pl_experiment_set(exp, "checks", joined.c_str()));
  }
  return exp;
}

std::string config_value(pl_experiment* exp, const std::string& key) {
  char* raw = nullptr;
  check(pl_experiment_serialize(exp, &raw));
  CString text(raw);
  std::istringstream in(text.get());
  std::string line;
  while (std::getline(in, line)) {
    const std::string needle = key + " = ";
    if (line.rfind(needle, 0) == 0) return line.substr(needle.size());
  }
  return "";
}

int run_and_emit(pl_experiment* exp, bool write_outputs, bool print_summary) {
  const fs::path out_dir = config_value(exp, "out_dir");
  pl_report* raw_rep = nullptr;
  check(pl_experiment_run(exp, &raw_rep));
  std::unique_ptr<pl_report, ReportDeleter> rep(raw_rep);

  char* json = nullptr;
  char* csv = nullptr;
  char* plot = nullptr;
  check(pl_report_json(rep.get(), &json));
  check(pl_report_csv(rep.get(), &csv));
  check(pl_report_plot_csv(rep.get(), &plot));
  CString json_s(json), csv_s(csv), plot_s(plot);

  if (write_outputs) {
    fs::create_directories(out_dir);
    write_file(out_dir / "report.json", json_s.get());
    write_file(out_dir / "results.csv", csv_s.get());
    write_file(out_dir / "plot_data.csv", plot_s.get());
  }

  if (print_summary) {
    const char* jsons[] = {json_s.get()};
    char* summary = nullptr;
    int all = 0;
    check(pl_summarize(jsons, 1, &summary, &all));
    CString summary_s(summary);
    std::cout << summary_s.get();
  }

  int all_passed = 0;
  check(pl_report_all_passed(rep.get(), &all_passed));
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random polytope experiment runner"};
  app.require_subcommand(1);

  CommonOpts run_opts, check_opts, fit_opts;
  auto* run_cmd =
      app.add_subcommand("run", "run the configured checks, write all outputs");
  add_common(run_cmd, run_opts);

  auto* check_cmd = app.add_subcommand(
      "check", "run the configured checks, print the pass/fail matrix only");
  add_common(check_cmd, check_opts);

  auto* fit_cmd = app.add_subcommand(
      "fit", "run only the rate fits and write the plot data CSV");
  add_common(fit_cmd, fit_opts);

  std::vector<std::string> report_paths;
  auto* summary_cmd = app.add_subcommand(
      "summary", "combine JSON reports into one pass/fail matrix");
  summary_cmd->add_option("reports", report_paths, "report.json files")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (summary_cmd->parsed()) {
    std::vector<std::string> texts;
    for (const auto& path : report_paths) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        std::cerr << "error: cannot read " << path << "\n";
        return 2;
      }
      std::stringstream buf;
      buf << in.rdbuf();
      texts.push_back(buf.str());
    }
    std::vector<const char*> ptrs;
    for (const auto& t : texts) ptrs.push_back(t.c_str());
    char* summary = nullptr;
    int all = 0;
    check(pl_summarize(ptrs.data(), ptrs.size(), &summary, &all));
    CString summary_s(summary);
    std::cout << summary_s.get();
    return all ? 0 : 1;
  }

  const CommonOpts& opts = run_cmd->parsed()     ? run_opts
                           : check_cmd->parsed() ? check_opts
                                                 : fit_opts;
  std::unique_ptr<pl_experiment, ExperimentDeleter> exp(load_experiment(opts));

  if (fit_cmd->parsed()) {
    // Keep only the rate checks from the configured list.
    const std::string configured = config_value(exp.get(), "checks");
    std::string kept;
    std::istringstream in(configured);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item.rfind("rate_", 0) == 0 || item == "worst_case_uniform")
        kept += (kept.empty() ? "" : ",") + item;
    }
    if (kept.empty()) {
      std::cerr << "error: no rate checks in the config\n";
      return 2;
    }
    check(pl_experiment_set(exp.get(), "checks", kept.c_str()));
  }

  const bool write_outputs = run_cmd->parsed() || fit_cmd->parsed();
  const bool print_summary = true;
  return run_and_emit(exp.get(), write_outputs, print_summary);
}
