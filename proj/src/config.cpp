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

#include "config.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace polylab {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("field '" + key + "': not a number: '" + v + "'");
  }
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError("field '" + key + "': not an integer: '" + v + "'");
  }
}

std::vector<double> parse_double_list(const std::string& key,
                                      const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split(v, ',')) out.push_back(parse_double(key, item));
  return out;
}

// Geometric grid "start:stop:xFACTOR" or explicit comma list.
std::vector<long> parse_grid(const std::string& key, const std::string& v) {
  std::vector<long> out;
  if (v.find(':') != std::string::npos) {
    const auto parts = split(v, ':');
    if (parts.size() != 3 || parts[2].empty() || parts[2][0] != 'x')
      throw ValidationError("field '" + key +
                            "': expected start:stop:xFACTOR, got '" + v + "'");
    const long start = parse_long(key, parts[0]);
    const long stop = parse_long(key, parts[1]);
    const double factor = parse_double(key, parts[2].substr(1));
    if (start < 1 || stop < start || factor <= 1.0)
      throw ValidationError("field '" + key + "': bad geometric grid");
    for (double x = static_cast<double>(start); x <= stop + 0.5; x *= factor)
      out.push_back(std::lround(x));
    return out;
  }
  for (const auto& item : split(v, ',')) out.push_back(parse_long(key, item));
  return out;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

template <typename T>
std::string join_list(const std::vector<T>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_same_v<T, double>)
      out += format_double(xs[i]);
    else if constexpr (std::is_same_v<T, std::string>)
      out += xs[i];
    else
      out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {
      "efron",          "extended_efron",     "margin_transfer",
      "rate_missing_mass", "rate_vn",         "rate_rn",
      "deviation_tail", "affine_invariance",  "worst_case_uniform",
      "nykodim_domination", "projection_density"};
  return names;
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParseError("line " + std::to_string(line_no) +
                       ": empty key or value");

    if (key == "d") {
      cfg.d = static_cast<int>(parse_long(key, value));
    } else if (key == "body") {
      cfg.body = value;
    } else if (key == "radius") {
      cfg.radius = parse_double(key, value);
    } else if (key == "lower") {
      cfg.lower = parse_double_list(key, value);
    } else if (key == "upper") {
      cfg.upper = parse_double_list(key, value);
    } else if (key == "semiaxes") {
      cfg.semiaxes = parse_double_list(key, value);
    } else if (key == "density") {
      cfg.density = value;
    } else if (key == "gamma") {
      cfg.gamma = parse_double(key, value);
    } else if (key == "rho0") {
      cfg.rho0 = parse_double(key, value);
    } else if (key == "ambient_d") {
      cfg.ambient_d = static_cast<int>(parse_long(key, value));
    } else if (key == "n") {
      cfg.n = parse_long(key, value);
    } else if (key == "n_grid") {
      cfg.n_grid = parse_grid(key, value);
    } else if (key == "q") {
      cfg.q_list = parse_double_list(key, value);
    } else if (key == "reps") {
      cfg.reps = parse_long(key, value);
    } else if (key == "fresh_m") {
      cfg.fresh_m = parse_long(key, value);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_long(key, value));
      cfg.seed_set = true;
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(parse_long(key, value));
    } else if (key == "checks") {
      cfg.checks = split(value, ',');
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else {
      throw ValidationError("unknown key '" + key + "' (line " +
                            std::to_string(line_no) + ")");
    }
  }

  // Body aliases fix both the kind and, where implied, the dimension.
  if (cfg.body == "disk") {
    cfg.body = "ball";
    cfg.d = 2;
  } else if (cfg.body == "square") {
    cfg.body = "box";
    cfg.d = 2;
  } else if (cfg.body == "cube") {
    cfg.body = "box";
    cfg.d = 3;
  } else if (cfg.body == "triangle") {
    cfg.body = "simplex";
    cfg.d = 2;
  }

  if (cfg.d < 2) throw ValidationError("field 'd': dimension must be >= 2");
  if (!cfg.seed_set)
    throw ValidationError("field 'seed': required, no implicit seeding");
  if (cfg.body != "ball" && cfg.body != "box" && cfg.body != "simplex" &&
      cfg.body != "ellipsoid")
    throw ValidationError("field 'body': unknown body '" + cfg.body + "'");
  if (cfg.density != "uniform" && cfg.density != "margin_power" &&
      cfg.density != "projection")
    throw ValidationError("field 'density': unknown density '" + cfg.density +
                          "'");
  for (const auto& c : cfg.checks)
    if (std::find(known_checks().begin(), known_checks().end(), c) ==
        known_checks().end())
      throw ValidationError("field 'checks': unknown check '" + c + "'");
  if (cfg.threads < 1)
    throw ValidationError("field 'threads': must be >= 1");
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::string out;
  out += "d = " + std::to_string(cfg.d) + "\n";
  out += "body = " + cfg.body + "\n";
  if (cfg.body == "ball" || cfg.density == "projection")
    out += "radius = " + format_double(cfg.radius) + "\n";
  if (!cfg.lower.empty()) out += "lower = " + join_list(cfg.lower) + "\n";
  if (!cfg.upper.empty()) out += "upper = " + join_list(cfg.upper) + "\n";
  if (!cfg.semiaxes.empty())
    out += "semiaxes = " + join_list(cfg.semiaxes) + "\n";
  out += "density = " + cfg.density + "\n";
  if (cfg.density == "margin_power") {
    out += "gamma = " + format_double(cfg.gamma) + "\n";
    out += "rho0 = " + format_double(cfg.rho0) + "\n";
  }
  if (cfg.ambient_d > 0)
    out += "ambient_d = " + std::to_string(cfg.ambient_d) + "\n";
  if (cfg.n > 0) out += "n = " + std::to_string(cfg.n) + "\n";
  if (!cfg.n_grid.empty()) out += "n_grid = " + join_list(cfg.n_grid) + "\n";
  out += "q = " + join_list(cfg.q_list) + "\n";
  out += "reps = " + std::to_string(cfg.reps) + "\n";
  out += "fresh_m = " + std::to_string(cfg.fresh_m) + "\n";
  out += "seed = " + std::to_string(cfg.seed) + "\n";
  out += "threads = " + std::to_string(cfg.threads) + "\n";
  if (!cfg.checks.empty()) out += "checks = " + join_list(cfg.checks) + "\n";
  out += "out_dir = " + cfg.out_dir + "\n";
  return out;
}

ConvexBody make_body(const ExperimentConfig& cfg) {
  if (cfg.body == "ball")
    return ConvexBody::ball(Vec::Zero(cfg.d), cfg.radius);
  if (cfg.body == "box") {
    Vec lo = Vec::Zero(cfg.d), hi = Vec::Ones(cfg.d);
    if (!cfg.lower.empty()) {
      if (static_cast<int>(cfg.lower.size()) != cfg.d)
        throw ValidationError("field 'lower': wrong length");
      lo = Eigen::Map<const Vec>(cfg.lower.data(), cfg.d);
    }
    if (!cfg.upper.empty()) {
      if (static_cast<int>(cfg.upper.size()) != cfg.d)
        throw ValidationError("field 'upper': wrong length");
      hi = Eigen::Map<const Vec>(cfg.upper.data(), cfg.d);
    }
    return ConvexBody::box(lo, hi);
  }
  if (cfg.body == "simplex") return ConvexBody::standard_simplex(cfg.d);
  if (cfg.body == "ellipsoid") {
    Vec a = Vec::Ones(cfg.d);
    if (!cfg.semiaxes.empty()) {
      if (static_cast<int>(cfg.semiaxes.size()) != cfg.d)
        throw ValidationError("field 'semiaxes': wrong length");
      a = Eigen::Map<const Vec>(cfg.semiaxes.data(), cfg.d);
    }
    return ConvexBody::ellipsoid(Vec::Zero(cfg.d),
                                 a.array().square().matrix().asDiagonal());
  }
  throw ValidationError("unknown body '" + cfg.body + "'");
}

DensitySpec make_density(const ExperimentConfig& cfg, RngStream rng) {
  if (cfg.density == "uniform") return DensitySpec::uniform(make_body(cfg));
  if (cfg.density == "margin_power")
    return DensitySpec::margin_power(make_body(cfg), cfg.gamma, cfg.rho0, rng);
  if (cfg.density == "projection") {
    const int big_d = cfg.ambient_d > 0 ? cfg.ambient_d : cfg.d + 1;
    return DensitySpec::projection(
        ConvexBody::ball(Vec::Zero(big_d), cfg.radius), cfg.d);
  }
  throw ValidationError("unknown density '" + cfg.density + "'");
}

namespace {

bool smooth_body(const ExperimentConfig& cfg) {
  return cfg.body == "ball" || cfg.body == "ellipsoid";
}

// Growth-rate target for the requested quantity under the configured
// density; returns (target, bound_mode).
std::pair<double, bool> rate_target(const ExperimentConfig& cfg,
                                    RateQuantity quantity, double q,
                                    const DensitySpec& spec) {
  const int d = cfg.d;
  if (quantity == RateQuantity::VertexCount) {
    // Tight for the uniform density; an upper bound otherwise.
    const bool tight =
        spec.kind() == DensitySpec::Kind::Uniform && smooth_body(cfg);
    return {q * (d - 1) / (d + 1), !tight};
  }
  if (spec.kind() == DensitySpec::Kind::Uniform)
    return {-2.0 * q / (d + 1), !smooth_body(cfg)};
  // Margin-condition densities control the missing volume at the reduced
  // exponent; the statement is one-sided.
  const double alpha = spec.margin_alpha();
  if (quantity == RateQuantity::MissingMass)
    return {-2.0 * q / (d + 1), true};
  return {-2.0 * alpha * q / ((alpha + 1) * (d + 1)), true};
}

double stat_or(const CheckReport& r, const std::string& key, double fallback) {
  for (const auto& [k, v] : r.stats)
    if (k == key) return v;
  return fallback;
}

struct CsvRow {
  std::string check;
  double n = 0, q = 0, estimate = 0, std_error = 0, bound_or_target = 0;
  bool pass = false;
};

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.config_echo = serialize_config(cfg);

  RngStream root(cfg.seed, 0);
  std::vector<CsvRow> rows;

  // The density is built once; its normalization draw is part of the seed
  // contract.
  DensitySpec spec = make_density(cfg, root.derive(0x5A5A5Aull));

  auto require_n = [&](const std::string& check) {
    if (cfg.n < cfg.d + 1)
      throw ValidationError("check '" + check + "' needs n >= d+1");
  };
  auto require_grid = [&](const std::string& check) {
    if (cfg.n_grid.size() < 4)
      throw ValidationError("check '" + check +
                            "' needs an n_grid with >= 4 points");
  };

  auto add_rate_rows = [&](const std::string& name, const RateCheck& rc,
                           double q, double target) {
    for (size_t i = 0; i < rc.fit.n_grid.size(); ++i)
      rows.push_back({name, static_cast<double>(rc.fit.n_grid[i]), q,
                      rc.moments[i].mean, rc.moments[i].std_error, target,
                      rc.report.pass});
    rows.push_back({name + "_exponent", 0, q, rc.fit.exponent,
                    rc.fit.exponent_stderr, target, rc.report.pass});
    report.fits.emplace_back(name, rc.fit);
  };

  int check_index = 0;
  for (const std::string& name : cfg.checks) {
    RngStream crng = root.derive(0xC000 + static_cast<std::uint64_t>(
                                              check_index++));
    if (name == "efron") {
      require_n(name);
      CheckReport r =
          check_efron(spec, cfg.n, cfg.reps, cfg.fresh_m, crng, cfg.threads);
      rows.push_back({r.name, static_cast<double>(cfg.n), 1,
                      r.stat("lhs_missing_mass"), r.stat("lhs_stderr"),
                      r.stat("rhs_vertex_ratio"), r.pass});
      report.checks.push_back(std::move(r));
    } else if (name == "extended_efron") {
      require_n(name);
      for (double qd : cfg.q_list) {
        const int q = static_cast<int>(qd);
        CheckReport r = check_extended_efron(spec, cfg.n, q, cfg.reps,
                                             cfg.fresh_m, crng, cfg.threads);
        rows.push_back({r.name, static_cast<double>(cfg.n),
                        static_cast<double>(q),
                        r.stat("lhs_falling_factorial"), r.stat("lhs_stderr"),
                        r.stat("rhs_fresh_indicator"), r.pass});
        report.checks.push_back(std::move(r));
      }
    } else if (name == "margin_transfer") {
      require_n(name);
      CheckReport r = check_margin_transfer(spec, cfg.n, cfg.reps, cfg.fresh_m,
                                            crng, cfg.threads);
      rows.push_back({r.name, static_cast<double>(cfg.n), 1,
                      r.stat("violations"), 0, 0, r.pass});
      report.checks.push_back(std::move(r));
    } else if (name == "rate_missing_mass" || name == "rate_vn" ||
               name == "rate_rn") {
      require_grid(name);
      const RateQuantity quantity =
          name == "rate_rn" ? RateQuantity::VertexCount
          : name == "rate_vn" ? RateQuantity::MissingVolumeFraction
                              : RateQuantity::MissingMass;
      for (double q : cfg.q_list) {
        const auto [target, bound_mode] = rate_target(cfg, quantity, q, spec);
        const double tol_exp = q >= 2 ? 0.12 : 0.08;
        RateCheck rc = check_rate(spec, quantity, q, cfg.n_grid, cfg.reps,
                                  cfg.fresh_m, target, bound_mode, tol_exp,
                                  crng.derive(static_cast<std::uint64_t>(
                                      q * 1024)),
                                  cfg.threads);
        add_rate_rows(name, rc, q, target);
        report.checks.push_back(std::move(rc.report));
      }
    } else if (name == "deviation_tail") {
      require_n(name);
      CheckReport r =
          check_deviation_tail(spec, cfg.n, cfg.reps, crng, cfg.threads);
      rows.push_back({r.name, static_cast<double>(cfg.n), 1,
                      r.stat("decay_rate"), r.stat("slope_stderr"),
                      r.stat("r_squared"), r.pass});
      report.checks.push_back(std::move(r));
    } else if (name == "affine_invariance") {
      require_n(name);
      // Deterministic random shear with moderate condition number.
      RngStream trng = crng.derive(0x7368ull);
      Mat lin = Mat::Identity(cfg.d, cfg.d);
      lin(0, 1) = trng.uniform(3.0, 6.0);
      Vec shift = Vec::Zero(cfg.d);
      for (int i = 0; i < cfg.d; ++i) shift(i) = trng.uniform(-1.0, 1.0);
      CheckReport r = check_affine_invariance(
          make_body(cfg), AffineMap{lin, shift}, cfg.n, cfg.reps, crng,
          cfg.threads);
      rows.push_back({r.name, static_cast<double>(cfg.n), 1,
                      r.stat("p_value"), 0, 1e-3, r.pass});
      report.checks.push_back(std::move(r));
    } else if (name == "worst_case_uniform") {
      require_grid(name);
      CheckReport r = check_worst_case_uniform(make_body(cfg), cfg.n_grid,
                                               cfg.reps, 0.08, crng,
                                               cfg.threads);
      rows.push_back({r.name, 0, 1, r.stat("exponent_uniform"), 0,
                      r.stat("target"), r.pass});
      report.checks.push_back(std::move(r));
    } else if (name == "nykodim_domination") {
      CheckReport r = check_nykodim_domination(
          cfg.d, cfg.reps, 30, std::max<long>(cfg.fresh_m, 2000), crng,
          cfg.threads);
      rows.push_back({r.name, 30, 1, r.stat("worst_bound_ratio"), 0, 1.0,
                      r.pass});
      report.checks.push_back(std::move(r));
    } else if (name == "projection_density") {
      require_n(name);
      const int big_d = cfg.ambient_d > 0 ? cfg.ambient_d : cfg.d + 1;
      CheckReport r = check_projection_density(big_d, cfg.d, cfg.n, crng);
      rows.push_back({r.name, static_cast<double>(cfg.n), 1,
                      r.stat("chi2_p_value"), 0, 1e-3, r.pass});
      report.checks.push_back(std::move(r));
    } else {
      throw ValidationError("unknown check '" + name + "'");
    }
  }

  report.all_pass = true;
  for (const auto& c : report.checks) report.all_pass &= c.pass;

  std::string csv = "check,n,q,estimate,stderr,bound_or_target,pass\n";
  for (const auto& r : rows)
    csv += r.check + "," + csv_number(r.n) + "," + csv_number(r.q) + "," +
           csv_number(r.estimate) + "," + csv_number(r.std_error) + "," +
           csv_number(r.bound_or_target) + "," + (r.pass ? "1" : "0") + "\n";
  report.csv = std::move(csv);

  std::string plot = "check,log_n,log_estimate,stderr\n";
  for (const auto& [name, fit] : report.fits) {
    // Recover per-point values from the CSV rows for this fit.
    for (const auto& r : rows) {
      if (r.check != name || r.n <= 0 || r.estimate <= 0) continue;
      plot += name + "," + csv_number(std::log(r.n)) + "," +
              csv_number(std::log(r.estimate)) + "," +
              csv_number(r.std_error / r.estimate) + "\n";
    }
  }
  report.plot_csv = std::move(plot);

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

std::string report_to_json(const ExperimentReport& report) {
  json j;
  j["config"] = report.config_echo;
  j["all_pass"] = report.all_pass;
  j["wall_seconds"] = report.wall_seconds;
  j["checks"] = json::array();
  for (const auto& c : report.checks) {
    json jc;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    jc["seed"] = c.seed;
    jc["runtime_seconds"] = c.runtime_seconds;
    json stats = json::object();
    for (const auto& [k, v] : c.stats) stats[k] = v;
    jc["stats"] = stats;
    j["checks"].push_back(jc);
  }
  j["fits"] = json::array();
  for (const auto& [name, fit] : report.fits) {
    json jf;
    jf["name"] = name;
    jf["exponent"] = fit.exponent;
    jf["exponent_stderr"] = fit.exponent_stderr;
    jf["intercept"] = fit.intercept;
    jf["r_squared"] = fit.r_squared;
    jf["n_grid"] = fit.n_grid;
    j["fits"].push_back(jf);
  }
  j["csv"] = report.csv;
  j["plot_csv"] = report.plot_csv;
  return j.dump(2);
}

std::pair<std::string, bool> summarize_reports(
    const std::vector<std::string>& report_jsons) {
  static const std::map<std::string, std::string> labels = {
      {"efron-identity", "Efron identity"},
      {"extended-efron", "Extended Efron inequality"},
      {"margin-transfer", "Margin transfer"},
      {"nykodim-domination", "Nykodim-vs-Hausdorff domination"},
      {"projection-density", "Projection density bound"},
      {"deviation-tail", "Deviation tail"},
      {"missing-volume-rate", "Missing-volume rate"},
      {"vertex-count-rate", "Vertex-count rate"},
      {"worst-case-vertex-rate", "Worst-case vertex rate"},
      {"affine-invariance", "Affine invariance"}};

  if (report_jsons.empty()) return {"no checks requested\n", true};

  std::string table;
  bool all = true;
  bool any = false;
  char line[256];
  std::snprintf(line, sizeof(line), "%-34s %-6s %s\n", "result", "status",
                "key statistic");
  table += line;
  table += std::string(70, '-') + "\n";
  for (const auto& text : report_jsons) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad report JSON: ") + e.what());
    }
    for (const auto& jc : j.at("checks")) {
      any = true;
      const std::string name = jc.at("name");
      const bool pass = jc.at("pass");
      all = all && pass;
      const auto it = labels.find(name);
      std::string key_stat;
      const auto& stats = jc.at("stats");
      for (const char* k :
           {"abs_diff", "violations", "exponent", "p_value", "decay_rate",
            "worst_bound_ratio", "chi2_p_value", "lhs_falling_factorial"})
        if (stats.contains(k)) {
          key_stat = std::string(k) + "=" +
                     csv_number(stats.at(k).get<double>());
          break;
        }
      std::snprintf(line, sizeof(line), "%-34s %-6s %s\n",
                    (it != labels.end() ? it->second : name).c_str(),
                    pass ? "pass" : "FAIL", key_stat.c_str());
      table += line;
    }
  }
  if (!any) return {"no checks requested\n", true};
  return {table, all};
}

}  // namespace polylab
