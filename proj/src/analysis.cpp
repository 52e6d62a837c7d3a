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

#include "analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace polylab {

namespace {

// Stream tags for the independent sub-draws of one experiment.
constexpr std::uint64_t kTagReplicate = 0x5245504Cull;
constexpr std::uint64_t kTagFresh = 0x46524553ull;
constexpr std::uint64_t kTagPoolA = 0xA001ull;
constexpr std::uint64_t kTagPoolB = 0xB002ull;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

double combined_sigma(double a, double b) { return std::sqrt(a * a + b * b); }

std::vector<double> missing_mass_samples(const std::vector<HullReplicate>& r) {
  std::vector<double> out;
  out.reserve(r.size());
  for (const auto& rep : r) out.push_back(rep.missing_mass);
  return out;
}

std::vector<int> vertex_count_samples(const std::vector<HullReplicate>& r) {
  std::vector<int> out;
  out.reserve(r.size());
  for (const auto& rep : r) out.push_back(rep.vertex_count);
  return out;
}

}  // namespace

void parallel_for(int threads, long count,
                  const std::function<void(long)>& body) {
  if (threads <= 1 || count <= 1) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const long i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int n_workers = std::min<long>(threads, count);
  pool.reserve(n_workers);
  for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double CheckReport::stat(const std::string& key) const {
  for (const auto& [k, v] : stats)
    if (k == key) return v;
  throw ValidationError("no such statistic: " + key);
}

std::vector<HullReplicate> run_replicates(const DensitySpec& spec, long n,
                                          long reps, long fresh_m,
                                          RngStream base, int threads) {
  if (n < spec.dim() + 1)
    throw ValidationError("need n >= d+1 sample points per hull");
  if (reps < 1) throw ValidationError("need at least one replicate");
  const double body_volume = spec.support().exact_volume();
  const bool uniform = spec.kind() == DensitySpec::Kind::Uniform;
  if (!uniform && fresh_m < 1)
    throw ValidationError(
        "non-uniform densities need fresh_m > 0 for the missing mass");

  std::vector<HullReplicate> out(reps);
  RngStream pool = base.derive(kTagReplicate);
  parallel_for(threads, reps, [&](long rep) {
    RngStream rep_rng = pool.derive(static_cast<std::uint64_t>(rep));
    HullReplicate r;
    r.n = n;
    // Degenerate draws are a null event for continuous densities; redraw
    // and count.
    for (int attempt = 0;; ++attempt) {
      if (attempt > 64)
        throw DegenerateInput("replicate kept degenerating; bad density?");
      const PointSet pts =
          spec.sample(n, rep_rng.derive(static_cast<std::uint64_t>(attempt)));
      try {
        r.hull = convex_hull(pts);
        break;
      } catch (const DegenerateInput&) {
        ++r.redraws;
      }
    }
    r.vertex_count = r.hull.vertex_count();
    r.missing_volume =
        std::max(0.0, body_volume - polytope_volume(r.hull));
    if (uniform) {
      r.missing_mass = std::min(1.0, r.missing_volume / body_volume);
    } else {
      const PointSet fresh = spec.sample(
          fresh_m, rep_rng.derive(kTagFresh));
      long outside = 0;
      for (long i = 0; i < fresh_m; ++i)
        if (!contains(r.hull, fresh.row(i).transpose())) ++outside;
      r.missing_mass = static_cast<double>(outside) / fresh_m;
    }
    out[rep] = std::move(r);
  });
  return out;
}

CheckReport check_efron(const DensitySpec& spec, long n, long reps,
                        long fresh_m, RngStream rng, int threads) {
  Timer timer;
  const auto pool_a =
      run_replicates(spec, n, reps, fresh_m, rng.derive(kTagPoolA), threads);
  const auto pool_b = run_replicates(spec, n + 1, reps, fresh_m,
                                     rng.derive(kTagPoolB), threads);

  const MomentEstimate lhs = estimate_moment(missing_mass_samples(pool_a), 1);
  std::vector<double> ratios;
  ratios.reserve(pool_b.size());
  for (const auto& r : pool_b)
    ratios.push_back(static_cast<double>(r.vertex_count) / (n + 1));
  const MomentEstimate rhs = estimate_moment(ratios, 1);

  const double sigma = combined_sigma(lhs.std_error, rhs.std_error);
  CheckReport report;
  report.name = "efron-identity";
  report.seed = rng.seed();
  report.pass = std::abs(lhs.mean - rhs.mean) <= 3.0 * sigma;
  report.stats = {{"n", static_cast<double>(n)},
                  {"reps", static_cast<double>(reps)},
                  {"lhs_missing_mass", lhs.mean},
                  {"lhs_stderr", lhs.std_error},
                  {"rhs_vertex_ratio", rhs.mean},
                  {"rhs_stderr", rhs.std_error},
                  {"abs_diff", std::abs(lhs.mean - rhs.mean)},
                  {"combined_stderr", sigma}};
  report.runtime_seconds = timer.seconds();
  return report;
}

CheckReport check_extended_efron(const DensitySpec& spec, long n, int q,
                                 long reps, long fresh_m, RngStream rng,
                                 int threads) {
  Timer timer;
  if (q < 1) throw ValidationError("q must be a positive integer");
  const bool uniform = spec.kind() == DensitySpec::Kind::Uniform;

  const auto pool_lhs = run_replicates(spec, n + q, reps, fresh_m,
                                       rng.derive(kTagPoolA), threads);
  const MomentEstimate lhs =
      falling_factorial_mean(vertex_count_samples(pool_lhs), n, q);

  const auto pool_rhs =
      run_replicates(spec, n, reps, fresh_m, rng.derive(kTagPoolB), threads);

  // Route (a): plug-in missing_mass^q; exact measure for uniform densities.
  MomentEstimate plug_in;
  if (uniform)
    plug_in = estimate_moment(missing_mass_samples(pool_rhs), q);

  // Route (b): unbiased q-fresh-point indicator.
  RngStream fresh_pool = rng.derive(0xFEEDull);
  std::vector<double> indicators(pool_rhs.size());
  parallel_for(threads, static_cast<long>(pool_rhs.size()), [&](long i) {
    const PointSet fresh =
        spec.sample(q, fresh_pool.derive(static_cast<std::uint64_t>(i)));
    bool all_outside = true;
    for (int j = 0; j < q && all_outside; ++j)
      if (contains(pool_rhs[i].hull, fresh.row(j).transpose()))
        all_outside = false;
    indicators[i] = all_outside ? 1.0 : 0.0;
  });
  const MomentEstimate fresh_route = estimate_moment(indicators, 1);

  bool pass = lhs.mean <= fresh_route.mean +
                              3.0 * combined_sigma(lhs.std_error,
                                                   fresh_route.std_error);
  CheckReport report;
  report.name = "extended-efron";
  report.seed = rng.seed();
  report.stats = {{"n", static_cast<double>(n)},
                  {"q", static_cast<double>(q)},
                  {"reps", static_cast<double>(reps)},
                  {"lhs_falling_factorial", lhs.mean},
                  {"lhs_stderr", lhs.std_error},
                  {"rhs_fresh_indicator", fresh_route.mean},
                  {"rhs_fresh_stderr", fresh_route.std_error}};
  if (uniform) {
    pass = pass && lhs.mean <= plug_in.mean +
                                   3.0 * combined_sigma(lhs.std_error,
                                                        plug_in.std_error);
    report.stats.emplace_back("rhs_plug_in", plug_in.mean);
    report.stats.emplace_back("rhs_plug_in_stderr", plug_in.std_error);
  }
  report.pass = pass;
  report.runtime_seconds = timer.seconds();
  return report;
}

CheckReport check_margin_transfer(const DensitySpec& spec, long n, long reps,
                                  long fresh_m, RngStream rng, int threads) {
  Timer timer;
  if (spec.kind() != DensitySpec::Kind::MarginPower)
    throw ValidationError("margin transfer needs a margin-power density");
  const double alpha = spec.margin_alpha();
  const double big_l = spec.margin_L();
  const double t0 = spec.margin_t0();
  const double power = alpha / (alpha + 1.0);

  const auto pool =
      run_replicates(spec, n, reps, fresh_m, rng.derive(kTagPoolA), threads);

  long qualifying = 0, violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& r : pool) {
    const double df = r.missing_mass;
    if (df > std::pow(t0, alpha + 1.0)) continue;
    ++qualifying;
    // Statistical slack: inflate the missing-mass estimate by 3 stderr plus
    // a rule-of-three allowance for zero counts, then apply the bound.
    const double se = std::sqrt(df * (1.0 - df) / fresh_m);
    const double df_up = std::min(1.0, df + 3.0 * se + 3.0 / fresh_m);
    const double bound = (big_l + 1.0) * std::pow(df_up, power);
    worst_margin = std::min(worst_margin, bound - r.missing_volume);
    if (r.missing_volume > bound) ++violations;
  }

  CheckReport report;
  report.name = "margin-transfer";
  report.seed = rng.seed();
  report.pass = qualifying > 0 && violations == 0;
  report.stats = {{"n", static_cast<double>(n)},
                  {"reps", static_cast<double>(reps)},
                  {"fresh_m", static_cast<double>(fresh_m)},
                  {"alpha", alpha},
                  {"L", big_l},
                  {"t0", t0},
                  {"qualifying_fraction",
                   static_cast<double>(qualifying) / reps},
                  {"violations", static_cast<double>(violations)},
                  {"worst_slack", worst_margin}};
  report.runtime_seconds = timer.seconds();
  return report;
}

RateCheck check_rate(const DensitySpec& spec, RateQuantity quantity, double q,
                     const std::vector<long>& n_grid, long reps, long fresh_m,
                     double target, bool bound_mode, double tol_exp,
                     RngStream rng, int threads) {
  Timer timer;
  if (n_grid.size() < 4)
    throw ValidationError("rate check needs >= 4 grid points");

  RateCheck out;
  const double body_volume = spec.support().exact_volume();
  for (size_t gi = 0; gi < n_grid.size(); ++gi) {
    const auto pool = run_replicates(
        spec, n_grid[gi], reps, fresh_m,
        rng.derive(0x47524944ull).derive(static_cast<std::uint64_t>(gi)),
        threads);
    std::vector<double> samples;
    samples.reserve(pool.size());
    for (const auto& r : pool) {
      switch (quantity) {
        case RateQuantity::MissingMass:
          samples.push_back(r.missing_mass);
          break;
        case RateQuantity::MissingVolumeFraction:
          samples.push_back(r.missing_volume / body_volume);
          break;
        case RateQuantity::VertexCount:
          samples.push_back(static_cast<double>(r.vertex_count));
          break;
      }
    }
    out.moments.push_back(estimate_moment(samples, q));
  }
  out.fit = fit_rate(n_grid, out.moments);

  const double err = out.fit.exponent - target;
  CheckReport report;
  report.name = quantity == RateQuantity::VertexCount ? "vertex-count-rate"
                                                      : "missing-volume-rate";
  report.seed = rng.seed();
  report.pass = bound_mode ? err <= tol_exp : std::abs(err) <= tol_exp;
  report.stats = {{"q", q},
                  {"reps_per_n", static_cast<double>(reps)},
                  {"exponent", out.fit.exponent},
                  {"exponent_stderr", out.fit.exponent_stderr},
                  {"target", target},
                  {"tol_exp", tol_exp},
                  {"bound_mode", bound_mode ? 1.0 : 0.0},
                  {"r_squared", out.fit.r_squared}};
  report.runtime_seconds = timer.seconds();
  out.report = report;
  return out;
}

CheckReport check_deviation_tail(const DensitySpec& spec, long n, long reps,
                                 RngStream rng, int threads) {
  Timer timer;
  const int d = spec.dim();
  const double rate_exp = -2.0 / (d + 1);

  // Fit c_hat at the theoretical rate on a small side grid.
  RngStream side = rng.derive(0xC0FFEEull);
  double log_c_sum = 0.0;
  const std::vector<long> side_grid = {n / 4, n / 2, n};
  for (size_t gi = 0; gi < side_grid.size(); ++gi) {
    const auto pool =
        run_replicates(spec, side_grid[gi], std::max<long>(500, reps / 25), 0,
                       side.derive(static_cast<std::uint64_t>(gi)), threads);
    const MomentEstimate m = estimate_moment(missing_mass_samples(pool), 1);
    log_c_sum += std::log(m.mean) - rate_exp * std::log(double(side_grid[gi]));
  }
  const double c_hat = std::exp(log_c_sum / side_grid.size());
  const double shift = c_hat * std::pow(static_cast<double>(n), rate_exp);

  const auto pool =
      run_replicates(spec, n, reps, 0, rng.derive(kTagPoolA), threads);
  std::vector<double> z;
  z.reserve(pool.size());
  for (const auto& r : pool) z.push_back(n * (r.missing_mass - shift));

  const int grid_points = 12;
  std::vector<double> xs, log_surv;
  for (int i = 0; i < grid_points; ++i) {
    const double pct = 0.60 + (0.995 - 0.60) * i / (grid_points - 1);
    const double x = quantile(z, pct);
    long exceed = 0;
    for (double v : z)
      if (v > x) ++exceed;
    if (i == grid_points - 1 && exceed < 50)
      throw InsufficientTailMass(
          "fewer than 50 exceedances at the top grid point; shrink the grid "
          "or add replicates");
    if (exceed == 0) continue;
    xs.push_back(x);
    log_surv.push_back(std::log(static_cast<double>(exceed) / z.size()));
  }
  const LinearFit fit = least_squares(xs, log_surv);

  CheckReport report;
  report.name = "deviation-tail";
  report.seed = rng.seed();
  report.pass = fit.slope < 0 && fit.r_squared >= 0.9;
  report.stats = {{"n", static_cast<double>(n)},
                  {"reps", static_cast<double>(reps)},
                  {"c_hat", c_hat},
                  {"decay_rate", -fit.slope},
                  {"slope_stderr", fit.slope_stderr},
                  {"r_squared", fit.r_squared},
                  {"grid_points", static_cast<double>(xs.size())}};
  report.runtime_seconds = timer.seconds();
  return report;
}

CheckReport check_affine_invariance(const ConvexBody& body, const AffineMap& t,
                                    long n, long reps, RngStream rng,
                                    int threads) {
  Timer timer;
  const ConvexBody image = affine_map(t, body);
  const DensitySpec spec_a = DensitySpec::uniform(body);
  const DensitySpec spec_b = DensitySpec::uniform(image);

  const auto pool_a =
      run_replicates(spec_a, n, reps, 0, rng.derive(kTagPoolA), threads);
  const auto pool_b =
      run_replicates(spec_b, n, reps, 0, rng.derive(kTagPoolB), threads);

  const KsResult ks = ks_two_sample(missing_mass_samples(pool_a),
                                    missing_mass_samples(pool_b));

  CheckReport report;
  report.name = "affine-invariance";
  report.seed = rng.seed();
  report.pass = ks.p_value > 1e-3;
  report.stats = {{"n", static_cast<double>(n)},
                  {"reps_per_arm", static_cast<double>(reps)},
                  {"ks_statistic", ks.statistic},
                  {"p_value", ks.p_value},
                  {"p_threshold", 1e-3}};
  report.runtime_seconds = timer.seconds();
  return report;
}

CheckReport check_worst_case_uniform(const ConvexBody& body,
                                     const std::vector<long>& n_grid,
                                     long reps, double tol_exp, RngStream rng,
                                     int threads) {
  Timer timer;
  const int d = body.dim();
  const double target = static_cast<double>(d - 1) / (d + 1);

  std::vector<std::pair<std::string, DensitySpec>> roster;
  roster.emplace_back("uniform", DensitySpec::uniform(body));
  const double rho0 = body.inradius_bound();
  roster.emplace_back("margin_gamma1", DensitySpec::margin_power(
                                           body, 1.0, rho0,
                                           rng.derive(0x6731ull), 200000));
  roster.emplace_back("margin_gamma2", DensitySpec::margin_power(
                                           body, 2.0, rho0,
                                           rng.derive(0x6732ull), 200000));
  if (body.kind() == ConvexBody::Kind::Ball) {
    Vec c0 = Vec::Zero(d + 1);
    c0.head(d) = body.center();
    roster.emplace_back(
        "projection",
        DensitySpec::projection(ConvexBody::ball(c0, body.radius()), d));
  }

  CheckReport report;
  report.name = "worst-case-vertex-rate";
  report.seed = rng.seed();
  report.pass = true;
  report.stats = {{"target", target}, {"tol_exp", tol_exp}};
  int idx = 0;
  for (const auto& [label, spec] : roster) {
    const RateCheck rc = check_rate(
        spec, RateQuantity::VertexCount, 1.0, n_grid, reps, 4096, target,
        /*bound_mode=*/true, tol_exp,
        rng.derive(0xD0 + static_cast<std::uint64_t>(idx++)), threads);
    report.pass = report.pass && rc.report.pass;
    report.stats.emplace_back("exponent_" + label, rc.fit.exponent);
  }
  report.runtime_seconds = timer.seconds();
  return report;
}

CheckReport check_nykodim_domination(int d, long pairs, long points_per_hull,
                                     long mc_points, RngStream rng,
                                     int threads) {
  Timer timer;
  const double alpha1 = steiner_ball_constants(d).alpha1;
  const ConvexBody ball = ConvexBody::unit_ball(d);
  const DensitySpec unif = DensitySpec::uniform(ball);

  std::vector<char> ok(pairs, 0);
  std::vector<double> ratios(pairs, 0.0);
  RngStream pool = rng.derive(0x4C32ull);
  parallel_for(threads, pairs, [&](long i) {
    RngStream pair_rng = pool.derive(static_cast<std::uint64_t>(i));
    const Polytope g =
        convex_hull(unif.sample(points_per_hull, pair_rng.derive(1)));
    const Polytope h =
        convex_hull(unif.sample(points_per_hull, pair_rng.derive(2)));
    const double dh = hausdorff_distance(g, h);
    const MonteCarloEstimate sym = symmetric_difference_volume(
        ConvexBody::poly(g), ConvexBody::poly(h), mc_points,
        pair_rng.derive(3));
    const double bound = alpha1 * dh + 3.0 * sym.std_error;
    ok[i] = sym.mean <= bound;
    ratios[i] = bound > 0 ? sym.mean / bound : 0.0;
  });

  long violations = 0;
  double worst_ratio = 0.0;
  for (long i = 0; i < pairs; ++i) {
    if (!ok[i]) ++violations;
    worst_ratio = std::max(worst_ratio, ratios[i]);
  }

  CheckReport report;
  report.name = "nykodim-domination";
  report.seed = rng.seed();
  report.pass = violations == 0;
  report.stats = {{"d", static_cast<double>(d)},
                  {"pairs", static_cast<double>(pairs)},
                  {"alpha1", alpha1},
                  {"violations", static_cast<double>(violations)},
                  {"worst_bound_ratio", worst_ratio}};
  report.runtime_seconds = timer.seconds();
  return report;
}

CheckReport check_projection_density(int ambient_dim, int d, long n,
                                     RngStream rng) {
  Timer timer;
  if (ambient_dim <= d)
    throw ValidationError("ambient dimension must exceed d");
  const DensitySpec spec = DensitySpec::projection(
      ConvexBody::unit_ball(ambient_dim), d);
  const PointSet pts = spec.sample(n, rng.derive(kTagPoolA));

  std::vector<double> radii(n);
  for (long i = 0; i < n; ++i) radii[i] = pts.row(i).norm();

  const double c_low = spec.slow_decay_c();  // divided-form constant
  const int codim = ambient_dim - d;

  // Boundary bins: t = 1 - r in (0, 0.2], binned density must dominate
  // c_low * t^{codim/2} within 3 sigma per bin.
  const int bound_bins = 10;
  bool bound_ok = true;
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int b = 0; b < bound_bins; ++b) {
    const double t1 = 0.2 * b / bound_bins;
    const double t2 = 0.2 * (b + 1) / bound_bins;
    const double r1 = 1.0 - t2, r2 = 1.0 - t1;
    long count = 0;
    for (double r : radii)
      if (r >= r1 && r < r2) ++count;
    const double area = unit_ball_volume(d) *
                        (std::pow(r2, d) - std::pow(r1, d));
    const double p = static_cast<double>(count) / n;
    const double density = p / area;
    const double sigma = std::sqrt(p * (1 - p) / n) / area;
    const double lower = c_low * std::pow(t1, 0.5 * codim);
    if (density + 3 * sigma < lower) bound_ok = false;
    worst_gap = std::min(worst_gap, density + 3 * sigma - lower);
  }

  // Full radial law for the ball ambient: P(r in [a,b]) =
  // (1-a^2)^{(codim+d)/2 ... } -- computed by the analytic radial cdf.
  // For ambient dim D, the radial density is proportional to
  // r^{d-1} (1 - r^2)^{codim/2}; its cdf term integrates in closed form for
  // D - d = 1 ... use numeric integration for generality.
  const int fit_bins = 20;
  auto radial_density = [&](double r) {
    return std::pow(r, d - 1) * std::pow(std::max(0.0, 1 - r * r),
                                         0.5 * codim);
  };
  // Simpson rule per bin, dense enough for the test's tolerance.
  std::vector<double> probs(fit_bins);
  double total = 0.0;
  for (int b = 0; b < fit_bins; ++b) {
    const double a = static_cast<double>(b) / fit_bins;
    const double bb = static_cast<double>(b + 1) / fit_bins;
    const int steps = 200;
    double integral = 0.0;
    for (int s = 0; s < steps; ++s) {
      const double x0 = a + (bb - a) * s / steps;
      const double x1 = a + (bb - a) * (s + 1) / steps;
      integral += (x1 - x0) / 6.0 *
                  (radial_density(x0) + 4 * radial_density(0.5 * (x0 + x1)) +
                   radial_density(x1));
    }
    probs[b] = integral;
    total += integral;
  }
  for (double& p : probs) p /= total;
  std::vector<long> observed(fit_bins, 0);
  for (double r : radii) {
    int b = std::min(fit_bins - 1, static_cast<int>(r * fit_bins));
    ++observed[b];
  }
  const ChiSquareResult chi2 = chi_square_gof(observed, probs);

  CheckReport report;
  report.name = "projection-density";
  report.seed = rng.seed();
  report.pass = bound_ok && chi2.p_value > 1e-3;
  report.stats = {{"ambient_dim", static_cast<double>(ambient_dim)},
                  {"d", static_cast<double>(d)},
                  {"n", static_cast<double>(n)},
                  {"c_lower_bound", c_low},
                  {"worst_bin_gap", worst_gap},
                  {"chi2_statistic", chi2.statistic},
                  {"chi2_p_value", chi2.p_value}};
  report.runtime_seconds = timer.seconds();
  return report;
}

}  // namespace polylab
