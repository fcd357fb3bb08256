#include "bnndep/acceptance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include <boost/random/normal_distribution.hpp>

#include "bnndep/oracle.hpp"
#include "bnndep/sampler.hpp"

namespace bnndep {
namespace {

using Json = nlohmann::ordered_json;

Json to_json(const EstimateWithError& e) { return Json{{"value", e.value}, {"std_error", e.std_error}, {"n", e.n}}; }

CriterionStatus pass_if(bool ok) { return ok ? CriterionStatus::kPass : CriterionStatus::kFail; }

bool within(double estimate, double target, double std_error, double k = 4.0) {
  return std::abs(estimate - target) <= k * std_error;
}

// Shared state of one suite run.
struct Context {
  AcceptanceOptions options;
  SeedSpec root;
  Vector input;
  std::vector<double> axis;
  SweepResult sweep;

  SeedSpec seed(const char* label) const { return root.child(label); }

  NetworkConfig uniform(std::size_t depth, std::size_t width, const ActivationKind& act = ActivationKind::relu(),
                        const PriorSpec& prior = PriorSpec::gaussian_iid()) const {
    return make_uniform_config(depth, width, options.input_dim, act, prior);
  }

  const SweepCell& cell(std::size_t depth, std::size_t width) const { return sweep.at({depth, width}); }
};

// Indices of the grid point closest to (0, 0).
std::pair<std::size_t, std::size_t> center_index(const DeltaGrid& grid) {
  auto nearest = [](const std::vector<double>& axis) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < axis.size(); ++i) {
      if (std::abs(axis[i]) < std::abs(axis[best])) best = i;
    }
    return best;
  };
  return {nearest(grid.z1_values), nearest(grid.z2_values)};
}

CriterionResult criterion_quadrants(const Context& ctx) {
  std::map<std::string, const DeltaGrid*> grids;
  for (std::size_t depth : {2, 3, 4}) {
    for (std::size_t width : {2, 5, 10}) grids[cell_key(depth, width)] = &ctx.cell(depth, width).grid;
  }
  return check_quadrant_signs(1, "quadrant sign structure", grids);
}

CriterionResult criterion_layer_one_null(const Context& ctx) {
  CriterionResult r{2, "layer-1 null", CriterionStatus::kPass, Json::object()};
  bool ok = true;
  Json grids = Json::object();
  for (std::size_t width : {2, 5, 10}) {
    const DeltaGrid& grid = ctx.cell(1, width).grid;
    std::size_t exceed = 0;
    double worst = 0.0;
    for (const auto& c : grid.cells) {
      const double ratio = c.std_error > 0.0 ? std::abs(c.value) / c.std_error : (c.value == 0.0 ? 0.0 : INFINITY);
      worst = std::max(worst, ratio);
      if (std::abs(c.value) > 4.0 * c.std_error) ++exceed;
    }
    ok = ok && exceed == 0;
    grids[cell_key(1, width)] = Json{{"cells_beyond_4se", exceed}, {"max_abs_over_se", worst}};
  }
  const SampleBatch batch = sample_units(ctx.uniform(1, 2), ctx.input, 1, {0, 1}, Tap::kPreActivation,
                                         ctx.options.n, ctx.seed("c2"), false, ctx.options.threads);
  const auto tau = kendall_tau(batch);
  const auto rho = spearman_rho(batch);
  const bool tau_ok = std::abs(tau.value) <= 4.0 * tau.std_error;
  const bool rho_ok = std::abs(rho.value) <= 4.0 * rho.std_error;
  r.measured["grids"] = grids;
  r.measured["tau"] = to_json(tau);
  r.measured["tau_bound"] = 4.0 * tau.std_error;
  r.measured["rho"] = to_json(rho);
  r.measured["rho_bound"] = 4.0 * rho.std_error;
  r.status = pass_if(ok && tau_ok && rho_ok);
  return r;
}

// Delta(0, 0) of an L = 2 ReLU network, checked against p (1 - p) / 4.
Json delta_zero_entry(const EstimateWithError& est, std::size_t width, bool& ok) {
  const double target = analytic_delta_zero(ActivationKind::relu(), width);
  const bool hit = within(est.value, target, est.std_error);
  ok = ok && hit;
  return Json{{"estimate", to_json(est)}, {"analytic", target}, {"within_4se", hit}};
}

EstimateWithError center_estimate(const Context& ctx, std::size_t width, double sigma0, const SeedSpec& seed) {
  const std::size_t n = width == 10 ? ctx.options.n_large : ctx.options.n;
  const NetworkConfig config = ctx.uniform(2, width, ActivationKind::relu(), PriorSpec::gaussian_iid(sigma0));
  const SampleBatch batch =
      sample_units(config, ctx.input, 2, {0, 1}, Tap::kPreActivation, n, seed, false, ctx.options.threads);
  return delta_upper(batch, 0.0, 0.0);
}

CriterionResult criterion_delta_zero(const Context& ctx) {
  CriterionResult r{3, "Delta(0,0) analytic match", CriterionStatus::kPass, Json::object()};
  bool ok = true;
  for (std::size_t width : {2, 5}) {
    const DeltaGrid& grid = ctx.cell(2, width).grid;
    const auto [a, b] = center_index(grid);
    ok = ok && grid.z1_values[a] == 0.0 && grid.z2_values[b] == 0.0;
    r.measured[cell_key(2, width)] = delta_zero_entry(grid.at(a, b), width, ok);
  }
  r.measured[cell_key(2, 10)] = delta_zero_entry(center_estimate(ctx, 10, 1.0, ctx.seed("c3")), 10, ok);
  r.status = pass_if(ok);
  return r;
}

CriterionResult criterion_scale_invariance(const Context& ctx) {
  CriterionResult r{4, "Delta(0,0) scale invariance", CriterionStatus::kPass, Json::object()};
  bool ok = true;
  const double scales[] = {0.1, 10.0};
  for (std::size_t s = 0; s < 2; ++s) {
    Json entry = Json::object();
    for (std::size_t width : {2, 5, 10}) {
      const SeedSpec seed = ctx.seed("c4").child(static_cast<std::uint64_t>(s)).child(static_cast<std::uint64_t>(width));
      entry[cell_key(2, width)] = delta_zero_entry(center_estimate(ctx, width, scales[s], seed), width, ok);
    }
    r.measured[s == 0 ? "sigma0=0.1" : "sigma0=10"] = entry;
  }
  r.status = pass_if(ok);
  return r;
}

CriterionResult criterion_zero_covariance(const Context& ctx) {
  CriterionResult r{5, "zero covariance", CriterionStatus::kPass, Json::object()};
  bool ok = true;
  const std::pair<const char*, PriorSpec> priors[] = {
      {"gaussian", PriorSpec::gaussian_iid()},
      {"equicorrelated(0.5)", PriorSpec::gaussian_equicorrelated(0.5)},
  };
  std::uint64_t run = 0;
  for (const auto& [label, prior] : priors) {
    const NetworkConfig config = ctx.uniform(3, 2, ActivationKind::relu(), prior);
    Json entry = Json::object();
    for (std::size_t layer = 1; layer <= 3; ++layer) {
      const SampleBatch batch = sample_units(config, ctx.input, layer, {0, 1}, Tap::kPreActivation, ctx.options.n,
                                             ctx.seed("c5").child(run++), false, ctx.options.threads);
      const auto cov = covariance(batch);
      const bool hit = within(cov.value, 0.0, cov.std_error);
      ok = ok && hit;
      entry["layer" + std::to_string(layer)] = Json{{"covariance", to_json(cov)}, {"within_4se", hit}};
    }
    r.measured[label] = entry;
  }
  r.status = pass_if(ok);
  return r;
}

CriterionResult criterion_zero_concordance(const Context& ctx) {
  CriterionResult r{6, "zero concordance", CriterionStatus::kPass, Json::object()};
  bool ok = true;
  std::uint64_t run = 0;
  for (const auto& act : {ActivationKind::relu(), ActivationKind::identity()}) {
    const NetworkConfig config = ctx.uniform(3, 2, act);
    Json entry = Json::object();
    for (std::size_t layer : {2, 3}) {
      const SampleBatch batch = sample_units(config, ctx.input, layer, {0, 1}, Tap::kPreActivation, ctx.options.n,
                                             ctx.seed("c6").child(run++), false, ctx.options.threads);
      const auto tau = kendall_tau(batch);
      const auto rho = spearman_rho(batch);
      const bool hit = within(tau.value, 0.0, tau.std_error) && within(rho.value, 0.0, rho.std_error);
      ok = ok && hit;
      entry["layer" + std::to_string(layer)] = Json{{"tau", to_json(tau)}, {"rho", to_json(rho)}, {"within_4se", hit}};
    }
    r.measured[to_string(act)] = entry;
  }
  r.status = pass_if(ok);
  return r;
}

CriterionResult criterion_replicas(const Context& ctx, std::map<std::string, DeltaGrid>& artifacts) {
  const ReplicaBatch batch = sample_replicas(ctx.uniform(2, 2), ctx.input, 2, {0, 1}, Tap::kPreActivation,
                                             ctx.options.n, ctx.seed("c7"), ctx.options.threads);
  artifacts["sum_L2H2"] = delta_grid(batch, ctx.axis, ctx.axis, Tail::kUpper, ComboMode::kSum);
  artifacts["diff_L2H2"] = delta_grid(batch, ctx.axis, ctx.axis, Tail::kUpper, ComboMode::kDiff);
  CriterionResult r = check_quadrant_signs(
      7, "replica sum/diff signs", {{"sum_L2H2", &artifacts["sum_L2H2"]}, {"diff_L2H2", &artifacts["diff_L2H2"]}});
  bool ok = r.status == CriterionStatus::kPass;
  for (const char* key : {"sum_L2H2", "diff_L2H2"}) {
    const DeltaGrid& grid = artifacts[key];
    const auto [a, b] = center_index(grid);
    const auto& c = grid.at(a, b);
    const bool hit = c.value >= -4.0 * c.std_error;
    ok = ok && hit;
    r.measured[std::string(key) + "_origin"] = Json{{"estimate", to_json(c)}, {"at_least_minus_4se", hit}};
  }
  r.status = pass_if(ok);
  return r;
}

CriterionResult criterion_oracle_pipeline(const Context& ctx) {
  CriterionResult r{8, "oracle pipeline equivalence", CriterionStatus::kPass, Json::object()};
  const DiscreteNetSpec toy = DiscreteNetSpec::toy_net();
  const SampleBatch batch = sample_discrete_units(toy, 2, {0, 1}, ctx.options.n, ctx.seed("c8"), ctx.options.threads);
  bool ok = true;
  const std::pair<double, double> points[] = {{0.0, 0.0}, {0.5, 0.5}, {0.5, -0.5}};
  Json list = Json::array();
  for (const auto& [z1, z2] : points) {
    const Rational exact = enumerate_exact_delta(toy, 2, {0, 1}, z1, z2);
    const double exact_value = boost::rational_cast<double>(exact);
    const auto est = delta_upper(batch, z1, z2);
    const bool hit = within(est.value, exact_value, est.std_error);
    ok = ok && hit;
    std::ostringstream frac;
    frac << exact.numerator() << "/" << exact.denominator();
    list.push_back(Json{{"z1", z1}, {"z2", z2}, {"exact", frac.str()}, {"estimate", to_json(est)}, {"within_4se", hit}});
  }
  r.measured["points"] = list;
  r.status = pass_if(ok);
  return r;
}

CriterionResult criterion_rao_blackwell(const Context& ctx) {
  CriterionResult r{9, "Rao-Blackwell consistency", CriterionStatus::kPass, Json::object()};
  bool ok = true;
  const double zs[] = {-0.5, 0.0, 0.5};
  for (std::size_t width : {2, 5}) {
    const NetworkConfig config = ctx.uniform(2, width);
    const PriorSpec& prior = config.prior(2);
    const SampleBatch batch =
        sample_units(config, ctx.input, 2, {0, 1}, Tap::kPreActivation, ctx.options.n,
                     ctx.seed("c9").child(static_cast<std::uint64_t>(width)), true, ctx.options.threads);
    Json points = Json::array();
    for (double z1 : zs) {
      for (double z2 : zs) {
        const auto rb = rao_blackwell_delta(batch, prior, z1, z2);
        const auto ind = delta_upper(batch, z1, z2);
        const double bound = 4.0 * std::hypot(rb.std_error, ind.std_error);
        const bool hit = std::abs(rb.value - ind.value) <= bound;
        ok = ok && hit;
        points.push_back(Json{{"z1", z1}, {"z2", z2}, {"rao_blackwell", to_json(rb)}, {"indicator", to_json(ind)},
                              {"agree", hit}});
      }
    }

    // Spread of both estimators at (0, 0) over independent seeds.
    std::vector<double> rb_values, ind_values;
    for (std::size_t s = 0; s < ctx.options.repeated_seeds; ++s) {
      const SampleBatch rep = sample_units(
          config, ctx.input, 2, {0, 1}, Tap::kPreActivation, ctx.options.n,
          ctx.seed("c9-repeat").child(static_cast<std::uint64_t>(width)).child(static_cast<std::uint64_t>(s)), true,
          ctx.options.threads);
      rb_values.push_back(rao_blackwell_delta(rep, prior, 0.0, 0.0).value);
      ind_values.push_back(delta_upper(rep, 0.0, 0.0).value);
    }
    auto variance = [](const std::vector<double>& x) {
      double mean = 0.0;
      for (double v : x) mean += v;
      mean /= static_cast<double>(x.size());
      double ss = 0.0;
      for (double v : x) ss += (v - mean) * (v - mean);
      return ss / static_cast<double>(x.size() - 1);
    };
    const double var_rb = variance(rb_values);
    const double var_ind = variance(ind_values);
    const bool dominated = var_rb <= var_ind;
    ok = ok && dominated;
    r.measured[cell_key(2, width)] = Json{{"points", points},
                                          {"repeated_seeds", ctx.options.repeated_seeds},
                                          {"variance_rao_blackwell", var_rb},
                                          {"variance_indicator", var_ind},
                                          {"variance_dominated", dominated}};
  }
  r.status = pass_if(ok);
  return r;
}

CriterionResult criterion_tau_equivalence(const Context& ctx) {
  CriterionResult r{10, "Kendall tau algorithm equivalence", CriterionStatus::kPass, Json::object()};
  std::size_t mismatches = 0, with_ties = 0;
  boost::random::normal_distribution<double> normal;
  for (std::size_t b = 0; b < ctx.options.tau_batches; ++b) {
    Rng rng(ctx.seed("c10").child(static_cast<std::uint64_t>(b)));
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 1999);
    const bool ties = b % 2 == 0;
    with_ties += ties;
    std::vector<double> u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (ties) {
        u[i] = static_cast<double>(rng() % 7);
        v[i] = static_cast<double>(rng() % 5);
      } else {
        u[i] = normal(rng);
        v[i] = normal(rng);
      }
    }
    const double fast = kendall_tau(u, v).value;
    const double slow = brute_force_tau(u, v);
    if (std::bit_cast<std::uint64_t>(fast) != std::bit_cast<std::uint64_t>(slow)) ++mismatches;
  }
  r.measured["batches"] = ctx.options.tau_batches;
  r.measured["batches_with_ties"] = with_ties;
  r.measured["bitwise_mismatches"] = mismatches;
  r.status = pass_if(mismatches == 0);
  return r;
}

CriterionResult criterion_width_trend(const Context& ctx) {
  CriterionResult r{11, "width trend", CriterionStatus::kPass, Json::object()};
  const std::size_t widths[] = {2, 5, 10};
  bool ok = true;
  for (std::size_t w : widths) {
    const auto& s = ctx.cell(2, w).summary;
    r.measured[cell_key(2, w)] = Json{{"mean_abs", s.mean_abs}, {"mean_abs_se_bound", s.mean_std_error}};
  }
  for (std::size_t i = 0; i + 1 < 3; ++i) {
    const auto& a = ctx.cell(2, widths[i]).summary;
    const auto& b = ctx.cell(2, widths[i + 1]).summary;
    const double gap = a.mean_abs - b.mean_abs;
    const double se = std::hypot(a.mean_std_error, b.mean_std_error);
    const bool hit = gap > se;
    ok = ok && hit;
    r.measured[cell_key(2, widths[i]) + "-" + cell_key(2, widths[i + 1])] =
        Json{{"gap", gap}, {"propagated_se", se}, {"exceeds", hit}};
  }
  r.status = pass_if(ok);
  return r;
}

CriterionResult criterion_depth_trend(const Context& ctx) {
  CriterionResult r{12, "depth trend (soft)", CriterionStatus::kPass, Json::object()};
  bool ok = true;
  double previous = 0.0;
  for (std::size_t depth : {2, 3, 4}) {
    const auto& s = ctx.cell(depth, 2).summary;
    r.measured[cell_key(depth, 2)] = Json{{"peakedness", s.peakedness},
                                          {"center_value", s.center_value},
                                          {"corner_mean_abs", s.corner_mean_abs}};
    if (depth > 2 && s.peakedness < previous - 0.1 * std::abs(previous)) ok = false;
    previous = s.peakedness;
  }
  r.measured["slack"] = 0.1;
  r.status = ok ? CriterionStatus::kPass : CriterionStatus::kWarn;
  return r;
}

Json profile_json(const PdProfile& profile) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < profile.z_values.size(); ++i) {
    Json row{{"z", profile.z_values[i]}};
    row["right"] = profile.right_tail[i] ? to_json(*profile.right_tail[i]) : Json(nullptr);
    row["left"] = profile.left_tail[i] ? to_json(*profile.left_tail[i]) : Json(nullptr);
    rows.push_back(row);
  }
  return rows;
}

PdProfile layer_profile(const Context& ctx, std::size_t layer, const char* label) {
  NetworkConfig config = ctx.uniform(layer, 3);
  const Matrix samples = sample_layer(config, ctx.input, layer, Tap::kPreActivation, ctx.options.n,
                                      ctx.seed(label), ctx.options.threads);
  const Eigen::VectorXd last = samples.col(samples.cols() - 1);
  const std::span<const double> xn(last.data(), static_cast<std::size_t>(last.size()));
  const std::vector<double> zs = make_axis(empirical_quantile(xn, 0.01), empirical_quantile(xn, 0.99), 21);
  return pd_profile(samples, zs);
}

CriterionResult criterion_pd(const Context& ctx) {
  CriterionResult r{13, "positive dependence condition", CriterionStatus::kPass, Json::object()};
  bool ok = true;

  const PdProfile deep = layer_profile(ctx, 2, "c13-layer2");
  std::size_t weak = 0;
  for (const auto* tail : {&deep.right_tail, &deep.left_tail}) {
    for (const auto& cell : *tail) {
      if (!cell || !(cell->value - 4.0 * cell->std_error > 0.0)) ++weak;
    }
  }
  ok = ok && weak == 0;
  r.measured["layer2"] = Json{{"profile", profile_json(deep)},
                              {"min_right", deep.min_right ? to_json(*deep.min_right) : Json(nullptr)},
                              {"min_left", deep.min_left ? to_json(*deep.min_left) : Json(nullptr)},
                              {"cells_not_bounded_away_from_zero", weak}};

  const PdProfile first = layer_profile(ctx, 1, "c13-layer1");
  std::size_t off = 0;
  for (const auto* tail : {&first.right_tail, &first.left_tail}) {
    for (const auto& cell : *tail) {
      if (!cell || !within(cell->value, 0.25, cell->std_error)) ++off;
    }
  }
  ok = ok && off == 0;
  r.measured["layer1"] = Json{{"profile", profile_json(first)}, {"target", 0.25}, {"cells_off_target", off}};
  r.status = pass_if(ok);
  return r;
}

// Small end-to-end run at two thread counts; every number must match bitwise.
CriterionResult criterion_determinism(const Context& ctx) {
  CriterionResult r{14, "determinism across thread counts", CriterionStatus::kPass, Json::object()};
  auto fingerprint = [&](std::size_t threads) {
    std::vector<std::uint64_t> bits;
    const NetworkConfig config = ctx.uniform(2, 2);
    const SeedSpec seed = ctx.seed("c14");
    const SampleBatch batch =
        sample_units(config, ctx.input, 2, {0, 1}, Tap::kPreActivation, 4000, seed, true, threads);
    const ReplicaBatch replicas = sample_replicas(config, ctx.input, 2, {0, 1}, Tap::kPreActivation, 4000, seed, threads);
    for (const auto* values : {&batch.u, &batch.v, &*batch.prev_norms, &replicas.u2, &replicas.v2}) {
      for (double x : *values) bits.push_back(std::bit_cast<std::uint64_t>(x));
    }
    for (const auto& c : delta_grid(batch, ctx.axis, ctx.axis).cells) {
      bits.push_back(std::bit_cast<std::uint64_t>(c.value));
      bits.push_back(std::bit_cast<std::uint64_t>(c.std_error));
    }
    return bits;
  };
  const auto one = fingerprint(1);
  const auto many = fingerprint(4);
  const bool same = one == many;
  r.measured["compared_words"] = one.size();
  r.measured["threads"] = Json::array({1, 4});
  r.measured["identical"] = same;
  r.status = pass_if(same);
  return r;
}

}  // namespace

std::string to_string(CriterionStatus status) {
  switch (status) {
    case CriterionStatus::kPass: return "pass";
    case CriterionStatus::kFail: return "fail";
    case CriterionStatus::kWarn: return "warn";
  }
  return "fail";
}

bool AcceptanceRun::passed() const {
  return std::none_of(criteria.begin(), criteria.end(),
                      [](const CriterionResult& c) { return c.status == CriterionStatus::kFail; });
}

CriterionResult check_quadrant_signs(int id, std::string name, const std::map<std::string, const DeltaGrid*>& grids) {
  CriterionResult r{id, std::move(name), CriterionStatus::kPass, Json::object()};
  std::size_t total = 0;
  Json per_grid = Json::object();
  for (const auto& [key, grid] : grids) {
    const std::size_t v = count_quadrant_violations(*grid, kSignSignificance);
    per_grid[key] = v;
    total += v;
  }
  r.measured["violations"] = per_grid;
  r.measured["total_violations"] = total;
  r.measured["significance_se"] = kSignSignificance;
  r.status = pass_if(total == 0);
  return r;
}

AcceptanceRun acceptance_suite(const AcceptanceOptions& options) {
  Context ctx;
  ctx.options = options;
  ctx.root = SeedSpec(options.master_seed).child("acceptance");

  SweepSpec spec;
  spec.depths = {1, 2, 3, 4};
  spec.widths = {2, 5, 10};
  spec.input_dim = options.input_dim;
  spec.n = options.n;
  spec.grid.steps = options.grid_steps;
  spec.master_seed = options.master_seed;
  spec.threads = options.threads;
  ctx.input = sweep_input(spec);
  ctx.axis = spec.grid.values();
  ctx.sweep = run_sweep(spec);

  AcceptanceRun run;
  run.master_seed = options.master_seed;
  for (const auto& [key, cell] : ctx.sweep) run.grids[cell_key(cell.depth, cell.width)] = cell.grid;

  run.criteria.push_back(criterion_quadrants(ctx));
  run.criteria.push_back(criterion_layer_one_null(ctx));
  run.criteria.push_back(criterion_delta_zero(ctx));
  run.criteria.push_back(criterion_scale_invariance(ctx));
  run.criteria.push_back(criterion_zero_covariance(ctx));
  run.criteria.push_back(criterion_zero_concordance(ctx));
  run.criteria.push_back(criterion_replicas(ctx, run.grids));
  run.criteria.push_back(criterion_oracle_pipeline(ctx));
  run.criteria.push_back(criterion_rao_blackwell(ctx));
  run.criteria.push_back(criterion_tau_equivalence(ctx));
  run.criteria.push_back(criterion_width_trend(ctx));
  run.criteria.push_back(criterion_depth_trend(ctx));
  run.criteria.push_back(criterion_pd(ctx));
  run.criteria.push_back(criterion_determinism(ctx));
  return run;
}

nlohmann::ordered_json report_to_json(const AcceptanceRun& run) {
  Json report;
  report["seed"] = run.master_seed;
  report["passed"] = run.passed();
  Json list = Json::array();
  for (const auto& c : run.criteria) {
    list.push_back(Json{{"id", c.id}, {"name", c.name}, {"status", to_string(c.status)}, {"measured", c.measured}});
  }
  report["criteria"] = list;
  return report;
}

std::string report_to_text(const AcceptanceRun& run) {
  std::ostringstream out;
  for (const auto& c : run.criteria) {
    std::string tag = c.status == CriterionStatus::kPass ? "PASS" : c.status == CriterionStatus::kWarn ? "WARN" : "FAIL";
    out << "[" << tag << "] C" << c.id << " " << c.name << "\n";
  }
  out << (run.passed() ? "acceptance: all criteria passed" : "acceptance: FAILED") << "\n";
  return out.str();
}

}  // namespace bnndep
