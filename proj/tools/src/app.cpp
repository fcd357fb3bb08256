#include "bnndep_cli/app.hpp"

#include <filesystem>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "bnndep/acceptance.hpp"
#include "bnndep/errors.hpp"
#include "bnndep/oracle.hpp"
#include "bnndep_cli/grid_io.hpp"
#include "bnndep_cli/heatmap.hpp"
#include "bnndep_cli/run_config.hpp"

namespace bnndep::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// Flags that patch a RunConfig after --config has been loaded, so a flag
// always wins over the file.
class Overrides {
 public:
  template <typename T, typename F>
  CLI::Option* add(CLI::App* app, const std::string& name, const std::string& help, F apply) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(name, *value, help);
    patches_.push_back([opt, value, apply](RunConfig& c) {
      if (opt->count() > 0) apply(c, *value);
    });
    return opt;
  }

  CLI::Option* flag(CLI::App* app, const std::string& name, const std::string& help,
                    std::function<void(RunConfig&)> apply) {
    CLI::Option* opt = app->add_flag(name, help);
    patches_.push_back([opt, apply](RunConfig& c) {
      if (opt->count() > 0) apply(c);
    });
    return opt;
  }

  // Loads --config (if given), applies the flags and re-validates.
  RunConfig resolve() const {
    RunConfig config = config_path_.empty() ? RunConfig{} : load_run_config(config_path_);
    for (const auto& patch : patches_) patch(config);
    return run_config_from_json(nlohmann::json::parse(to_json(config).dump()));
  }

  std::string& config_path() { return config_path_; }

 private:
  std::string config_path_;
  std::vector<std::function<void(RunConfig&)>> patches_;
};

void add_model_options(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config_path(), "JSON run configuration (see print-config)");
  o.add<std::uint64_t>(app, "--seed", "master seed", [](RunConfig& c, std::uint64_t v) { c.sweep.master_seed = v; });
  o.add<std::size_t>(app, "--threads", "worker threads, 0 = all cores",
                     [](RunConfig& c, std::size_t v) { c.sweep.threads = v; });
  o.add<std::size_t>(app, "--n", "Monte Carlo draws", [](RunConfig& c, std::size_t v) { c.sweep.n = v; });
  o.add<std::size_t>(app, "--input-dim", "input dimension", [](RunConfig& c, std::size_t v) { c.sweep.input_dim = v; });
  o.add<std::string>(app, "--activation", "relu, identity, tanh, sigmoid or elu", [](RunConfig& c, std::string v) {
    c.sweep.activation = parse_activation(v, c.sweep.activation.elu_alpha);
  });
  o.add<double>(app, "--elu-alpha", "ELU alpha", [](RunConfig& c, double v) { c.sweep.activation.elu_alpha = v; });
  o.add<std::string>(app, "--prior", "gaussian, equicorrelated or student-t",
                     [](RunConfig& c, std::string v) { c.sweep.prior.family = parse_prior_family(v); });
  o.add<double>(app, "--sigma0", "prior scale", [](RunConfig& c, double v) { c.sweep.prior.sigma0 = v; });
  o.add<std::string>(app, "--scale-mode", "fan-in or fixed",
                     [](RunConfig& c, std::string v) { c.sweep.prior.scale_mode = parse_scale_mode(v); });
  o.add<double>(app, "--rho-w", "weight equicorrelation", [](RunConfig& c, double v) { c.sweep.prior.rho_w = v; });
  o.add<double>(app, "--nu", "Student-t degrees of freedom", [](RunConfig& c, double v) { c.sweep.prior.nu = v; });
  o.add<std::string>(app, "--tap", "pre or post", [](RunConfig& c, std::string v) { c.sweep.tap = parse_tap(v); });
  o.add<std::string>(app, "--tail", "upper or lower", [](RunConfig& c, std::string v) { c.sweep.tail = parse_tail(v); });
  o.add<double>(app, "--z-min", "grid minimum", [](RunConfig& c, double v) { c.sweep.grid.min = v; });
  o.add<double>(app, "--z-max", "grid maximum", [](RunConfig& c, double v) { c.sweep.grid.max = v; });
  o.add<std::size_t>(app, "--z-steps", "grid points per axis", [](RunConfig& c, std::size_t v) { c.sweep.grid.steps = v; });
}

void add_output_options(CLI::App* app, Overrides& o) {
  o.add<std::string>(app, "--out", "output directory", [](RunConfig& c, std::string v) { c.output_dir = v; });
  o.add<double>(app, "--color-limit", "fixed symmetric colour scale", [](RunConfig& c, double v) { c.color_limit = v; });
  o.flag(app, "--no-svg", "skip heatmaps", [](RunConfig& c) { c.write_svg = false; });
}

void add_sweep_options(CLI::App* app, Overrides& o) {
  o.add<std::vector<std::size_t>>(app, "--depths", "network depths",
                                  [](RunConfig& c, std::vector<std::size_t> v) { c.sweep.depths = v; })
      ->delimiter(',');
  o.add<std::vector<std::size_t>>(app, "--widths", "hidden widths",
                                  [](RunConfig& c, std::vector<std::size_t> v) { c.sweep.widths = v; })
      ->delimiter(',');
}

// One network of the sweep, picked with --depth / --width.
struct SingleNet {
  std::size_t depth = 2;
  std::size_t width = 2;
  std::size_t layer = 0;  // 0: last hidden layer
  std::vector<std::size_t> units{0, 1};

  void add(CLI::App* app, Overrides& o, bool with_units = true) {
    o.add<std::size_t>(app, "--depth", "network depth", [this](RunConfig& c, std::size_t v) {
      depth = v;
      c.sweep.depths = {v};
    });
    o.add<std::size_t>(app, "--width", "hidden width", [this](RunConfig& c, std::size_t v) {
      width = v;
      c.sweep.widths = {v};
    });
    app->add_option("--layer", layer, "tapped layer (default: last hidden layer)");
    if (with_units) app->add_option("--units", units, "two unit indices")->expected(2);
  }

  // Settles depth/width from the resolved config.
  void settle(const RunConfig& config) {
    if (config.sweep.depths.size() != 1 || config.sweep.widths.size() != 1) {
      throw ConfigError("pick a single network with --depth and --width");
    }
    depth = config.sweep.depths.front();
    width = config.sweep.widths.front();
    if (layer == 0) layer = depth;
    if (layer > depth) throw ConfigError("--layer exceeds the network depth");
  }

  UnitPair pair() const { return {units.at(0), units.at(1)}; }

  NetworkConfig network(const RunConfig& config) const {
    return make_uniform_config(depth, width, config.sweep.input_dim, config.sweep.activation, config.sweep.prior);
  }

  SeedSpec seed(const RunConfig& config) const { return sweep_cell_seed(config.sweep.master_seed, depth, width); }
};

HeatmapOptions heatmap_options(const RunConfig& config, std::string title) {
  return {config.color_limit, std::move(title)};
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  const SweepResult result = run_sweep(config.sweep);
  for (const auto& [key, cell] : result) {
    const std::string name = cell_key(cell.depth, cell.width);
    write_grid_csv(cell.grid, dir / ("grid_" + name + ".csv"));
    if (config.write_svg) render_heatmap(cell.grid, dir / ("heatmap_" + name + ".svg"), heatmap_options(config, name));
    out << name << " mean|Delta|=" << format_real(cell.summary.mean_abs)
        << " Delta(center)=" << format_real(cell.summary.center_value) << " +- "
        << format_real(cell.summary.center_std_error) << " violations=" << cell.summary.quadrant_sign_violations
        << "\n";
  }
  write_text_file(dir / "summary.json", summary_json(result).dump(2) + "\n");
  write_text_file(dir / "config.json", to_json(config).dump(2) + "\n");
  out << "wrote " << result.size() << " grid(s) to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_delta(const RunConfig& config, const SingleNet& net, const std::string& combo_name, const std::string& csv,
              const std::string& svg, std::ostream& out) {
  const NetworkConfig network = net.network(config);
  const Vector input = sweep_input(config.sweep);
  const std::vector<double> axis = config.sweep.grid.values();
  const Combo combo = parse_combo(combo_name);
  DeltaGrid grid;
  if (combo == Combo::kSingle) {
    const SampleBatch batch = sample_units(network, input, net.layer, net.pair(), config.sweep.tap, config.sweep.n,
                                           net.seed(config), false, config.sweep.threads);
    grid = delta_grid(batch, axis, axis, config.sweep.tail);
  } else {
    const ReplicaBatch batch = sample_replicas(network, input, net.layer, net.pair(), config.sweep.tap,
                                               config.sweep.n, net.seed(config), config.sweep.threads);
    grid = delta_grid(batch, axis, axis, config.sweep.tail, combo == Combo::kSumOfCopies ? ComboMode::kSum : ComboMode::kDiff);
  }
  if (csv == "-") {
    write_grid_csv(grid, out);
  } else {
    write_grid_csv(grid, fs::path(csv));
  }
  if (!svg.empty()) render_heatmap(grid, fs::path(svg), heatmap_options(config, cell_key(net.depth, net.width)));
  return kExitOk;
}

int cmd_concordance(const RunConfig& config, const SingleNet& net, std::ostream& out) {
  const SampleBatch batch = sample_units(net.network(config), sweep_input(config.sweep), net.layer, net.pair(),
                                         config.sweep.tap, config.sweep.n, net.seed(config), false,
                                         config.sweep.threads);
  Json doc{{"layer", net.layer},
           {"units", net.units},
           {"n", batch.size()},
           {"kendall_tau", to_json(kendall_tau(batch))},
           {"spearman_rho", to_json(spearman_rho(batch))},
           {"covariance", to_json(covariance(batch))}};
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_pd(const RunConfig& config, const SingleNet& net, std::size_t points, const std::vector<double>& quantiles,
           std::ostream& out) {
  if (points < 1) throw ConfigError("--points must be positive");
  const Matrix samples = sample_layer(net.network(config), sweep_input(config.sweep), net.layer, config.sweep.tap,
                                      config.sweep.n, net.seed(config), config.sweep.threads);
  const Vector last = samples.col(samples.cols() - 1);
  const std::span<const double> xn(last.data(), static_cast<std::size_t>(last.size()));
  const double lo = empirical_quantile(xn, quantiles.at(0));
  const double hi = empirical_quantile(xn, quantiles.at(1));
  const std::vector<double> zs = points == 1 ? std::vector<double>{lo} : make_axis(lo, hi, points);
  const PdProfile profile = pd_profile(samples, zs);
  auto opt = [](const std::optional<EstimateWithError>& e) { return e ? to_json(*e) : Json(nullptr); };
  Json rows = Json::array();
  for (std::size_t i = 0; i < zs.size(); ++i) {
    rows.push_back({{"z", zs[i]}, {"right_tail", opt(profile.right_tail[i])}, {"left_tail", opt(profile.left_tail[i])}});
  }
  Json doc{{"layer", net.layer},
           {"layer_width", samples.cols()},
           {"n", samples.rows()},
           {"profile", rows},
           {"min_right_tail", opt(profile.min_right)},
           {"min_left_tail", opt(profile.min_left)}};
  out << doc.dump(2) << "\n";
  return kExitOk;
}

int cmd_selftest(const AcceptanceOptions& options, const std::string& dir, bool json, std::ostream& out) {
  const AcceptanceRun run = acceptance_suite(options);
  const std::string text = report_to_text(run);
  const std::string report = report_to_json(run).dump(2) + "\n";
  out << (json ? report : text);
  if (!dir.empty()) {
    const fs::path root(dir);
    fs::create_directories(root);
    write_text_file(root / "report.json", report);
    write_text_file(root / "report.txt", text);
    for (const auto& [key, grid] : run.grids) {
      write_grid_csv(grid, root / ("grid_" + key + ".csv"));
      render_heatmap(grid, root / ("heatmap_" + key + ".svg"), HeatmapOptions{std::nullopt, key});
    }
  }
  return run.passed() ? kExitOk : kExitSelftestFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo dependence estimates for finite-width Bayesian network priors", "bnndep"};
  app.require_subcommand(1);
  std::function<int()> action;

  Overrides sweep_o;
  auto* sweep = app.add_subcommand("sweep", "width/depth sweep: CSV grids, heatmaps and summary.json");
  add_model_options(sweep, sweep_o);
  add_sweep_options(sweep, sweep_o);
  add_output_options(sweep, sweep_o);
  sweep->callback([&] { action = [&] { return cmd_sweep(sweep_o.resolve(), out); }; });

  Overrides delta_o;
  SingleNet delta_net;
  std::string combo = "single", csv = "-", svg;
  auto* delta = app.add_subcommand("delta", "Delta grid of one network");
  add_model_options(delta, delta_o);
  delta_net.add(delta, delta_o);
  delta->add_option("--combo", combo, "single, sum or diff of two independent copies");
  delta->add_option("--csv", csv, "CSV destination, - for stdout");
  delta->add_option("--svg", svg, "heatmap destination");
  delta_o.add<double>(delta, "--color-limit", "fixed symmetric colour scale",
                      [](RunConfig& c, double v) { c.color_limit = v; });
  delta->callback([&] {
    action = [&] {
      const RunConfig config = delta_o.resolve();
      delta_net.settle(config);
      return cmd_delta(config, delta_net, combo, csv, svg, out);
    };
  });

  Overrides conc_o;
  SingleNet conc_net;
  auto* conc = app.add_subcommand("concordance", "Kendall tau, Spearman rho and covariance of two units");
  add_model_options(conc, conc_o);
  conc_net.add(conc, conc_o);
  conc->callback([&] {
    action = [&] {
      const RunConfig config = conc_o.resolve();
      conc_net.settle(config);
      return cmd_concordance(config, conc_net, out);
    };
  });

  Overrides pd_o;
  SingleNet pd_net;
  std::size_t pd_points = 21;
  std::vector<double> pd_quantiles{0.01, 0.99};
  auto* pd = app.add_subcommand("pd", "positive dependence profile of a whole layer");
  add_model_options(pd, pd_o);
  pd_net.add(pd, pd_o, false);
  pd->add_option("--points", pd_points, "number of z values");
  pd->add_option("--quantiles", pd_quantiles, "z range as quantiles of the conditioning unit")
      ->expected(2)
      ->check(CLI::Range(0.0, 1.0));
  pd->callback([&] {
    action = [&] {
      const RunConfig config = pd_o.resolve();
      pd_net.settle(config);
      return cmd_pd(config, pd_net, pd_points, pd_quantiles, out);
    };
  });

  auto* oracle = app.add_subcommand("oracle", "closed-form and enumerated reference values");
  oracle->require_subcommand(1);
  std::size_t o_width = 2;
  std::string o_activation = "relu";
  auto* d00 = oracle->add_subcommand("delta00", "Delta(0,0) of a depth-2 ReLU network");
  d00->add_option("--width", o_width, "width of hidden layer 1")->required();
  d00->add_option("--activation", o_activation, "activation");
  d00->callback([&] {
    action = [&] {
      out << format_real(analytic_delta_zero(parse_activation(o_activation), o_width)) << "\n";
      return kExitOk;
    };
  });

  Overrides d0z_o;
  double o_z = 0.5;
  auto* d0z = oracle->add_subcommand("delta0z", "Delta(0,z) with a Monte Carlo expectation over layer 1");
  add_model_options(d0z, d0z_o);
  d0z_o.add<std::size_t>(d0z, "--width", "hidden width", [](RunConfig& c, std::size_t v) { c.sweep.widths = {v}; });
  d0z->add_option("--z", o_z, "second threshold");
  d0z->callback([&] {
    action = [&] {
      RunConfig config = d0z_o.resolve();
      if (config.sweep.widths.size() != 1) throw ConfigError("pick a single network with --width");
      const std::size_t width = config.sweep.widths.front();
      const NetworkConfig network =
          make_uniform_config(2, width, config.sweep.input_dim, config.sweep.activation, config.sweep.prior);
      const SampleBatch batch = sample_units(network, sweep_input(config.sweep), 2, {0, 1}, Tap::kPreActivation,
                                             config.sweep.n, sweep_cell_seed(config.sweep.master_seed, 2, width), true,
                                             config.sweep.threads);
      double sum = 0.0;
      std::size_t live = 0;
      for (double norm : *batch.prev_norms) {
        if (norm > 0.0) {
          sum += xi(network.prior(2), o_z, norm);
          ++live;
        }
      }
      if (live == 0) throw EstimationError("every draw had a zero layer-1 output");
      const double expectation = sum / static_cast<double>(live);
      Json doc{{"width", width},
               {"z", o_z},
               {"mc_expectation", expectation},
               {"draws_used", live},
               {"delta", analytic_delta_zero_z(network.activation, width, o_z, expectation)}};
      out << doc.dump(2) << "\n";
      return kExitOk;
    };
  });

  DiscreteNetSpec enum_spec = DiscreteNetSpec::toy_net();
  std::size_t enum_layer = 0;
  std::vector<std::size_t> enum_units{0, 1};
  double z1 = 0.0, z2 = 0.0;
  std::string enum_tail = "upper", enum_activation = "relu";
  auto* en = oracle->add_subcommand("enumerate", "exact Delta of a small discrete-weight network");
  en->add_option("--widths", enum_spec.widths, "layer widths starting with the input dimension")->delimiter(',');
  en->add_option("--input", enum_spec.input, "input vector")->delimiter(',');
  en->add_option("--layer", enum_layer, "layer (default: last)");
  en->add_option("--units", enum_units, "two unit indices")->expected(2);
  en->add_option("--z1", z1, "first threshold");
  en->add_option("--z2", z2, "second threshold");
  en->add_option("--tail", enum_tail, "upper or lower");
  en->add_option("--activation", enum_activation, "activation");
  std::vector<double> support_vals;
  std::vector<std::uint64_t> support_wts;
  en->add_option("--support", support_vals, "weight values (default -1,1)")->delimiter(',');
  en->add_option("--support-weights", support_wts, "integer weights of the values")->delimiter(',');
  en->callback([&] {
    action = [&] {
      enum_spec.activation = parse_activation(enum_activation);
      if (!support_vals.empty()) {
        enum_spec.support.values = support_vals;
        enum_spec.support.weights =
            support_wts.empty() ? std::vector<std::uint64_t>(support_vals.size(), 1) : support_wts;
      }
      const std::size_t layer = enum_layer == 0 ? enum_spec.depth() : enum_layer;
      const Rational exact = enumerate_exact_delta(enum_spec, layer, {enum_units.at(0), enum_units.at(1)}, z1, z2,
                                                   parse_tail(enum_tail));
      out << exact.numerator() << "/" << exact.denominator() << " "
          << format_real(boost::rational_cast<double>(exact)) << "\n";
      return kExitOk;
    };
  });

  AcceptanceOptions acc;
  std::string acc_out;
  bool acc_json = false;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--seed", acc.master_seed, "master seed");
  selftest->add_option("--threads", acc.threads, "worker threads, 0 = all cores");
  selftest->add_option("--n", acc.n, "Monte Carlo draws per estimate");
  selftest->add_option("--n-large", acc.n_large, "draws for the H = 10 centre check");
  selftest->add_option("--repeated-seeds", acc.repeated_seeds, "seeds in the variance comparison");
  selftest->add_option("--tau-batches", acc.tau_batches, "batches in the Kendall tau comparison");
  selftest->add_option("--out", acc_out, "directory for report.json, report.txt and grid artifacts");
  selftest->add_flag("--json", acc_json, "print the JSON report instead of the summary");
  selftest->callback([&] { action = [&] { return cmd_selftest(acc, acc_out, acc_json, out); }; });

  Overrides print_o;
  auto* print = app.add_subcommand("print-config", "print the effective configuration as JSON");
  add_model_options(print, print_o);
  add_sweep_options(print, print_o);
  add_output_options(print, print_o);
  print->callback([&] {
    action = [&] {
      out << to_json(print_o.resolve()).dump(2) << "\n";
      return kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace bnndep::cli
