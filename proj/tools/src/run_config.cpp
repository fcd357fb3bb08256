#include "bnndep_cli/run_config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "bnndep/errors.hpp"

namespace bnndep::cli {
namespace {

using Json = nlohmann::json;

void reject_unknown(const Json& object, std::string_view where, std::initializer_list<std::string_view> known) {
  if (!object.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  for (const auto& [key, value] : object.items()) {
    bool found = false;
    for (auto k : known) found = found || k == key;
    if (!found) throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const Json& object, const char* key, T& target) {
  if (!object.contains(key)) return;
  try {
    target = object.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

std::size_t read_count(const Json& value, const char* key) {
  if (!value.is_number_unsigned()) throw ConfigError(std::string("config key '") + key + "': expected a non-negative integer");
  return value.get<std::size_t>();
}

}  // namespace

nlohmann::ordered_json to_json(const RunConfig& config) {
  const SweepSpec& s = config.sweep;
  nlohmann::ordered_json doc;
  doc["depths"] = s.depths;
  doc["widths"] = s.widths;
  doc["input_dim"] = s.input_dim;
  doc["n"] = s.n;
  doc["grid"] = {{"min", s.grid.min}, {"max", s.grid.max}, {"steps", s.grid.steps}};
  doc["activation"] = to_string(s.activation);
  doc["elu_alpha"] = s.activation.elu_alpha;
  doc["prior"] = {{"family", to_string(s.prior.family)},
                  {"sigma0", s.prior.sigma0},
                  {"scale_mode", to_string(s.prior.scale_mode)},
                  {"rho_w", s.prior.rho_w},
                  {"nu", s.prior.nu}};
  doc["tap"] = to_string(s.tap);
  doc["tail"] = to_string(s.tail);
  doc["seed"] = s.master_seed;
  doc["threads"] = s.threads;
  doc["output"] = {{"dir", config.output_dir},
                   {"svg", config.write_svg},
                   {"color_limit", config.color_limit ? nlohmann::ordered_json(*config.color_limit) : nlohmann::ordered_json(nullptr)}};
  return doc;
}

RunConfig run_config_from_json(const Json& doc) {
  reject_unknown(doc, "config", {"depths", "widths", "input_dim", "n", "grid", "activation", "elu_alpha", "prior",
                                 "tap", "tail", "seed", "threads", "output"});
  RunConfig config;
  SweepSpec& s = config.sweep;

  for (const char* key : {"depths", "widths"}) {
    if (!doc.contains(key)) continue;
    const Json& list = doc.at(key);
    if (!list.is_array()) throw ConfigError(std::string("config key '") + key + "': expected an array");
    std::vector<std::size_t> values;
    for (const auto& v : list) values.push_back(read_count(v, key));
    (std::string_view(key) == "depths" ? s.depths : s.widths) = values;
  }
  if (doc.contains("input_dim")) s.input_dim = read_count(doc.at("input_dim"), "input_dim");
  if (doc.contains("n")) s.n = read_count(doc.at("n"), "n");
  if (doc.contains("threads")) s.threads = read_count(doc.at("threads"), "threads");
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) throw ConfigError("config key 'seed': expected a non-negative integer");
    s.master_seed = doc.at("seed").get<std::uint64_t>();
  }

  if (doc.contains("grid")) {
    const Json& grid = doc.at("grid");
    reject_unknown(grid, "grid", {"min", "max", "steps"});
    read(grid, "min", s.grid.min);
    read(grid, "max", s.grid.max);
    if (grid.contains("steps")) s.grid.steps = read_count(grid.at("steps"), "steps");
  }

  std::string activation = to_string(s.activation);
  double alpha = s.activation.elu_alpha;
  read(doc, "activation", activation);
  read(doc, "elu_alpha", alpha);
  s.activation = parse_activation(activation, alpha);

  if (doc.contains("prior")) {
    const Json& prior = doc.at("prior");
    reject_unknown(prior, "prior", {"family", "sigma0", "scale_mode", "rho_w", "nu"});
    std::string family = to_string(s.prior.family);
    std::string mode = to_string(s.prior.scale_mode);
    read(prior, "family", family);
    read(prior, "scale_mode", mode);
    read(prior, "sigma0", s.prior.sigma0);
    read(prior, "rho_w", s.prior.rho_w);
    read(prior, "nu", s.prior.nu);
    s.prior.family = parse_prior_family(family);
    s.prior.scale_mode = parse_scale_mode(mode);
  }

  std::string tap = to_string(s.tap);
  std::string tail = to_string(s.tail);
  read(doc, "tap", tap);
  read(doc, "tail", tail);
  s.tap = parse_tap(tap);
  s.tail = parse_tail(tail);

  if (doc.contains("output")) {
    const Json& output = doc.at("output");
    reject_unknown(output, "output", {"dir", "svg", "color_limit"});
    read(output, "dir", config.output_dir);
    read(output, "svg", config.write_svg);
    if (output.contains("color_limit") && !output.at("color_limit").is_null()) {
      double limit = 0.0;
      read(output, "color_limit", limit);
      config.color_limit = limit;
    }
  }
  if (config.color_limit && !(*config.color_limit > 0.0)) throw ConfigError("color_limit must be positive");
  s.validate();
  validate_prior(s.prior, s.input_dim);
  for (std::size_t w : s.widths) validate_prior(s.prior, w);
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  return run_config_from_json(doc);
}

}  // namespace bnndep::cli
