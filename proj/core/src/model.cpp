#include "bnndep/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace bnndep {

std::string to_string(const ActivationKind& kind) {
  switch (kind.type) {
    case Activation::kReLU: return "relu";
    case Activation::kIdentity: return "identity";
    case Activation::kTanh: return "tanh";
    case Activation::kSigmoid: return "sigmoid";
    case Activation::kELU: return "elu";
  }
  return "unknown";
}

ActivationKind parse_activation(std::string_view name, double elu_alpha) {
  if (name == "relu") return ActivationKind::relu();
  if (name == "identity") return ActivationKind::identity();
  if (name == "tanh") return ActivationKind::tanh();
  if (name == "sigmoid") return ActivationKind::sigmoid();
  if (name == "elu") {
    if (!(elu_alpha > 0.0)) throw ConfigError("ELU alpha must be positive");
    return ActivationKind::elu(elu_alpha);
  }
  throw ConfigError("unknown activation '" + std::string(name) + "'");
}

double apply_activation(const ActivationKind& kind, double x) {
  switch (kind.type) {
    case Activation::kReLU: return x > 0.0 ? x : 0.0;
    case Activation::kIdentity: return x;
    case Activation::kTanh: return std::tanh(x);
    case Activation::kSigmoid:
      // Split on sign so exp never overflows.
      if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
      else {
        const double e = std::exp(x);
        return e / (1.0 + e);
      }
    case Activation::kELU: return x >= 0.0 ? x : kind.elu_alpha * std::expm1(x);
  }
  return x;
}

void apply_activation_inplace(const ActivationKind& kind, Eigen::Ref<Vector> values) {
  switch (kind.type) {
    case Activation::kIdentity: return;
    case Activation::kReLU: values = values.cwiseMax(0.0); return;
    default:
      for (Eigen::Index i = 0; i < values.size(); ++i) values[i] = apply_activation(kind, values[i]);
  }
}

std::string to_string(PriorFamily family) {
  switch (family) {
    case PriorFamily::kGaussianIid: return "gaussian";
    case PriorFamily::kGaussianEquicorrelated: return "equicorrelated";
    case PriorFamily::kStudentT: return "student-t";
  }
  return "unknown";
}

std::string to_string(ScaleMode mode) { return mode == ScaleMode::kFanIn ? "fan-in" : "fixed"; }

PriorFamily parse_prior_family(std::string_view name) {
  if (name == "gaussian") return PriorFamily::kGaussianIid;
  if (name == "equicorrelated") return PriorFamily::kGaussianEquicorrelated;
  if (name == "student-t") return PriorFamily::kStudentT;
  throw ConfigError("unknown prior family '" + std::string(name) + "'");
}

ScaleMode parse_scale_mode(std::string_view name) {
  if (name == "fan-in") return ScaleMode::kFanIn;
  if (name == "fixed") return ScaleMode::kFixed;
  throw ConfigError("unknown scale mode '" + std::string(name) + "'");
}

PriorSpec PriorSpec::gaussian_iid(double sigma0, ScaleMode mode) {
  return {PriorFamily::kGaussianIid, 0.0, 0.0, mode, sigma0};
}

PriorSpec PriorSpec::gaussian_equicorrelated(double rho_w, double sigma0, ScaleMode mode) {
  return {PriorFamily::kGaussianEquicorrelated, rho_w, 0.0, mode, sigma0};
}

PriorSpec PriorSpec::student_t(double nu, double sigma0, ScaleMode mode) {
  return {PriorFamily::kStudentT, 0.0, nu, mode, sigma0};
}

double PriorSpec::scale(std::size_t fan_in) const {
  if (scale_mode == ScaleMode::kFixed) return sigma0;
  return sigma0 / std::sqrt(static_cast<double>(fan_in));
}

double PriorSpec::sigma_norm(std::span<const double> x) const {
  const double s = scale(x.size());
  double sq = 0.0;
  double sum = 0.0;
  for (double xi : x) {
    sq += xi * xi;
    sum += xi;
  }
  const double rho = correlation();
  double quad = sq;
  if (rho != 0.0) quad = (1.0 - rho) * sq + rho * sum * sum;
  // Positive definiteness keeps quad >= 0 up to rounding.
  return s * std::sqrt(quad > 0.0 ? quad : 0.0);
}

void validate_prior(const PriorSpec& spec, std::size_t fan_in) {
  if (!(spec.sigma0 > 0.0) || !std::isfinite(spec.sigma0)) {
    throw ConfigError("prior sigma0 must be positive and finite");
  }
  switch (spec.family) {
    case PriorFamily::kGaussianIid: break;
    case PriorFamily::kGaussianEquicorrelated: {
      // Eigenvalues of (1 - rho) I + rho 11^T are 1 - rho and 1 + (m - 1) rho.
      const double m = static_cast<double>(fan_in);
      const double rho = spec.rho_w;
      if (!std::isfinite(rho) || !(1.0 - rho > 0.0) || !(1.0 + (m - 1.0) * rho > 0.0) || !(rho > -1.0)) {
        throw ConfigError("equicorrelation " + std::to_string(rho) +
                          " is not positive definite for fan-in " + std::to_string(fan_in));
      }
      break;
    }
    case PriorFamily::kStudentT:
      if (!(spec.nu > 2.0) || !std::isfinite(spec.nu)) {
        throw ConfigError("student-t prior needs nu > 2");
      }
      break;
  }
}

const NetworkConfig& validate_config(const NetworkConfig& config) {
  if (config.depth < 1) throw ConfigError("network depth must be at least 1");
  if (config.widths.size() != config.depth + 1) {
    throw ConfigError("expected " + std::to_string(config.depth + 1) + " widths, got " +
                      std::to_string(config.widths.size()));
  }
  if (config.priors.size() != config.depth) {
    throw ConfigError("expected " + std::to_string(config.depth) + " priors, got " +
                      std::to_string(config.priors.size()));
  }
  for (std::size_t w : config.widths) {
    if (w < 1) throw ConfigError("layer widths must be positive");
  }
  if (config.activation.type == Activation::kELU && !(config.activation.elu_alpha > 0.0)) {
    throw ConfigError("ELU alpha must be positive");
  }
  for (std::size_t layer = 1; layer <= config.depth; ++layer) {
    validate_prior(config.prior(layer), config.width(layer - 1));
  }
  return config;
}

LayerValues forward(const NetworkConfig& config, std::span<const Matrix> weights, const Vector& input) {
  if (weights.size() != config.depth) {
    throw DimensionError("expected " + std::to_string(config.depth) + " weight matrices");
  }
  if (config.widths.size() != config.depth + 1) throw DimensionError("widths do not match depth");
  if (static_cast<std::size_t>(input.size()) != config.widths[0]) {
    throw DimensionError("input length does not match widths[0]");
  }
  LayerValues values;
  values.input = input;
  values.pre.reserve(config.depth);
  values.post.reserve(config.depth);
  const Vector* previous = &values.input;
  for (std::size_t layer = 1; layer <= config.depth; ++layer) {
    const Matrix& w = weights[layer - 1];
    if (static_cast<std::size_t>(w.rows()) != config.widths[layer - 1] ||
        static_cast<std::size_t>(w.cols()) != config.widths[layer]) {
      throw DimensionError("weight matrix for layer " + std::to_string(layer) + " has wrong shape");
    }
    Vector g = w.transpose() * *previous;
    Vector h = g;
    apply_activation_inplace(config.activation, h);
    values.pre.push_back(std::move(g));
    values.post.push_back(std::move(h));
    previous = &values.post.back();
  }
  return values;
}

}  // namespace bnndep
