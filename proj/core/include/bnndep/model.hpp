#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "bnndep/errors.hpp"

namespace bnndep {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class Activation { kReLU, kIdentity, kTanh, kSigmoid, kELU };

struct ActivationKind {
  Activation type = Activation::kReLU;
  double elu_alpha = 1.0;  // only read for kELU

  static ActivationKind relu() { return {Activation::kReLU, 1.0}; }
  static ActivationKind identity() { return {Activation::kIdentity, 1.0}; }
  static ActivationKind tanh() { return {Activation::kTanh, 1.0}; }
  static ActivationKind sigmoid() { return {Activation::kSigmoid, 1.0}; }
  static ActivationKind elu(double alpha = 1.0) { return {Activation::kELU, alpha}; }

  friend bool operator==(const ActivationKind&, const ActivationKind&) = default;
};

std::string to_string(const ActivationKind& kind);
// Accepts "relu", "identity", "tanh", "sigmoid", "elu". Throws ConfigError.
ActivationKind parse_activation(std::string_view name, double elu_alpha = 1.0);

double apply_activation(const ActivationKind& kind, double x);
void apply_activation_inplace(const ActivationKind& kind, Eigen::Ref<Vector> values);

enum class PriorFamily { kGaussianIid, kGaussianEquicorrelated, kStudentT };
enum class ScaleMode { kFanIn, kFixed };

std::string to_string(PriorFamily family);
std::string to_string(ScaleMode mode);
PriorFamily parse_prior_family(std::string_view name);
ScaleMode parse_scale_mode(std::string_view name);

// Zero-centred elliptical law of one weight column (the fan-in weights of a
// single unit). Columns of a layer are independent draws.
//
// The column scatter matrix is
//   Sigma = s^2 [(1 - rho_w) I + rho_w 11^T]
// with s = sigma0 / sqrt(fan_in) under kFanIn and s = sigma0 under kFixed;
// rho_w is 0 unless the family is kGaussianEquicorrelated. For kStudentT a
// column is a Gaussian(0, Sigma) column times sqrt(nu / chi2_nu).
struct PriorSpec {
  PriorFamily family = PriorFamily::kGaussianIid;
  double rho_w = 0.0;
  double nu = 0.0;
  ScaleMode scale_mode = ScaleMode::kFanIn;
  double sigma0 = 1.0;

  static PriorSpec gaussian_iid(double sigma0 = 1.0, ScaleMode mode = ScaleMode::kFanIn);
  static PriorSpec gaussian_equicorrelated(double rho_w, double sigma0 = 1.0,
                                           ScaleMode mode = ScaleMode::kFanIn);
  static PriorSpec student_t(double nu, double sigma0 = 1.0, ScaleMode mode = ScaleMode::kFanIn);

  // Per-entry scale s for a column of length fan_in.
  double scale(std::size_t fan_in) const;
  // Off-diagonal correlation of the scatter matrix.
  double correlation() const { return family == PriorFamily::kGaussianEquicorrelated ? rho_w : 0.0; }
  // ||x||_Sigma = sqrt(x^T Sigma x) for a column of length x.size().
  double sigma_norm(std::span<const double> x) const;

  friend bool operator==(const PriorSpec&, const PriorSpec&) = default;
};

// Throws ConfigError unless `spec` defines a positive-definite law on R^fan_in.
void validate_prior(const PriorSpec& spec, std::size_t fan_in);

// Fully connected network without biases. widths[0] is the input dimension,
// widths[l] the width of hidden layer l (1 <= l <= depth).
struct NetworkConfig {
  std::size_t depth = 0;
  std::vector<std::size_t> widths;
  ActivationKind activation;
  std::vector<PriorSpec> priors;  // priors[l - 1] governs layer l

  std::size_t width(std::size_t layer) const { return widths.at(layer); }
  const PriorSpec& prior(std::size_t layer) const { return priors.at(layer - 1); }
};

// Returns `config` unchanged when it is well formed, throws ConfigError otherwise.
const NetworkConfig& validate_config(const NetworkConfig& config);

// pre[l - 1] and post[l - 1] hold g^(l) and h^(l); input holds h^(0).
struct LayerValues {
  Vector input;
  std::vector<Vector> pre;
  std::vector<Vector> post;

  const Vector& pre_at(std::size_t layer) const { return pre.at(layer - 1); }
  const Vector& post_at(std::size_t layer) const { return post.at(layer - 1); }
};

// g^(l) = W^(l)^T h^(l-1), h^(l) = phi(g^(l)). weights[l - 1] has shape
// widths[l - 1] x widths[l].
LayerValues forward(const NetworkConfig& config, std::span<const Matrix> weights, const Vector& input);

}  // namespace bnndep
