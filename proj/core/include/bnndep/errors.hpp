#pragma once

#include <stdexcept>
#include <string>

namespace bnndep {

// Invalid network, prior or sweep configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Vector/matrix shapes or indices that do not fit the configuration.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Estimator called on data it cannot handle (too few samples, constant ranks, ...).
class EstimationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace bnndep
