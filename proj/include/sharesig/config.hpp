#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sharesig/distribution.hpp"
#include "sharesig/kernels/draw.hpp"
#include "sharesig/model.hpp"

namespace sharesig {

/// Parse failure with the offending line (1-based, 0 if not line-bound)
/// and key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line, std::string key)
      : std::runtime_error(what), line_(line), key_(std::move(key)) {}
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

/// Serializable description of a Distribution.
struct DistributionSpec {
  std::string kind = "uniform";  // uniform | beta | piecewise | point
  double a = 0.0, b = 1.0;       // uniform
  double alpha = 1.0, beta = 1.0;
  double x = 0.5;                // point
  std::vector<double> knots_x, knots_y;

  Distribution make() const;
};

struct SweepAxis {
  std::string name;  // a ModelParams field
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  std::vector<double> values() const;
};

struct SimulationBlock {
  bool present = false;
  std::uint64_t n_draws = 1'000'000;
  std::uint64_t seed = 1;
  kernels::Isa isa = kernels::Isa::Auto;
};

struct ExperimentConfig {
  Regime regime = Regime::Ability;
  bool override_regime = false;
  ModelParams params;
  DistributionSpec F_S;                // default Uniform(0, 1)
  std::optional<DistributionSpec> F_R; // default: point mass at p_R
  std::vector<SweepAxis> sweep;        // applied in order, last axis fastest
  SimulationBlock simulation;
  std::optional<double> tol;
  std::string output;

  DistributionSpec receiver_spec() const;
};

/// Known parameter names, in ModelParams order.
const std::vector<std::string>& param_names();
double& param_ref(ModelParams& p, std::string_view name);
double param_value(const ModelParams& p, std::string_view name);

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace sharesig
