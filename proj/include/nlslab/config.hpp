#pragma once

// Experiment configuration: one JSON document, validated against a fixed key
// set before any run, with environment overrides for output and threads.

#include "nlslab/error.hpp"
#include "nlslab/ode.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nlslab {

struct ExperimentConfig {
  std::string omega = "sqrt:2";
  std::string profile = "log:1";
  int N = 3;
  double s = 2;
  double delta = 1e-2;
  std::uint64_t seed = 1;
  std::int64_t box = 0;
  std::int64_t p = 1, q = 1;
  std::optional<std::string> set;  // lambda-set JSON; built from N/seed/box otherwise
  std::vector<double> ladder{4, 8, 16};
  double T0 = 1;
  std::string truncation = "lambda_closure:1";  // or "box:M"
  IntegratorConfig tolerances{1e-10, 1e-10};
  std::size_t depth = 20;
  double t_end = 10;
  std::size_t samples = 256;
  std::size_t stride = 1;
  CVec b0;
  bool nonlinear = true;
  bool conjugate = true;
  std::string C = "1000000";
  std::string mu = "1";
  std::string epsilon = "0";
  std::string alpha = "10", K = "1", eta_tilde = "1/10", sigma = "1";
  std::optional<std::string> gamma;
  std::string output = "out";
  int threads = 0;  // 0: OpenMP default
};

/// Config error on malformed JSON, unknown keys or wrong types.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Applies key=value, with value read as JSON (bare words as strings).
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

/// NLSLAB_OUTPUT_DIR and NLSLAB_THREADS.
void apply_environment(ExperimentConfig& cfg);

nlohmann::ordered_json to_json(const ExperimentConfig& cfg);

/// FNV-1a of the canonical JSON form, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

/// config = 2, numeric = 3, search = 4, precision = 5; 1 for anything else.
int exit_code(ErrorKind kind);

}  // namespace nlslab
