#pragma once
// Run configuration shared by every subcommand, and the envelope that makes outputs reproducible.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace adsdeform {

inline constexpr const char* kVersion = "adsdeform 0.4.0";

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  double theta = 1;
  int grid = 24;             // star grid points across [-2, 2]
  int refine_grid = 48;      // one refinement for convergence orders
  int covariance_grid = 36;  // shifted-grid comparisons need the finer grid
  int samples = 1000;        // random points per group-suite check
  int metric_samples = 100;
  int causal_samples = 10000;
  std::uint64_t seed = 20261019;
  double mass = 1.3;
  double spin = 0.6;
  double alpha = 0.95;  // bound on |alpha| when sampling modified-Iwasawa parameters
  std::string out;      // empty: stdout
};

// Throws ConfigError naming the offending key.
void validate(const RunConfig& c);
nlohmann::json to_json(const RunConfig& c);

std::uint64_t fnv1a64(const std::string& bytes);
// Hash of the canonical JSON serialization, as 16 hex digits.
std::string config_hash(const RunConfig& c);

}  // namespace adsdeform
