#include "adsdeform/config.hpp"

#include <cmath>
#include <cstdio>

namespace adsdeform {

void validate(const RunConfig& c) {
  if (!std::isfinite(c.theta) || c.theta == 0) throw ConfigError("theta must be finite and nonzero");
  if (c.grid < 8) throw ConfigError("grid must be >= 8");
  if (c.refine_grid <= c.grid) throw ConfigError("refine_grid must exceed grid");
  if (c.covariance_grid < 8) throw ConfigError("covariance_grid must be >= 8");
  if (c.samples < 1 || c.metric_samples < 1 || c.causal_samples < 1) throw ConfigError("sample counts must be positive");
  if (!(std::abs(c.alpha) < 1)) throw ConfigError("|alpha| must be < 1");
  if (!(c.mass > 0) || !(c.mass > std::abs(c.spin))) throw ConfigError("need mass > |spin|");
}

nlohmann::json to_json(const RunConfig& c) {
  return {{"theta", c.theta},
          {"grid", c.grid},
          {"refine_grid", c.refine_grid},
          {"covariance_grid", c.covariance_grid},
          {"samples", c.samples},
          {"metric_samples", c.metric_samples},
          {"causal_samples", c.causal_samples},
          {"seed", c.seed},
          {"mass", c.mass},
          {"spin", c.spin},
          {"alpha", c.alpha}};
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string config_hash(const RunConfig& c) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_json(c).dump())));
  return buf;
}

}  // namespace adsdeform
