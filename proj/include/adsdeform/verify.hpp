#pragma once
// Acceptance suites. Each criterion is a list of measured values against pinned bounds.

#include <string>
#include <vector>

#include "adsdeform/config.hpp"
#include "json.hpp"

namespace adsdeform {

enum class Relation { BELOW, ABOVE, EQUAL };

struct Check {
  std::string name;
  double value = 0;
  Relation rel = Relation::BELOW;
  double bound = 0;
  bool pass() const;
};

struct Criterion {
  int id = 0;
  std::string suite;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> info;  // measured, not gated
  bool pass() const;
};

// Suite names in criterion order: group metric causal bfield torus symsym star udf spectral repro.
const std::vector<std::string>& suite_names();
// Criteria selected by a suite name or "all". Throws ConfigError for unknown names.
std::vector<int> criteria_for(const std::string& suite);

Criterion run_criterion(int id, const RunConfig& cfg);
// Criteria 1-9 as selected; "all" also reruns them with another worker count and appends criterion 10.
std::vector<Criterion> run_suite(const std::string& suite, const RunConfig& cfg);

// Criteria whose failure is analysed as unattainable.
const std::vector<int>& documented_red();

nlohmann::json tolerance_table();
nlohmann::json to_json(const Criterion& c);
nlohmann::json to_json(const std::vector<Criterion>& cs);
// Version, config, config hash and tolerance table around a result.
nlohmann::json envelope(const std::string& command, const RunConfig& cfg, nlohmann::json result);

}  // namespace adsdeform
