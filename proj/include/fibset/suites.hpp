#pragma once

// Exhaustive verification suites over a finite list of groups, and the
// report document they produce.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fibset {

struct RunConfig {
  std::vector<std::string> groups{"cyclic:1", "cyclic:2", "cyclic:3", "klein4", "symmetric:3"};
  // Middle groups for the triple-indexed subcharacter suites (prop43, cocycle,
  // thm44); empty means `groups`.
  std::vector<std::string> middle_groups{"cyclic:2", "cyclic:3", "klein4"};
  std::string fiber = "z2";
  std::string ell = "generic";
  std::size_t max_order = 64;
  std::uint64_t seed = 1;
  std::vector<std::string> suites;  // empty means all
  bool timing = false;
};

const std::vector<std::string>& suite_names();

RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
nlohmann::json config_to_json(const RunConfig& c);

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::map<std::string, std::size_t> parts;  // checks by named part, when a suite splits them
  std::optional<std::string> skipped;       // reason, when refused
  std::optional<nlohmann::json> witness;    // first violation
  double millis = 0;
  bool passed() const { return violations == 0 && !skipped; }
};

struct Report {
  RunConfig config;
  std::vector<SuiteResult> suites;
  bool passed() const;
  // Skipped suites do not count as violations.
  bool any_violation() const;
};

// Throws std::invalid_argument on an unknown suite name or an unparseable spec.
SuiteResult run_suite(const std::string& name, const RunConfig& config);
Report run_suites(const RunConfig& config);

nlohmann::json report_to_json(const Report& r);

}  // namespace fibset
