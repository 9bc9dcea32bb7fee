#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvx/field.hpp"

namespace mvx {

// A verification scenario: chart, structure fields, and the suites to run.
// Parsed from the line-oriented `key = value` format with [metric],
// [connection], [fields], [chart_map] and [suites] sections.
struct Scenario {
  std::string name = "scenario";
  int dim = 0;
  Chart chart;

  std::optional<XF> metric_table;
  int sig_p = -1, sig_q = -1;

  bool levi_civita_requested = false;
  std::optional<std::vector<Expr>> gamma_table;  // n^3, [lam][mu][nu]

  std::optional<std::vector<Expr>> chart_map_fwd;

  std::vector<std::pair<std::string, MF>> fields;

  std::vector<std::string> suites;  // ids, eq tags or group names

  int points = 64;
  std::uint64_t seed = 42;
  double tol_first = 1e-9;
  double tol_second = 1e-7;
  std::map<std::string, double> tol_override;  // keyed by eq tag
  bool expect_flat = false;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);

}  // namespace mvx
