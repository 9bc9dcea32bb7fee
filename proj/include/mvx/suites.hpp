#pragma once

#include <string>
#include <vector>

#include "mvx/report.hpp"
#include "mvx/scenario.hpp"

namespace mvx {

// Point loop execution: Serial is the reference implementation, OpenMP the
// parallel kernel. Both produce bit-identical reports (the per-point max
// reduction is order-independent).
enum class ExecPolicy { Serial, OpenMP };

struct SuiteInfo {
  std::string id;
  std::string eq;
  std::string group;
  double default_tol;
};

const std::vector<SuiteInfo>& suite_registry();

// Resolves scenario/CLI suite tokens (ids, eq tags, group names, "all")
// into registry ids in registry order. Throws ParseError on unknown tokens
// or suites whose prerequisites the scenario cannot satisfy.
std::vector<std::string> resolve_suites(const Scenario& sc,
                                        const std::vector<std::string>& tokens);

Report run_suites(const Scenario& sc, ExecPolicy policy);

// Scale-free residual used everywhere: max |lhs - rhs| blade coefficient
// over (1 + max coefficient magnitude of either side).
double residual_value(const Multivector& lhs, const Multivector& rhs);

}  // namespace mvx
