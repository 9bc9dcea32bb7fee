#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mvx {

inline constexpr const char* kToolVersion = "0.1.0";

struct SuiteResult {
  std::string id;
  std::string eq;
  int points = 0;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string error;  // empty unless evaluation failed
};

struct Report {
  std::uint64_t seed = 0;
  std::string version = kToolVersion;
  std::vector<std::pair<std::string, std::string>> conventions;
  std::vector<SuiteResult> suites;

  bool all_pass() const;
};

std::string to_json(const Report& r);
std::string to_text(const Report& r);
Report report_from_json(const std::string& text);

bool operator==(const SuiteResult& a, const SuiteResult& b);
bool operator==(const Report& a, const Report& b);

}  // namespace mvx
