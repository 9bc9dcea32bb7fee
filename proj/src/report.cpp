#include "mvx/report.hpp"

#include <sstream>

#include <json.hpp>

namespace mvx {

using json = nlohmann::ordered_json;

bool Report::all_pass() const {
  for (const auto& s : suites)
    if (!s.pass) return false;
  return true;
}

std::string to_json(const Report& r) {
  json j;
  j["header"]["seed"] = r.seed;
  j["header"]["version"] = r.version;
  json conv = json::object();
  for (const auto& [k, v] : r.conventions) conv[k] = v;
  j["header"]["conventions"] = conv;
  j["suites"] = json::array();
  for (const auto& s : r.suites) {
    json e;
    e["id"] = s.id;
    e["eq"] = s.eq;
    e["points"] = s.points;
    e["max_residual"] = s.max_residual;
    e["tol"] = s.tol;
    e["pass"] = s.pass;
    if (!s.error.empty()) e["error"] = s.error;
    j["suites"].push_back(e);
  }
  return j.dump(2) + "\n";
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  os << "# seed=" << r.seed << " version=" << r.version << "\n";
  for (const auto& s : r.suites) {
    os << (s.pass ? "PASS" : "FAIL") << " " << s.eq << " [" << s.id << "]"
       << " points=" << s.points << " max_residual=" << s.max_residual
       << " tol=" << s.tol;
    if (!s.error.empty()) os << " error=\"" << s.error << "\"";
    os << "\n";
  }
  return os.str();
}

Report report_from_json(const std::string& text) {
  json j = json::parse(text);
  Report r;
  r.seed = j.at("header").at("seed").get<std::uint64_t>();
  r.version = j.at("header").at("version").get<std::string>();
  for (auto it = j.at("header").at("conventions").begin();
       it != j.at("header").at("conventions").end(); ++it)
    r.conventions.push_back({it.key(), it.value().get<std::string>()});
  for (const auto& e : j.at("suites")) {
    SuiteResult s;
    s.id = e.at("id").get<std::string>();
    s.eq = e.at("eq").get<std::string>();
    s.points = e.at("points").get<int>();
    s.max_residual = e.at("max_residual").get<double>();
    s.tol = e.at("tol").get<double>();
    s.pass = e.at("pass").get<bool>();
    if (e.contains("error")) s.error = e.at("error").get<std::string>();
    r.suites.push_back(s);
  }
  return r;
}

bool operator==(const SuiteResult& a, const SuiteResult& b) {
  return a.id == b.id && a.eq == b.eq && a.points == b.points &&
         a.max_residual == b.max_residual && a.tol == b.tol &&
         a.pass == b.pass && a.error == b.error;
}

bool operator==(const Report& a, const Report& b) {
  return a.seed == b.seed && a.version == b.version &&
         a.conventions == b.conventions && a.suites == b.suites;
}

}  // namespace mvx
