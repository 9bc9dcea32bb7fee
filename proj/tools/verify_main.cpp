// verify: run identity suites from a scenario file and emit a report.
// Exit codes: 0 all suites pass, 1 any suite fails, 2 scenario error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mvx/errors.hpp"
#include "mvx/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"multivector/extensor calculus identity verifier"};

  std::string scenario_path;
  int points = -1;
  long long seed = -1;
  double tol_first = -1.0, tol_second = -1.0;
  std::string suites_csv;
  std::string format = "text";
  std::string out_path;
  bool serial = false;
  bool list_suites = false;

  app.add_option("--scenario", scenario_path, "scenario file to verify");
  app.add_option("--points", points, "sample points per suite (default 64)");
  app.add_option("--seed", seed, "RNG seed (default 42)");
  app.add_option("--tol-first", tol_first,
                 "tolerance for first-derivative identities (default 1e-9)");
  app.add_option("--tol-second", tol_second,
                 "tolerance for second-derivative identities (default 1e-7)");
  app.add_option("--suites", suites_csv,
                 "comma-separated suite ids, eq tags or groups");
  app.add_option("--format", format, "report format: json|text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out_path, "write the report to a file");
  app.add_flag("--serial", serial,
               "use the serial reference point loop instead of OpenMP");
  app.add_flag("--list-suites", list_suites, "list all suites and exit");

  CLI11_PARSE(app, argc, argv);

  if (list_suites) {
    for (const auto& s : mvx::suite_registry())
      std::cout << s.id << "\t" << s.eq << "\t" << s.group << "\ttol="
                << s.default_tol << "\n";
    return 0;
  }

  if (scenario_path.empty()) {
    std::cerr << "error: --scenario is required\n";
    return 2;
  }

  mvx::Report rep;
  try {
    mvx::Scenario sc = mvx::load_scenario_file(scenario_path);
    if (points > 0) sc.points = points;
    if (seed >= 0) sc.seed = static_cast<std::uint64_t>(seed);
    if (tol_first > 0) sc.tol_first = tol_first;
    if (tol_second > 0) sc.tol_second = tol_second;
    if (!suites_csv.empty()) {
      sc.suites.clear();
      std::string tok;
      std::istringstream ss(suites_csv);
      while (std::getline(ss, tok, ','))
        if (!tok.empty()) sc.suites.push_back(tok);
    }
    // validate the selection before running anything
    mvx::resolve_suites(sc, sc.suites);
    rep = mvx::run_suites(
        sc, serial ? mvx::ExecPolicy::Serial : mvx::ExecPolicy::OpenMP);
  } catch (const mvx::ParseError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 2;
  } catch (const mvx::StructuralError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::string doc =
      (format == "json") ? mvx::to_json(rep) : mvx::to_text(rep);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return 2;
    }
    out << doc;
  } else {
    std::cout << doc;
  }
  return rep.all_pass() ? 0 : 1;
}
