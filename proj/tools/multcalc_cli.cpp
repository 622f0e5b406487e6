// multcalc: runs one JSON job (file argument or stdin) or a named scenario.

#include "multcalc/jobs.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

using multcalc::json;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw multcalc::SpecError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool env_rational() {
  const char* v = std::getenv("MULTCALC_RATIONAL");
  return v != nullptr && std::string(v) == "1";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Product integrals, multiplicative derivatives and Rota-Baxter checks on matrix groups"};
  std::string input;
  std::string scenario;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool timing = false;
  bool list = false;
  app.add_option("input", input, "Job spec file; '-' or omitted reads stdin");
  app.add_option("--scenario", scenario, "Run a named bundle instead of a job file");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "Override the job seed");
  app.add_option("--tol", tol, "Override the job tolerance");
  app.add_flag("--timing", timing, "Add wall time to the report");
  app.add_flag("--list-scenarios", list, "Print scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : multcalc::kSpecErrorExit;
  }

  if (list) {
    for (const auto& n : multcalc::scenario_names()) std::cout << n << "\n";
    return 0;
  }

  multcalc::RunOptions opts;
  opts.rational = env_rational();
  opts.seed = seed;
  opts.tol = tol;

  const auto start = std::chrono::steady_clock::now();
  json report;
  multcalc::JobStatus status = multcalc::JobStatus::pass;
  std::vector<multcalc::Table> tables;
  try {
    if (!scenario.empty()) {
      if (!input.empty()) throw multcalc::SpecError("give either a job file or --scenario, not both");
      auto r = multcalc::run_scenario(scenario, opts);
      report = std::move(r.report);
      status = r.status;
      tables = std::move(r.tables);
    } else {
      json spec;
      try {
        spec = json::parse(read_input(input));
      } catch (const json::parse_error& e) {
        throw multcalc::SpecError(std::string("invalid JSON: ") + e.what());
      }
      auto r = multcalc::run_job(spec, opts);
      report = std::move(r.report);
      status = r.status;
      tables = std::move(r.tables);
    }
  } catch (const multcalc::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return multcalc::kSpecErrorExit;
  }

  if (format == "csv") {
    std::cout << multcalc::tables_to_csv(tables);
  } else {
    if (timing) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
      report["wall_time_s"] = dt.count();
    }
    std::cout << report.dump(2) << "\n";
  }
  return multcalc::exit_code(status);
}
