#pragma once

// JSON job specs, their dispatch, and named scenario bundles.

#include "multcalc/json_io.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace multcalc {

enum class JobStatus { pass, fail, non_convergent };

std::string to_string(JobStatus s);
/// 0 pass, 1 fail, 2 non-convergent.
int exit_code(JobStatus s);
inline constexpr int kSpecErrorExit = 3;

struct RunOptions {
  /// Exact rational arithmetic for the closed-form engines.
  bool rational = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

using Table = std::pair<std::string, ConvergenceReport>;

struct JobResult {
  json report;
  JobStatus status = JobStatus::pass;
  /// Status matches the job's "expect" field (default "pass").
  bool as_expected = true;
  std::vector<Table> tables;
};

/// Validates and runs one job. Throws SpecError on malformed input.
JobResult run_job(const json& spec, const RunOptions& opts);

struct ScenarioResult {
  json report;
  JobStatus status = JobStatus::pass;
  std::vector<Table> tables;
};

std::vector<std::string> scenario_names();
/// The job list of a named bundle. Throws SpecError for unknown names.
json scenario_jobs(const std::string& name);
/// Runs a bundle in declared order. A job counts as passing when its status
/// matches its "expect" field.
ScenarioResult run_scenario(const std::string& name, const RunOptions& opts);

/// One block per table: a "# label" line, then n,value_frobnorm,delta,order_est.
std::string tables_to_csv(const std::vector<Table>& tables);

}  // namespace multcalc
