#pragma once

#include "multcalc/matrix.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace multcalc {

/// Doubling schedule n = 2^k for k in [kmin, kmax].
struct Schedule {
  int kmin = 2;
  int kmax = 12;
  double tol = 1e-6;
  /// Consecutive deltas must satisfy d_{k+1} <= decay * d_k over the last three levels.
  double decay = 1.0;

  void validate() const;
};

/// Iterates of a refinement process together with its convergence diagnostics.
struct ConvergenceReport {
  std::vector<std::int64_t> ns;
  std::vector<MatD> values;
  /// deltas[k] = ||values[k+1] - values[k]||_F
  std::vector<double> deltas;
  /// First-order Richardson extrapolation 2 v_last - v_prev.
  MatD extrapolated;
  /// Mean of log2(d_k / d_{k+1}) over the last three ratios; NaN if undefined.
  double order = 0.0;
  bool converged = false;

  double final_delta() const { return deltas.empty() ? 0.0 : deltas.back(); }
  const MatD& last() const { return values.back(); }
};

/// Runs value_at(n) for n = 2^kmin .. 2^kmax and fills in the diagnostics.
ConvergenceReport run_schedule(const Schedule& schedule, const std::function<MatD(std::int64_t)>& value_at);

/// Builds a report from precomputed iterates.
ConvergenceReport make_report(const Schedule& schedule, std::vector<std::int64_t> ns, std::vector<MatD> values);

/// Mean of log2(e_k / e_{k+1}) over the last `count` consecutive pairs; NaN
/// when any ratio involves a zero or non-finite value.
double mean_log2_ratio(const std::vector<double>& errors, int count);

enum class SampleRule { right, left, midpoint };

std::string to_string(SampleRule rule);

/// Uniform partition of [lo, hi] into n cells.
struct Partition {
  double lo = 0.0;
  double hi = 1.0;
  std::int64_t n = 1;
  SampleRule rule = SampleRule::right;

  Partition(double lo, double hi, std::int64_t n, SampleRule rule = SampleRule::right);

  double mesh() const { return (hi - lo) / static_cast<double>(n); }
  double node(std::int64_t k) const;
  /// Evaluation point in cell k (1-based, cell k is [t_{k-1}, t_k]).
  double tag(std::int64_t k) const;
};

}  // namespace multcalc
