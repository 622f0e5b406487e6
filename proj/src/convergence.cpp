#include "multcalc/convergence.hpp"

#include <cmath>
#include <limits>

namespace multcalc {

void Schedule::validate() const {
  if (kmin < 0 || kmax > 24 || kmin >= kmax) throw DomainError("schedule: need 0 <= kmin < kmax <= 24");
  if (!(tol > 0.0)) throw DomainError("schedule: tolerance must be positive");
  if (!(decay > 0.0)) throw DomainError("schedule: decay factor must be positive");
}

double mean_log2_ratio(const std::vector<double>& errors, int count) {
  const int n = static_cast<int>(errors.size());
  if (n < count + 1) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (int k = n - count - 1; k < n - 1; ++k) {
    const double a = errors[k];
    const double b = errors[k + 1];
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
      return std::numeric_limits<double>::quiet_NaN();
    sum += std::log2(a / b);
  }
  return sum / count;
}

ConvergenceReport make_report(const Schedule& schedule, std::vector<std::int64_t> ns, std::vector<MatD> values) {
  ConvergenceReport r;
  r.ns = std::move(ns);
  r.values = std::move(values);
  const int m = static_cast<int>(r.values.size());
  for (int k = 0; k + 1 < m; ++k) r.deltas.push_back(frobenius_distance(r.values[k + 1], r.values[k]));

  if (m >= 2) {
    r.extrapolated = 2.0 * r.values[m - 1] - r.values[m - 2];
  } else if (m == 1) {
    r.extrapolated = r.values[0];
  }
  r.order = mean_log2_ratio(r.deltas, 3);

  if (r.deltas.empty()) {
    r.converged = false;
    return r;
  }
  // Deltas at rounding level count as settled regardless of their ordering.
  const double scale = std::max(1.0, r.values.back().norm());
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  bool monotone = true;
  const int nd = static_cast<int>(r.deltas.size());
  for (int k = std::max(0, nd - 3); k + 1 < nd; ++k) {
    const double a = r.deltas[k];
    const double b = r.deltas[k + 1];
    if (b <= floor) continue;
    if (!(b <= schedule.decay * a)) monotone = false;
  }
  r.converged = std::isfinite(r.final_delta()) && r.final_delta() <= schedule.tol && monotone;
  return r;
}

ConvergenceReport run_schedule(const Schedule& schedule, const std::function<MatD(std::int64_t)>& value_at) {
  schedule.validate();
  std::vector<std::int64_t> ns;
  std::vector<MatD> values;
  for (int k = schedule.kmin; k <= schedule.kmax; ++k) {
    const std::int64_t n = std::int64_t{1} << k;
    ns.push_back(n);
    values.push_back(value_at(n));
  }
  return make_report(schedule, std::move(ns), std::move(values));
}

std::string to_string(SampleRule rule) {
  switch (rule) {
    case SampleRule::right: return "right";
    case SampleRule::left: return "left";
    case SampleRule::midpoint: return "midpoint";
  }
  return "unknown";
}

Partition::Partition(double lo_, double hi_, std::int64_t n_, SampleRule rule_)
    : lo(lo_), hi(hi_), n(n_), rule(rule_) {
  if (n < 1) throw DomainError("partition: cell count must be positive");
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) throw DomainError("partition: need finite lo <= hi");
}

double Partition::node(std::int64_t k) const {
  if (k == n) return hi;
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n);
}

double Partition::tag(std::int64_t k) const {
  switch (rule) {
    case SampleRule::right: return node(k);
    case SampleRule::left: return node(k - 1);
    case SampleRule::midpoint: return 0.5 * (node(k - 1) + node(k));
  }
  return node(k);
}

}  // namespace multcalc
