#include "multcalc/calculus.hpp"

#include <cmath>
#include <limits>

namespace multcalc {

IbpNumericResult ibp_check_numeric(const PolyPath<double>& a, const PolyPath<double>& b, double x,
                                   const Schedule& schedule) {
  require_class_two(a, "ibp_check");
  PolyPath<double>::check_dims(a, b);
  if (x < 0.0) throw DomainError("ibp_check: x must be non-negative");

  std::vector<std::int64_t> ns;
  std::vector<MatD> lhs_values, rhs_values;
  schedule.validate();
  for (int k = schedule.kmin; k <= schedule.kmax; ++k) {
    const std::int64_t n = std::int64_t{1} << k;
    const Partition p(0.0, x, n);
    const double dt = p.mesh();
    MatD fa = MatD::Identity(3, 3);
    MatD fb = MatD::Identity(3, 3);
    MatD rhs = MatD::Identity(3, 3);
    for (std::int64_t j = 1; j <= n; ++j) {
      const double t = p.tag(j);
      const NilMat<double> at = a(t);
      const NilMat<double> bt = b(t);
      fa = exp_nilpotent(dt * at).matrix() * fa;
      fb = exp_nilpotent(dt * bt).matrix() * fb;
      const Unipotent<double> g = Unipotent<double>::unchecked(fa);
      const NilMat<double> w = at + adjoint(g, bt);
      rhs = exp_nilpotent(dt * w).matrix() * rhs;
    }
    ns.push_back(n);
    lhs_values.push_back(fa * fb);
    rhs_values.push_back(rhs);
  }
  IbpNumericResult r;
  r.lhs = make_report(schedule, ns, std::move(lhs_values));
  r.rhs = make_report(schedule, ns, std::move(rhs_values));
  r.residual = frobenius_distance(r.lhs.extrapolated, r.rhs.extrapolated);
  return r;
}

MatD trotter_pair(const Unipotent<double>& a, const Unipotent<double>& b, std::int64_t n) {
  const double r = 1.0 / static_cast<double>(n);
  return power_int(mul(power_real(a, r), power_real(b, r)), n).matrix();
}

SyncResult synchronized_limit_check(const PairMap& f, const Unipotent<double>& a, const Unipotent<double>& b,
                                    double delta, const NilMat<double>& r, const Schedule& schedule) {
  SyncResult out;
  out.report = run_schedule(schedule, [&](std::int64_t n) {
    const NilMat<double> step = (delta / static_cast<double>(n)) * r;
    const Unipotent<double> an = mul(a, exp_nilpotent(step));
    const Unipotent<double> bn = mul(b, exp_nilpotent(step));
    return MatD(f(a, b, n) - f(an, bn, n));
  });
  for (const MatD& v : out.report.values) out.deviations.push_back(v.norm());
  out.order = mean_log2_ratio(out.deviations, 3);

  const double floor = 64.0 * std::numeric_limits<double>::epsilon();
  bool monotone = true;
  const int m = static_cast<int>(out.deviations.size());
  for (int k = std::max(0, m - 3); k + 1 < m; ++k)
    if (out.deviations[k + 1] > floor && out.deviations[k + 1] > out.deviations[k]) monotone = false;
  out.passed = monotone && out.deviations.back() <= schedule.tol;
  return out;
}

}  // namespace multcalc
