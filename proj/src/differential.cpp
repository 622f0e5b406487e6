#include "multcalc/differential.hpp"

namespace multcalc {

LimitResidual diff_limit_residual(const GroupDiffOperator<Unipotent<double>>& op, const Unipotent<double>& a,
                                  const Unipotent<double>& b, const Schedule& schedule) {
  const Unipotent<double> da = op(a);
  const Unipotent<double> db = op(b);
  const Unipotent<double> a_inv = inverse(a);
  LimitResidual r;
  r.report = run_schedule(schedule, [&](std::int64_t n) {
    const double s = 1.0 / static_cast<double>(n);
    const Unipotent<double> inner = mul(mul(mul(power_real(da, s), a), power_real(db, s)), a_inv);
    return power_int(inner, n).matrix();
  });
  if (!Unipotent<double>::is_unipotent(r.report.extrapolated))
    throw DomainError("diff_limit_residual: extrapolated limit left the unipotent group");
  r.residual = make_residual(op(mul(a, b)), Unipotent<double>::unchecked(r.report.extrapolated));
  return r;
}

}  // namespace multcalc
