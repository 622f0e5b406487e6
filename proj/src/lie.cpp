#include "multcalc/lie.hpp"

namespace multcalc {

LimitResidual rb_lie_residual_limit(const LieOperator<double>& b, const NilMat<double>& u, const NilMat<double>& v,
                                    const Schedule& schedule) {
  const NilMat<double> bu = b(u);
  const NilMat<double> bv = b(v);
  LimitResidual out;
  out.report = run_schedule(schedule, [&](std::int64_t n) {
    const double lambda = 1.0 / static_cast<double>(n);
    const NilMat<double> lu = lambda * u;
    const NilMat<double> lv = lambda * v;
    const NilMat<double> inner = bracket(bu, lv) + bracket(lu, bv) + bracket(lu, lv);
    return MatD((1.0 / lambda) * inner.matrix());
  });
  const NilMat<double> limit = NilMat<double>::unchecked(out.report.extrapolated);
  out.residual = make_residual(bracket(bu, bv), b(limit));
  return out;
}

LimitResidual lie_derivation_residual_limit(const LieDerivation<double>& d, const NilMat<double>& u,
                                            const NilMat<double>& v, const Schedule& schedule) {
  const NilMat<double> du = d(u);
  const NilMat<double> dv = d(v);
  LimitResidual out;
  out.report = run_schedule(schedule, [&](std::int64_t n) {
    const double lambda = 1.0 / static_cast<double>(n);
    const NilMat<double> ldu = lambda * du;
    const NilMat<double> ldv = lambda * dv;
    const NilMat<double> inner = bracket(ldu, v) + bracket(u, ldv) + bracket(ldu, ldv);
    return MatD((1.0 / lambda) * inner.matrix());
  });
  out.residual = make_residual(d(bracket(u, v)), NilMat<double>::unchecked(out.report.extrapolated));
  return out;
}

}  // namespace multcalc
