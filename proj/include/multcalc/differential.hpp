#pragma once

#include "multcalc/rota_baxter.hpp"

namespace multcalc {

template <class G>
using GroupDiffOperator = GroupOperator<G>;

/// exp(u) -> exp(Du + [u, Du]/2). D must be a derivation.
template <class S>
GroupDiffOperator<Unipotent<S>> diff_closed_form(const LieDerivation<S>& d) {
  if (!d.is_derivation()) throw DomainError("diff_closed_form: operator is not a derivation");
  return {"diff(" + d.name() + ")", "nilpotent-closed-form", [d](const Unipotent<S>& g) {
            const NilMat<S> u = log_unipotent(g);
            const NilMat<S> du = d(u);
            return exp_nilpotent(du + (S(1) / S(2)) * bracket(u, du));
          }};
}

/// D(e^u e^v) against exp(D~(u) + Ad_{e^u} D~(v)) where D~(w) = log D(e^w).
template <class S>
Residual diffg0e_residual(const GroupDiffOperator<Unipotent<S>>& op, const NilMat<S>& u, const NilMat<S>& v) {
  const Unipotent<S> eu = exp_nilpotent(u);
  const Unipotent<S> lhs = op(mul(eu, exp_nilpotent(v)));
  const NilMat<S> du = log_unipotent(op(eu));
  const NilMat<S> dv = log_unipotent(op(exp_nilpotent(v)));
  return make_residual(lhs, exp_nilpotent(du + adjoint(eu, dv)));
}

/// D(ab) against lim (D(a)^{1/n} a D(b)^{1/n} a^-1)^n at the extrapolated limit.
LimitResidual diff_limit_residual(const GroupDiffOperator<Unipotent<double>>& op, const Unipotent<double>& a,
                                  const Unipotent<double>& b, const Schedule& schedule);

}  // namespace multcalc
