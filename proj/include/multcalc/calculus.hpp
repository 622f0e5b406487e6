#pragma once

// Product integrals and multiplicative derivatives, by limits and in closed
// form on the 3x3 strictly upper-triangular algebra (nilpotency class 2).

#include "multcalc/convergence.hpp"
#include "multcalc/pair_weight.hpp"
#include "multcalc/polypath.hpp"
#include "multcalc/residual.hpp"

#include <functional>

namespace multcalc {

/// Factor order of a partition product. The integral uses time_descending:
/// the factor for the latest cell is leftmost, so F' = u F.
enum class Ordering { time_descending, time_ascending };

/// prod_{k=1}^{n} L_dt(a(xi_{n+1-k})) on a single partition.
template <GroupElement G>
G partition_product(const std::function<G(double)>& a, const PairWeightFamily& family, const Partition& p,
                    Ordering order = Ordering::time_descending) {
  G prod = identity_like(a(p.lo));
  const double dt = p.mesh();
  for (std::int64_t k = 1; k <= p.n; ++k) {
    const G factor = apply_pair_weight(family, PairSide::L, dt, a(p.tag(k)));
    prod = order == Ordering::time_descending ? mul(factor, prod) : mul(prod, factor);
  }
  return prod;
}

/// Product integral of a over [lo, hi] refined along the schedule.
template <GroupElement G>
ConvergenceReport product_integral_numeric(const std::function<G(double)>& a, const PairWeightFamily& family,
                                           double lo, double hi, const Schedule& schedule,
                                           SampleRule rule = SampleRule::right,
                                           Ordering order = Ordering::time_descending) {
  return run_schedule(schedule, [&](std::int64_t n) {
    return to_matrix(partition_product(a, family, Partition(lo, hi, n, rule), order));
  });
}

/// Multiplicative derivative lim H_lambda(a(x + lambda) a(x)^-1) with lambda = 1/n.
template <GroupElement G>
ConvergenceReport mult_derivative_numeric(const std::function<G(double)>& a, const PairWeightFamily& family,
                                          double x, const Schedule& schedule) {
  const G ax_inv = inverse(a(x));
  return run_schedule(schedule, [&](std::int64_t n) {
    const double lambda = 1.0 / static_cast<double>(n);
    return to_matrix(apply_pair_weight(family, PairSide::H, lambda, mul(a(x + lambda), ax_inv)));
  });
}

template <class S>
void require_class_two(const PolyPath<S>& u, const char* what) {
  if (u.dim() != 3) throw DimensionError(std::string(what) + ": closed forms need dim 3");
}

/// Exponent A + C/2 of the closed-form product integral, where
/// A = int_0^t u and C = int_0^t [u, A].
template <class S>
PolyPath<S> integral_exponent(const PolyPath<S>& u) {
  require_class_two(u, "integral_exponent");
  const PolyPath<S> a = antiderivative(u);
  const PolyPath<S> c = antiderivative(bracket(u, a));
  return a + (S(1) / S(2)) * c;
}

template <class S>
Unipotent<S> product_integral_closed_nilpotent(const PolyPath<S>& u, const S& x) {
  return exp_nilpotent(integral_exponent(u)(x));
}

/// Closed-form product integral over [y, x], i.e. of t -> u(y + t) on [0, x - y].
template <class S>
Unipotent<S> product_integral_closed_between(const PolyPath<S>& u, const S& y, const S& x) {
  return product_integral_closed_nilpotent(shifted(u, y), x - y);
}

/// u'(x) + [u(x), u'(x)]/2.
template <class S>
NilMat<S> derivative_exponent(const PolyPath<S>& u, const S& x) {
  require_class_two(u, "derivative_exponent");
  const NilMat<S> ux = u(x);
  const NilMat<S> dux = derivative(u)(x);
  return dux + (S(1) / S(2)) * bracket(ux, dux);
}

/// Path t -> u'(t) + [u(t), u'(t)]/2.
template <class S>
PolyPath<S> derivative_exponent_path(const PolyPath<S>& u) {
  require_class_two(u, "derivative_exponent_path");
  const PolyPath<S> du = derivative(u);
  return du + (S(1) / S(2)) * bracket(u, du);
}

template <class S>
Unipotent<S> mult_derivative_closed(const PolyPath<S>& u, const S& x) {
  return exp_nilpotent(derivative_exponent(u, x));
}

struct FtcResidual {
  /// || d/dx int_0^x e^u - e^{u(x)} ||
  double derivative_of_integral = 0.0;
  /// || int_0^x (d e^u) - e^{u(x)} e^{-u(0)} ||
  double integral_of_derivative = 0.0;
  /// || int_0^x (d e^u) - e^{u(x)} ||; differs from the above only when u(0) != 0.
  double integral_of_derivative_literal = 0.0;
  bool exact = false;
};

template <class S>
FtcResidual ftc_check(const PolyPath<S>& u, const S& x) {
  require_class_two(u, "ftc_check");
  const Unipotent<S> target = exp_nilpotent(u(x));
  const Unipotent<S> d_int = mult_derivative_closed(integral_exponent(u), x);
  const Unipotent<S> int_d = product_integral_closed_nilpotent(derivative_exponent_path(u), x);
  const Unipotent<S> based = mul(target, exp_nilpotent(-u(S(0))));

  FtcResidual r;
  r.derivative_of_integral = distance(d_int, target);
  r.integral_of_derivative = distance(int_d, based);
  r.integral_of_derivative_literal = distance(int_d, target);
  r.exact = d_int == target && int_d == based;
  return r;
}

/// Integrand exponent a + Ad_{F(t)} b of the integration-by-parts right side,
/// with F(t) = exp(Omega_a(t)) and Ad_{e^X} = 1 + ad_X in class 2.
template <class S>
PolyPath<S> ibp_exponent(const PolyPath<S>& a, const PolyPath<S>& b) {
  return a + b + bracket(integral_exponent(a), b);
}

/// (int e^a)(int e^b) against int exp(a + Ad_{int_0^t e^a} b), both closed.
template <class S>
Residual ibp_check_closed(const PolyPath<S>& a, const PolyPath<S>& b, const S& x) {
  require_class_two(a, "ibp_check");
  PolyPath<S>::check_dims(a, b);
  const Unipotent<S> lhs = mul(product_integral_closed_nilpotent(a, x), product_integral_closed_nilpotent(b, x));
  const Unipotent<S> rhs = product_integral_closed_nilpotent(ibp_exponent(a, b), x);
  return make_residual(lhs, rhs);
}

struct IbpNumericResult {
  ConvergenceReport lhs;
  ConvergenceReport rhs;
  /// Distance between the extrapolated sides.
  double residual = 0.0;
};

/// Both sides by partition products; the inner integral F(t_k) is accumulated
/// on the same partition.
IbpNumericResult ibp_check_numeric(const PolyPath<double>& a, const PolyPath<double>& b, double x,
                                   const Schedule& schedule);

/// d(e^a e^b) against exp(Da + Ad_{e^{a(x)}} Db), all closed.
template <class S>
Residual leibniz_check(const PolyPath<S>& a, const PolyPath<S>& b, const S& x) {
  require_class_two(a, "leibniz_check");
  PolyPath<S>::check_dims(a, b);
  const PolyPath<S> combined = a + b + (S(1) / S(2)) * bracket(a, b);
  const Unipotent<S> lhs = mult_derivative_closed(combined, x);
  const NilMat<S> da = derivative_exponent(a, x);
  const NilMat<S> db = derivative_exponent(b, x);
  const Unipotent<S> rhs = exp_nilpotent(da + adjoint(exp_nilpotent(a(x)), db));
  return make_residual(lhs, rhs);
}

/// f_n(a, b) for a family of maps indexed by n.
using PairMap = std::function<MatD(const Unipotent<double>&, const Unipotent<double>&, std::int64_t)>;

/// (a^{1/n} b^{1/n})^n.
MatD trotter_pair(const Unipotent<double>& a, const Unipotent<double>& b, std::int64_t n);

struct SyncResult {
  /// values[k] = f_n(a, b) - f_n(a_n, b_n)
  ConvergenceReport report;
  std::vector<double> deviations;
  double order = 0.0;
  bool passed = false;
};

/// Compares f_n(a, b) with f_n(a_n, b_n) for a_n = a exp(delta/n R),
/// b_n = b exp(delta/n R).
SyncResult synchronized_limit_check(const PairMap& f, const Unipotent<double>& a, const Unipotent<double>& b,
                                    double delta, const NilMat<double>& r, const Schedule& schedule);

}  // namespace multcalc
