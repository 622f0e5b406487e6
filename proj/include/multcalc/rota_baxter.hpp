#pragma once

#include "multcalc/calculus.hpp"
#include "multcalc/lie.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace multcalc {

/// A self-map of a group with a descriptive name and construction rule.
template <class G>
struct GroupOperator {
  std::string name;
  std::string rule;
  std::function<G(const G&)> fn;

  G operator()(const G& g) const { return fn(g); }
};

/// g -> g^-1; a weight-1 operator on every group.
template <class G>
GroupOperator<G> inverse_operator() {
  return {"inverse", "weight1-inverse", [](const G& g) { return inverse(g); }};
}

/// B(a) B(b) against B(H(L(a) B(a) L(b) B(a)^-1)).
template <class G>
Residual rb_pair_residual(const GroupOperator<G>& op, const PairWeightFamily& family, const G& a, const G& b) {
  const G ba = op(a);
  const G inner = mul(mul(mul(pair_L(family, a), ba), pair_L(family, b)), inverse(ba));
  return make_residual(mul(ba, op(b)), op(pair_H(family, inner)));
}

/// B(a) B(b) against B(a B(a) b B(a)^-1).
template <class G>
Residual rb_weight1_residual(const GroupOperator<G>& op, const G& a, const G& b) {
  const G ba = op(a);
  return make_residual(mul(ba, op(b)), op(mul(mul(mul(a, ba), b), inverse(ba))));
}

// --- factorizations G = G+ G- ------------------------------------------------

/// Heisenberg: (a, b, c) = (a, 0, c - ab) (0, b, 0), with G+ = {b = 0}, G- = {a = c = 0}.
template <class S>
std::pair<Unipotent<S>, Unipotent<S>> factorize_heisenberg(const Unipotent<S>& g) {
  if (g.dim() != 3) throw DimensionError("factorize_heisenberg: need a 3x3 element");
  const S a = g(0, 1);
  const S b = g(1, 2);
  const S c = g(0, 2);
  Mat<S> plus = identity<S>(3);
  plus(0, 1) = a;
  plus(0, 2) = c - a * b;
  Mat<S> minus = identity<S>(3);
  minus(1, 2) = b;
  return {Unipotent<S>::unchecked(std::move(plus)), Unipotent<S>::unchecked(std::move(minus))};
}

template <class S>
bool in_heisenberg_plus(const Unipotent<S>& g) {
  return g.dim() == 3 && g(1, 2) == S(0);
}

template <class S>
bool in_heisenberg_minus(const Unipotent<S>& g) {
  return g.dim() == 3 && g(0, 1) == S(0) && g(0, 2) == S(0);
}

/// Affine group {[[p, q], [0, 1]] : p > 0}: diag(p, 1) times [[1, q/p], [0, 1]].
std::pair<MatD, MatD> factorize_affine(const MatD& g);

/// S3 = A3 C2 with C2 generated by the transposition of 0 and 1.
std::pair<Perm3, Perm3> factorize_s3(const Perm3& g);

/// B(g) = (g_-)^-1 for a factorization g = g_+ g_-.
template <class G, class F>
GroupOperator<G> factorization_operator(std::string name, F factorize) {
  return {std::move(name), "factorization", [factorize](const G& g) { return inverse(factorize(g).second); }};
}

template <class S>
GroupOperator<Unipotent<S>> heisenberg_factorization_operator() {
  return factorization_operator<Unipotent<S>>("heisenberg-factorization",
                                              [](const Unipotent<S>& g) { return factorize_heisenberg(g); });
}

GroupOperator<MatD> affine_factorization_operator();
GroupOperator<Perm3> s3_factorization_operator();

/// a -> L(a^-1) B(a^-1). Requires an inverse-preserving family.
template <class G>
GroupOperator<G> induced_operator(const GroupOperator<G>& op, const PairWeightFamily& family) {
  if (!family.is_inverse_preserving())
    throw DomainError("induced_operator: the family must be inverse preserving");
  return {"induced(" + op.name + ")", "induced-from",
          [op, family](const G& a) {
            const G ai = inverse(a);
            return mul(pair_L(family, ai), op(ai));
          }};
}

/// B(a, w) = w^-1 on finitely supported sequences.
template <class B>
GroupOperator<SeqElt<B>> shift_operator() {
  return {"shift", "shift-example", [](const SeqElt<B>& s) { return inverse(s.tail()); }};
}

/// Operator on S3 given by an image table indexed by Perm3::index().
GroupOperator<Perm3> table_operator(const std::array<int, 6>& table, std::string name = "table");

enum class PrecomposeWith { L, H };

template <class G>
struct PrecomposeResult {
  GroupOperator<G> op;
  double max_input_weight1 = 0.0;
  double max_input_pair = 0.0;
  double max_pair = 0.0;
  double max_weight1 = 0.0;
  /// Exhaustive scan results for the composed operator.
  bool is_pair_weight = false;
  bool is_weight1 = false;
};

/// op o L or op o H, classified by an exhaustive residual scan over all pairs
/// drawn from a finite carrier.
template <class G>
PrecomposeResult<G> precompose(PrecomposeWith with, const GroupOperator<G>& op, const PairWeightFamily& family,
                               const std::vector<G>& carrier) {
  PrecomposeResult<G> r;
  const bool use_l = with == PrecomposeWith::L;
  r.op = {op.name + (use_l ? " o L" : " o H"), op.rule,
          [op, family, use_l](const G& g) { return op(use_l ? pair_L(family, g) : pair_H(family, g)); }};
  for (const G& a : carrier) {
    for (const G& b : carrier) {
      r.max_input_weight1 = std::max(r.max_input_weight1, rb_weight1_residual(op, a, b).distance);
      r.max_input_pair = std::max(r.max_input_pair, rb_pair_residual(op, family, a, b).distance);
      r.max_pair = std::max(r.max_pair, rb_pair_residual(r.op, family, a, b).distance);
      r.max_weight1 = std::max(r.max_weight1, rb_weight1_residual(r.op, a, b).distance);
    }
  }
  r.is_pair_weight = r.max_pair == 0.0;
  r.is_weight1 = r.max_weight1 == 0.0;
  return r;
}

/// Every sequence over S3 with support at most `max_support`.
std::vector<SeqElt<Perm3>> all_s3_sequences(int max_support);

/// Shift-operator pair over S3 whose weight-1 residual is positive.
std::pair<SeqElt<Perm3>, SeqElt<Perm3>> shift_weight1_witness();

// --- Trotter multiplication and limit weight -----------------------------------

/// (exp(x/n) exp(y/n))^n by repeated squaring, against exp(x + y).
struct TrotterResult {
  ConvergenceReport report;
  MatD target;
  /// ||iterate_n - target|| per level.
  std::vector<double> errors;
  double extrapolated_error = 0.0;
};

TrotterResult trotter_mul(const MatD& x, const MatD& y, const Schedule& schedule);

struct RbLimitResult {
  ConvergenceReport report;
  Residual residual;
  /// ||a^{1/n} - I|| per level, the limit-weight-zero precondition.
  std::vector<double> lwz_norms;
  bool limit_weight_zero = false;
};

/// B(a) B(b) against B(lim (a^{1/n} B(a) b^{1/n} B(a)^-1)^n) at the extrapolated limit.
RbLimitResult rb_limit_eval(const GroupOperator<Unipotent<double>>& op, const Unipotent<double>& a,
                            const Unipotent<double>& b, const Schedule& schedule);

/// exp(u) -> exp(B(u) + B([u, B(u)])/2). B must be center-stable and a
/// weight-zero Lie operator; both are checked.
template <class S>
GroupOperator<Unipotent<S>> rb_zero_closed_form(const LieOperator<S>& b) {
  if (!b.center_stable()) throw DomainError("rb_zero_closed_form: operator is not center-stable");
  if (!is_weight_zero_rbo(b)) throw DomainError("rb_zero_closed_form: not a weight-zero Rota-Baxter operator");
  return {"rb0(" + b.name() + ")", "nilpotent-closed-form", [b](const Unipotent<S>& g) {
            const NilMat<S> u = log_unipotent(g);
            const NilMat<S> bu = b(u);
            return exp_nilpotent(bu + (S(1) / S(2)) * b(bracket(u, bu)));
          }};
}

/// B(e^u) B(e^v) against B(exp(u + B(e^u) v B(e^u)^-1)).
template <class S>
Residual rboze_finite_residual(const GroupOperator<Unipotent<S>>& op, const NilMat<S>& u, const NilMat<S>& v) {
  const Unipotent<S> bu = op(exp_nilpotent(u));
  const Unipotent<S> bv = op(exp_nilpotent(v));
  return make_residual(mul(bu, bv), op(exp_nilpotent(u + adjoint(bu, v))));
}

}  // namespace multcalc
