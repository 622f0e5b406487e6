#include "multcalc/rota_baxter.hpp"

#include "multcalc/matexp.hpp"

#include <cmath>
#include <limits>

namespace multcalc {

std::pair<MatD, MatD> factorize_affine(const MatD& g) {
  if (g.rows() != 2 || g.cols() != 2 || g(1, 0) != 0.0 || g(1, 1) != 1.0 || !(g(0, 0) > 0.0))
    throw DomainError("factorize_affine: expected [[p, q], [0, 1]] with p > 0");
  MatD plus = MatD::Identity(2, 2);
  plus(0, 0) = g(0, 0);
  MatD minus = MatD::Identity(2, 2);
  minus(0, 1) = g(0, 1) / g(0, 0);
  return {plus, minus};
}

std::pair<Perm3, Perm3> factorize_s3(const Perm3& g) {
  if (g.is_even()) return {g, Perm3{}};
  const Perm3 t{{1, 0, 2}};
  return {mul(g, inverse(t)), t};
}

GroupOperator<MatD> affine_factorization_operator() {
  return factorization_operator<MatD>("affine-factorization", [](const MatD& g) { return factorize_affine(g); });
}

GroupOperator<Perm3> s3_factorization_operator() {
  return factorization_operator<Perm3>("s3-factorization", [](const Perm3& g) { return factorize_s3(g); });
}

GroupOperator<Perm3> table_operator(const std::array<int, 6>& table, std::string name) {
  for (int v : table)
    if (v < 0 || v >= 6) throw DomainError("table_operator: entries must index S3");
  return {std::move(name), "custom-table", [table](const Perm3& g) { return Perm3::from_index(table[g.index()]); }};
}

std::vector<SeqElt<Perm3>> all_s3_sequences(int max_support) {
  if (max_support < 0 || max_support > 4) throw DomainError("all_s3_sequences: support must be in [0, 4]");
  std::vector<SeqElt<Perm3>> out;
  std::int64_t total = 1;
  for (int k = 0; k < max_support; ++k) total *= 6;
  for (std::int64_t code = 0; code < total; ++code) {
    std::vector<Perm3> e;
    std::int64_t c = code;
    for (int k = 0; k < max_support; ++k) {
      e.push_back(Perm3::from_index(static_cast<int>(c % 6)));
      c /= 6;
    }
    out.emplace_back(std::move(e));
  }
  return out;
}

std::pair<SeqElt<Perm3>, SeqElt<Perm3>> shift_weight1_witness() {
  // Second components are non-commuting transpositions.
  const SeqElt<Perm3> a({Perm3{}, Perm3{{1, 0, 2}}});
  const SeqElt<Perm3> b({Perm3{}, Perm3{{0, 2, 1}}});
  return {a, b};
}

TrotterResult trotter_mul(const MatD& x, const MatD& y, const Schedule& schedule) {
  require_square(x, "trotter_mul");
  require_same_dim(x, y, "trotter_mul");
  TrotterResult r;
  r.target = exp_general(x + y);
  r.report = run_schedule(schedule, [&](std::int64_t n) {
    int k = 0;
    while ((std::int64_t{1} << k) < n) ++k;
    const double scale = 1.0 / static_cast<double>(n);
    MatD p = exp_general(scale * x) * exp_general(scale * y);
    for (int s = 0; s < k; ++s) p = (p * p).eval();
    return p;
  });
  for (const MatD& v : r.report.values) r.errors.push_back(frobenius_distance(v, r.target));
  r.extrapolated_error = frobenius_distance(r.report.extrapolated, r.target);
  return r;
}

RbLimitResult rb_limit_eval(const GroupOperator<Unipotent<double>>& op, const Unipotent<double>& a,
                            const Unipotent<double>& b, const Schedule& schedule) {
  const Unipotent<double> ba = op(a);
  const Unipotent<double> ba_inv = inverse(ba);
  RbLimitResult r;
  r.report = run_schedule(schedule, [&](std::int64_t n) {
    const double s = 1.0 / static_cast<double>(n);
    const Unipotent<double> inner = mul(mul(mul(power_real(a, s), ba), power_real(b, s)), ba_inv);
    return power_int(inner, n).matrix();
  });
  for (std::int64_t n : r.report.ns)
    r.lwz_norms.push_back(frobenius_distance(power_real(a, 1.0 / static_cast<double>(n)).matrix(), identity<double>(3)));
  // a^{1/n} - I = O(1/n): the norms must shrink at every level unless a = e.
  r.limit_weight_zero = true;
  for (std::size_t k = 1; k < r.lwz_norms.size(); ++k)
    if (r.lwz_norms[k] > 0.0 && !(r.lwz_norms[k] < r.lwz_norms[k - 1])) r.limit_weight_zero = false;

  if (!Unipotent<double>::is_unipotent(r.report.extrapolated))
    throw DomainError("rb_limit_eval: extrapolated limit left the unipotent group");
  const Unipotent<double> limit = Unipotent<double>::unchecked(r.report.extrapolated);
  r.residual = make_residual(mul(ba, op(b)), op(limit));
  return r;
}

}  // namespace multcalc
