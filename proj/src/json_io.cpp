#include "multcalc/json_io.hpp"

#include <cmath>
#include <set>

namespace multcalc {

template <>
Rational scalar_from_json<Rational>(const json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw SpecError("non-finite scalar");
    return Rational(v);
  }
  if (j.is_string()) {
    mpq_class q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw SpecError("bad rational literal: " + j.get<std::string>());
    if (q.get_den() == 0) throw SpecError("zero denominator");
    return Rational(q);
  }
  throw SpecError("scalar must be a number or a \"p/q\" string");
}

template <>
double scalar_from_json<double>(const json& j) {
  if (j.is_number()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw SpecError("non-finite scalar");
    return v;
  }
  if (j.is_string()) return scalar_from_json<Rational>(j).to_double();
  throw SpecError("scalar must be a number or a \"p/q\" string");
}

template <class S>
Mat<S> matrix_from_json(const json& j) {
  json rows;
  if (j.is_object()) {
    require_known_fields(j, {"dim", "rows"}, "matrix literal");
    if (!j.contains("rows")) throw SpecError("matrix literal: missing rows");
    rows = j.at("rows");
  } else if (j.is_array()) {
    rows = j;
  } else {
    throw SpecError("matrix literal must be an object or an array of rows");
  }
  if (!rows.is_array() || rows.empty()) throw SpecError("matrix literal: rows must be a non-empty array");
  const int n = static_cast<int>(rows.size());
  if (n > kMaxDim) throw SpecError("matrix literal: dimension above 8");
  if (j.is_object() && j.contains("dim")) {
    if (!j.at("dim").is_number_integer() || j.at("dim").get<int>() != n)
      throw SpecError("matrix literal: dim does not match the row count");
  }
  Mat<S> m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = rows.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw SpecError("matrix literal: matrix is not square");
    for (int c = 0; c < n; ++c) m(r, c) = scalar_from_json<S>(row.at(c));
  }
  return m;
}

template <class S>
SignedUnipotent<S> signed_from_json(const json& j) {
  if (!j.is_object()) throw SpecError("signed element must be an object");
  require_known_fields(j, {"sign", "body"}, "signed element");
  if (!j.contains("sign") || !j.contains("body")) throw SpecError("signed element: need sign and body");
  const int sign = j.at("sign").get<int>();
  if (sign != 1 && sign != -1) throw SpecError("signed element: sign must be +1 or -1");
  try {
    return SignedUnipotent<S>(sign, Unipotent<S>(matrix_from_json<S>(j.at("body"))));
  } catch (const DomainError& e) {
    throw SpecError(e.what());
  }
}

template <class S>
PolyPath<S> path_from_json(const json& j) {
  if (!j.is_object()) throw SpecError("path must be an object");
  require_known_fields(j, {"dim", "coeffs"}, "path");
  if (!j.contains("dim") || !j.contains("coeffs")) throw SpecError("path: need dim and coeffs");
  const int dim = j.at("dim").get<int>();
  if (dim < 1 || dim > kMaxDim) throw SpecError("path: dim must be in [1, 8]");
  std::vector<NilMat<S>> coeffs;
  for (const json& c : j.at("coeffs")) {
    NilMat<S> x = nil_from_json<S>(c);
    if (x.dim() != dim) throw SpecError("path: coefficient dimension mismatch");
    coeffs.push_back(std::move(x));
  }
  try {
    return PolyPath<S>(dim, std::move(coeffs));
  } catch (const DomainError& e) {
    throw SpecError(e.what());
  }
}

template <class S>
json matrix_to_json(const Mat<S>& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) {
      if constexpr (is_exact_v<S>) {
        row.push_back(m(r, c).str());
      } else {
        row.push_back(number_to_json(m(r, c)));
      }
    }
    rows.push_back(row);
  }
  return {{"dim", m.rows()}, {"rows", rows}};
}

template Mat<double> matrix_from_json<double>(const json&);
template Mat<Rational> matrix_from_json<Rational>(const json&);
template SignedUnipotent<double> signed_from_json<double>(const json&);
template SignedUnipotent<Rational> signed_from_json<Rational>(const json&);
template PolyPath<double> path_from_json<double>(const json&);
template PolyPath<Rational> path_from_json<Rational>(const json&);
template json matrix_to_json<double>(const Mat<double>&);
template json matrix_to_json<Rational>(const Mat<Rational>&);

json number_to_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

json report_to_json(const ConvergenceReport& r) {
  json norms = json::array();
  for (const MatD& v : r.values) norms.push_back(number_to_json(v.norm()));
  json deltas = json::array();
  for (double d : r.deltas) deltas.push_back(number_to_json(d));
  return {{"n", r.ns},
          {"value_frobnorm", norms},
          {"deltas", deltas},
          {"extrapolated", matrix_to_json(r.extrapolated)},
          {"order", number_to_json(r.order)},
          {"converged", r.converged}};
}

json residual_to_json(const Residual& r) {
  return {{"lhs", matrix_to_json(r.lhs)},
          {"rhs", matrix_to_json(r.rhs)},
          {"distance", number_to_json(r.distance)},
          {"exact", r.exact}};
}

void require_known_fields(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw SpecError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) throw SpecError(where + ": unknown field '" + it.key() + "'");
}

}  // namespace multcalc
