#pragma once

#include "multcalc/convergence.hpp"
#include "multcalc/groups.hpp"
#include "multcalc/polypath.hpp"
#include "multcalc/residual.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace multcalc {

using json = nlohmann::json;

/// Malformed or schema-violating job input.
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Scalar from a JSON number or a "p/q" string.
template <class S>
S scalar_from_json(const json& j);

/// {"dim": n, "rows": [[...], ...]}; a bare array of rows is accepted too.
template <class S>
Mat<S> matrix_from_json(const json& j);

template <class S>
NilMat<S> nil_from_json(const json& j) {
  try {
    return NilMat<S>(matrix_from_json<S>(j));
  } catch (const std::exception& e) {
    throw SpecError(std::string("NilMat literal: ") + e.what());
  }
}

/// {"sign": +-1, "body": <matrix>}
template <class S>
SignedUnipotent<S> signed_from_json(const json& j);

/// {"dim": n, "coeffs": [<matrix for t^0>, <matrix for t^1>, ...]}
template <class S>
PolyPath<S> path_from_json(const json& j);

/// Exact entries are written as "p/q" strings, doubles as numbers.
template <class S>
json matrix_to_json(const Mat<S>& m);

template <class S>
json path_to_json(const PolyPath<S>& p) {
  json coeffs = json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(matrix_to_json(c.matrix()));
  return {{"dim", p.dim()}, {"coeffs", coeffs}};
}

/// NaN and infinities become null.
json number_to_json(double v);

json report_to_json(const ConvergenceReport& r);
json residual_to_json(const Residual& r);

/// Rejects any key of `j` not in `allowed`.
void require_known_fields(const json& j, std::initializer_list<const char*> allowed, const std::string& where);

}  // namespace multcalc
