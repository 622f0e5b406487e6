#pragma once

#include "multcalc/groups.hpp"

namespace multcalc {

/// Two sides of an identity and how far apart they are.
struct Residual {
  MatD lhs;
  MatD rhs;
  double distance = 0.0;
  /// Sides agree entrywise (bitwise for doubles, exactly for rationals).
  bool exact = false;
};

template <class G>
Residual make_residual(const G& lhs, const G& rhs) {
  Residual r;
  r.lhs = to_matrix(lhs);
  r.rhs = to_matrix(rhs);
  r.exact = equal(lhs, rhs);
  r.distance = r.exact ? 0.0 : distance(lhs, rhs);
  return r;
}

template <class S>
Residual make_residual(const NilMat<S>& lhs, const NilMat<S>& rhs) {
  Residual r;
  r.lhs = to_double(lhs.matrix());
  r.rhs = to_double(rhs.matrix());
  r.exact = lhs == rhs;
  r.distance = r.exact ? 0.0 : frobenius_distance(lhs.matrix(), rhs.matrix());
  return r;
}

}  // namespace multcalc
