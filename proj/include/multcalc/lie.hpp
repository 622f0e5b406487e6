#pragma once

// Linear operators on the 3x3 strictly upper-triangular algebra, stored as
// 3x3 matrices acting on coordinates (a, b, c) of a E12 + b E23 + c E13.
// The only nonzero structure constant is [E12, E23] = E13.

#include "multcalc/convergence.hpp"
#include "multcalc/residual.hpp"

#include <array>
#include <string>

namespace multcalc {

template <class S>
using Coords = Eigen::Matrix<S, 3, 1>;

template <class S>
using CoordMap = Eigen::Matrix<S, 3, 3>;

template <class S>
NilMat<S> heis(const S& a, const S& b, const S& c) {
  Mat<S> m = zeros<S>(3);
  m(0, 1) = a;
  m(1, 2) = b;
  m(0, 2) = c;
  return NilMat<S>::unchecked(std::move(m));
}

/// Basis E12, E23, E13 in coordinate order.
template <class S>
NilMat<S> heis_basis(int i) {
  Coords<S> c = Coords<S>::Zero();
  c(i) = S(1);
  return heis(c(0), c(1), c(2));
}

template <class S>
Coords<S> coords(const NilMat<S>& x) {
  if (x.dim() != 3) throw DimensionError("coords: the coordinate model is 3x3");
  Coords<S> c;
  c << x(0, 1), x(1, 2), x(0, 2);
  return c;
}

template <class S>
NilMat<S> from_coords(const Coords<S>& c) {
  return heis(c(0), c(1), c(2));
}

template <class S>
class LieOperator {
 public:
  LieOperator() : m_(CoordMap<S>::Zero()) {}
  explicit LieOperator(CoordMap<S> m, std::string name = "custom") : m_(std::move(m)), name_(std::move(name)) {}

  static LieOperator zero() { return LieOperator(CoordMap<S>::Zero(), "zero"); }
  static LieOperator identity() { return LieOperator(CoordMap<S>::Identity(), "identity"); }
  /// (a, b, c) -> (0, 0, c)
  static LieOperator projection_to_center() {
    CoordMap<S> m = CoordMap<S>::Zero();
    m(2, 2) = S(1);
    return LieOperator(m, "projection-to-center");
  }
  /// (a, b, c) -> (-a, 0, 0)
  static LieOperator negate_first() {
    CoordMap<S> m = CoordMap<S>::Zero();
    m(0, 0) = S(-1);
    return LieOperator(m, "negate-first");
  }
  /// ad_x = [x, .]
  static LieOperator ad(const NilMat<S>& x, std::string name = "ad") {
    CoordMap<S> m;
    for (int j = 0; j < 3; ++j) m.col(j) = coords(bracket(x, heis_basis<S>(j)));
    return LieOperator(m, std::move(name));
  }
  static LieOperator scalar(const S& s) { return LieOperator(CoordMap<S>::Identity() * s, "scalar"); }

  NilMat<S> operator()(const NilMat<S>& x) const { return from_coords<S>(m_ * coords(x)); }

  const CoordMap<S>& matrix() const { return m_; }
  const std::string& name() const { return name_; }

  /// Image of span{E13} stays inside span{E13}.
  bool center_stable() const { return m_(0, 2) == S(0) && m_(1, 2) == S(0); }

  friend bool operator==(const LieOperator& a, const LieOperator& b) { return a.m_ == b.m_; }

 private:
  CoordMap<S> m_;
  std::string name_ = "custom";
};

/// || [Bu, Bv] - B([Bu, v] + [u, Bv]) ||
template <class S>
Residual rb_lie_residual_zero(const LieOperator<S>& b, const NilMat<S>& u, const NilMat<S>& v) {
  const NilMat<S> bu = b(u);
  const NilMat<S> bv = b(v);
  return make_residual(bracket(bu, bv), b(bracket(bu, v) + bracket(u, bv)));
}

/// || [Bu, Bv] - B(H([Bu, Lv] + [Lu, Bv] + [Lu, Lv])) || for linear L, H.
template <class S>
Residual rb_lie_residual_pair(const LieOperator<S>& b, const LieOperator<S>& l, const LieOperator<S>& h,
                              const NilMat<S>& u, const NilMat<S>& v) {
  const NilMat<S> bu = b(u);
  const NilMat<S> bv = b(v);
  const NilMat<S> lu = l(u);
  const NilMat<S> lv = l(v);
  return make_residual(bracket(bu, bv), b(h(bracket(bu, lv) + bracket(lu, bv) + bracket(lu, lv))));
}

struct LimitResidual {
  ConvergenceReport report;
  Residual residual;
};

/// Limit weight from the scalar family L_lambda = lambda id, H_lambda = id / lambda
/// with lambda = 1/n; the inner expression is compared at its extrapolated limit.
LimitResidual rb_lie_residual_limit(const LieOperator<double>& b, const NilMat<double>& u, const NilMat<double>& v,
                                    const Schedule& schedule);

/// Weight-zero identity on all nine basis pairs; bilinearity makes this exhaustive.
template <class S>
bool is_weight_zero_rbo(const LieOperator<S>& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!rb_lie_residual_zero(b, heis_basis<S>(i), heis_basis<S>(j)).exact) return false;
  return true;
}

/// Linear operator checked to be a derivation of the bracket.
template <class S>
class LieDerivation {
 public:
  explicit LieDerivation(LieOperator<S> map) : map_(std::move(map)) {}

  static LieDerivation ad(const NilMat<S>& x, std::string name = "ad") {
    return LieDerivation(LieOperator<S>::ad(x, std::move(name)));
  }

  NilMat<S> operator()(const NilMat<S>& x) const { return map_(x); }
  const LieOperator<S>& map() const { return map_; }
  const std::string& name() const { return map_.name(); }

  /// D[u, v] = [Du, v] + [u, Dv] on the nine basis pairs.
  bool is_derivation() const;

 private:
  LieOperator<S> map_;
};

/// || D[u, v] - [Du, v] - [u, Dv] ||
template <class S>
Residual lie_derivation_residual_zero(const LieDerivation<S>& d, const NilMat<S>& u, const NilMat<S>& v) {
  return make_residual(d(bracket(u, v)), bracket(d(u), v) + bracket(u, d(v)));
}

template <class S>
bool LieDerivation<S>::is_derivation() const {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!lie_derivation_residual_zero(*this, heis_basis<S>(i), heis_basis<S>(j)).exact) return false;
  return true;
}

/// D[u, v] against lim H_lambda([L_lambda Du, v] + [u, L_lambda Dv] + [L_lambda Du, L_lambda Dv])
/// for the scalar family, lambda = 1/n.
LimitResidual lie_derivation_residual_limit(const LieDerivation<double>& d, const NilMat<double>& u,
                                            const NilMat<double>& v, const Schedule& schedule);

template <class S>
LieOperator<double> to_double(const LieOperator<S>& b) {
  CoordMap<double> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = scalar_traits<S>::to_double(b.matrix()(i, j));
  return LieOperator<double>(m, b.name());
}

}  // namespace multcalc
