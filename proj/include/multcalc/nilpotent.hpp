#pragma once

#include "multcalc/matrix.hpp"

#include <utility>

namespace multcalc {

/// Strictly upper-triangular matrix: an element of the nilpotent Lie algebra
/// of unipotent upper-triangular matrices. x^dim == 0 exactly.
template <class S>
class NilMat {
 public:
  NilMat() : m_(zeros<S>(1)) {}
  explicit NilMat(int dim) : m_(zeros<S>(dim)) { require_square(m_, "NilMat"); }
  explicit NilMat(Mat<S> m) : m_(std::move(m)) { validate(); }

  static NilMat unchecked(Mat<S> m) {
    NilMat r;
    r.m_ = std::move(m);
    return r;
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Mat<S>& matrix() const { return m_; }
  const S& operator()(int r, int c) const { return m_(r, c); }

  bool is_zero() const { return m_.isZero(S(0)); }

  friend NilMat operator+(const NilMat& a, const NilMat& b) {
    require_same_dim(a.m_, b.m_, "NilMat +");
    return unchecked(a.m_ + b.m_);
  }
  friend NilMat operator-(const NilMat& a, const NilMat& b) {
    require_same_dim(a.m_, b.m_, "NilMat -");
    return unchecked(a.m_ - b.m_);
  }
  friend NilMat operator-(const NilMat& a) { return unchecked(-a.m_); }
  friend NilMat operator*(const S& s, const NilMat& a) { return unchecked(s * a.m_); }
  friend bool operator==(const NilMat& a, const NilMat& b) { return exactly_equal(a.m_, b.m_); }

 private:
  void validate() const {
    require_square(m_, "NilMat");
    require_finite(m_, "NilMat");
    for (int r = 0; r < m_.rows(); ++r)
      for (int c = 0; c <= r; ++c)
        if (m_(r, c) != S(0)) throw DomainError("NilMat: entry on or below the diagonal is nonzero");
  }

  Mat<S> m_;
};

/// Identity plus a strictly upper-triangular matrix.
template <class S>
class Unipotent {
 public:
  Unipotent() : m_(identity<S>(1)) {}
  explicit Unipotent(Mat<S> m) : m_(std::move(m)) { validate(); }

  static Unipotent identity_of(int dim) { return unchecked(identity<S>(dim)); }
  static Unipotent unchecked(Mat<S> m) {
    Unipotent u;
    u.m_ = std::move(m);
    return u;
  }
  static bool is_unipotent(const Mat<S>& m) {
    if (m.rows() != m.cols()) return false;
    for (int r = 0; r < m.rows(); ++r) {
      if (m(r, r) != S(1)) return false;
      for (int c = 0; c < r; ++c)
        if (m(r, c) != S(0)) return false;
    }
    return true;
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Mat<S>& matrix() const { return m_; }
  const S& operator()(int r, int c) const { return m_(r, c); }

  /// self - I, as a Lie-algebra element.
  NilMat<S> nilpart() const { return NilMat<S>::unchecked(m_ - identity<S>(dim())); }

  friend bool operator==(const Unipotent& a, const Unipotent& b) { return exactly_equal(a.m_, b.m_); }

 private:
  void validate() const {
    require_square(m_, "Unipotent");
    require_finite(m_, "Unipotent");
    if (!is_unipotent(m_)) throw DomainError("Unipotent: matrix is not unit upper-triangular");
  }

  Mat<S> m_;
};

/// exp of a nilpotent matrix: the finite series sum_{k<dim} x^k / k!.
template <class S>
Unipotent<S> exp_nilpotent(const NilMat<S>& x) {
  const int n = x.dim();
  Mat<S> sum = identity<S>(n);
  Mat<S> term = identity<S>(n);
  for (int k = 1; k < n; ++k) {
    term = (term * x.matrix()).eval();
    term /= S(k);
    if (term.isZero(S(0))) break;
    sum += term;
  }
  return Unipotent<S>::unchecked(std::move(sum));
}

/// Mercator series sum_{k<dim} (-1)^{k+1} N^k / k with N = g - I.
template <class S>
NilMat<S> log_unipotent(const Unipotent<S>& g) {
  const int n = g.dim();
  const Mat<S> nil = g.matrix() - identity<S>(n);
  Mat<S> sum = zeros<S>(n);
  Mat<S> power = identity<S>(n);
  for (int k = 1; k < n; ++k) {
    power = (power * nil).eval();
    if (power.isZero(S(0))) break;
    const S coeff = (k % 2 == 1 ? S(1) : S(-1)) / S(k);
    sum += coeff * power;
  }
  return NilMat<S>::unchecked(std::move(sum));
}

template <class S>
Unipotent<S> mul(const Unipotent<S>& a, const Unipotent<S>& b) {
  require_same_dim(a.matrix(), b.matrix(), "Unipotent mul");
  return Unipotent<S>::unchecked(a.matrix() * b.matrix());
}

/// Finite Neumann series sum (-N)^k.
template <class S>
Unipotent<S> inverse(const Unipotent<S>& g) {
  const int n = g.dim();
  const Mat<S> neg = identity<S>(n) - g.matrix();
  Mat<S> sum = identity<S>(n);
  Mat<S> power = identity<S>(n);
  for (int k = 1; k < n; ++k) {
    power = (power * neg).eval();
    if (power.isZero(S(0))) break;
    sum += power;
  }
  return Unipotent<S>::unchecked(std::move(sum));
}

template <class S>
Unipotent<S> identity_like(const Unipotent<S>& g) {
  return Unipotent<S>::identity_of(g.dim());
}

template <class S>
double distance(const Unipotent<S>& a, const Unipotent<S>& b) {
  return frobenius_distance(a.matrix(), b.matrix());
}

template <class S>
bool equal(const Unipotent<S>& a, const Unipotent<S>& b) {
  return a == b;
}

template <class S>
MatD to_matrix(const Unipotent<S>& g) {
  return to_double(g.matrix());
}

/// g^r = exp(r log g), the unique one-parameter subgroup through g.
template <class S>
Unipotent<S> power_real(const Unipotent<S>& g, const S& r) {
  return exp_nilpotent(r * log_unipotent(g));
}

/// exp(x) y exp(-x) for x in the Lie algebra.
template <class S>
Mat<S> conjugate(const Unipotent<S>& g, const Mat<S>& y) {
  return g.matrix() * y * inverse(g).matrix();
}

template <class S>
NilMat<S> bracket(const NilMat<S>& x, const NilMat<S>& y) {
  require_same_dim(x.matrix(), y.matrix(), "bracket");
  return NilMat<S>::unchecked(commutator(x.matrix(), y.matrix()));
}

/// Ad_g(y) for y strictly upper-triangular; stays strictly upper-triangular.
template <class S>
NilMat<S> adjoint(const Unipotent<S>& g, const NilMat<S>& y) {
  require_same_dim(g.matrix(), y.matrix(), "adjoint");
  return NilMat<S>::unchecked(conjugate(g, y.matrix()));
}

}  // namespace multcalc
