#pragma once

#include "multcalc/nilpotent.hpp"

#include <vector>

namespace multcalc {

/// Highest degree a PolyPath may have after trimming.
inline constexpr int kMaxDegree = 16;

/// Matrix-valued polynomial path u(t) = sum_k C_k t^k with strictly
/// upper-triangular coefficients. Trailing zero coefficients are trimmed, so
/// the zero path has no coefficients and degree -1.
template <class S>
class PolyPath {
 public:
  explicit PolyPath(int dim = 3) : dim_(dim) { require_square(zeros<S>(dim), "PolyPath"); }
  PolyPath(int dim, std::vector<NilMat<S>> coeffs) : dim_(dim), coeffs_(std::move(coeffs)) {
    require_square(zeros<S>(dim), "PolyPath");
    for (const auto& c : coeffs_)
      if (c.dim() != dim_) throw DimensionError("PolyPath: coefficient dimension mismatch");
    normalize();
  }

  static PolyPath constant(const NilMat<S>& c) { return PolyPath(c.dim(), {c}); }
  static PolyPath monomial(const NilMat<S>& c, int power) {
    if (power < 0) throw DomainError("PolyPath: negative power");
    std::vector<NilMat<S>> coeffs(power + 1, NilMat<S>(c.dim()));
    coeffs[power] = c;
    return PolyPath(c.dim(), std::move(coeffs));
  }

  int dim() const { return dim_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<NilMat<S>>& coeffs() const { return coeffs_; }
  NilMat<S> coeff(int k) const { return k >= 0 && k <= degree() ? coeffs_[k] : NilMat<S>(dim_); }

  /// Horner evaluation.
  NilMat<S> operator()(const S& t) const {
    Mat<S> acc = zeros<S>(dim_);
    for (int k = degree(); k >= 0; --k) acc = (acc * t + coeffs_[k].matrix()).eval();
    return NilMat<S>::unchecked(std::move(acc));
  }

  friend PolyPath operator+(const PolyPath& p, const PolyPath& q) {
    check_dims(p, q);
    const int n = std::max(p.degree(), q.degree()) + 1;
    std::vector<NilMat<S>> c;
    c.reserve(n);
    for (int k = 0; k < n; ++k) c.push_back(p.coeff(k) + q.coeff(k));
    return PolyPath(p.dim_, std::move(c));
  }
  friend PolyPath operator-(const PolyPath& p) {
    std::vector<NilMat<S>> c;
    for (const auto& x : p.coeffs_) c.push_back(-x);
    return PolyPath(p.dim_, std::move(c));
  }
  friend PolyPath operator-(const PolyPath& p, const PolyPath& q) { return p + (-q); }
  friend PolyPath operator*(const S& s, const PolyPath& p) {
    std::vector<NilMat<S>> c;
    for (const auto& x : p.coeffs_) c.push_back(s * x);
    return PolyPath(p.dim_, std::move(c));
  }
  friend bool operator==(const PolyPath& p, const PolyPath& q) {
    if (p.dim_ != q.dim_ || p.degree() != q.degree()) return false;
    for (int k = 0; k <= p.degree(); ++k)
      if (!(p.coeffs_[k] == q.coeffs_[k])) return false;
    return true;
  }

  static void check_dims(const PolyPath& p, const PolyPath& q) {
    if (p.dim_ != q.dim_) throw DimensionError("PolyPath: dimension mismatch");
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (degree() > kMaxDegree) throw DomainError("PolyPath: degree exceeds 16");
  }

  int dim_;
  std::vector<NilMat<S>> coeffs_;
};

/// Pointwise bracket; coefficient m is sum_{i+j=m} [C_i, D_j].
template <class S>
PolyPath<S> bracket(const PolyPath<S>& p, const PolyPath<S>& q) {
  PolyPath<S>::check_dims(p, q);
  if (p.is_zero() || q.is_zero()) return PolyPath<S>(p.dim());
  std::vector<NilMat<S>> c(p.degree() + q.degree() + 1, NilMat<S>(p.dim()));
  for (int i = 0; i <= p.degree(); ++i)
    for (int j = 0; j <= q.degree(); ++j) c[i + j] = c[i + j] + bracket(p.coeffs()[i], q.coeffs()[j]);
  // trailing zeros are trimmed before the degree cap applies
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  return PolyPath<S>(p.dim(), std::move(c));
}

/// Antiderivative with zero constant term.
template <class S>
PolyPath<S> antiderivative(const PolyPath<S>& p) {
  if (p.is_zero()) return p;
  std::vector<NilMat<S>> c;
  c.reserve(p.degree() + 2);
  c.push_back(NilMat<S>(p.dim()));
  for (int k = 0; k <= p.degree(); ++k) c.push_back((S(1) / S(k + 1)) * p.coeffs()[k]);
  return PolyPath<S>(p.dim(), std::move(c));
}

template <class S>
PolyPath<S> derivative(const PolyPath<S>& p) {
  std::vector<NilMat<S>> c;
  for (int k = 1; k <= p.degree(); ++k) c.push_back(S(k) * p.coeffs()[k]);
  return PolyPath<S>(p.dim(), std::move(c));
}

/// t -> p(t + y), expanded by the binomial theorem.
template <class S>
PolyPath<S> shifted(const PolyPath<S>& p, const S& y) {
  const int d = p.degree();
  if (d < 0) return p;
  std::vector<NilMat<S>> c(d + 1, NilMat<S>(p.dim()));
  for (int k = 0; k <= d; ++k) {
    // C_k (t + y)^k = sum_j binom(k, j) y^(k-j) C_k t^j
    S binom(1);
    for (int j = 0; j <= k; ++j) {
      S yk(1);
      for (int i = 0; i < k - j; ++i) yk *= y;
      c[j] = c[j] + (binom * yk) * p.coeffs()[k];
      binom = binom * S(k - j) / S(j + 1);
    }
  }
  return PolyPath<S>(p.dim(), std::move(c));
}

template <class S>
PolyPath<double> to_double(const PolyPath<S>& p) {
  std::vector<NilMat<double>> c;
  for (const auto& x : p.coeffs()) c.push_back(NilMat<double>::unchecked(to_double(x.matrix())));
  return PolyPath<double>(p.dim(), std::move(c));
}

}  // namespace multcalc
