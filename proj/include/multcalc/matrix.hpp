#pragma once

#include "multcalc/rational.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace multcalc {

/// Largest matrix dimension the library accepts.
inline constexpr int kMaxDim = 8;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using MatD = Mat<double>;
using MatQ = Mat<Rational>;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when an argument lies outside the domain of a map (pair-weight
/// subsets, log domain, non-unipotent powers).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double to_double(double v) { return v; }
  static double from_double(double v) { return v; }
  static bool is_finite(double v) { return std::isfinite(v); }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static double to_double(const Rational& v) { return v.to_double(); }
  static Rational from_double(double v) { return Rational(v); }
  static bool is_finite(const Rational&) { return true; }
};

template <class S>
inline constexpr bool is_exact_v = scalar_traits<S>::exact;

template <class S>
Mat<S> identity(int dim) {
  return Mat<S>::Identity(dim, dim);
}

template <class S>
Mat<S> zeros(int dim) {
  return Mat<S>::Zero(dim, dim);
}

/// Matrix unit E_ij with 1-based indices, as written in the literature.
template <class S>
Mat<S> unit(int dim, int i, int j) {
  if (i < 1 || j < 1 || i > dim || j > dim) throw DimensionError("matrix unit index out of range");
  Mat<S> m = zeros<S>(dim);
  m(i - 1, j - 1) = S(1);
  return m;
}

template <class S>
Mat<S> commutator(const Mat<S>& x, const Mat<S>& y) {
  return x * y - y * x;
}

template <class S>
MatD to_double(const Mat<S>& m) {
  if constexpr (std::is_same_v<S, double>) {
    return m;
  } else {
    return m.unaryExpr([](const S& v) { return scalar_traits<S>::to_double(v); });
  }
}

template <class S>
Mat<S> from_double(const MatD& m) {
  if constexpr (std::is_same_v<S, double>) {
    return m;
  } else {
    return m.unaryExpr([](double v) { return scalar_traits<S>::from_double(v); });
  }
}

/// Frobenius distance; for exact scalars the difference is formed exactly
/// before rounding, so equal matrices give exactly 0.
template <class S>
double frobenius_distance(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("frobenius_distance: shape mismatch");
  return to_double<S>(a - b).norm();
}

template <class S>
bool exactly_equal(const Mat<S>& a, const Mat<S>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).isZero(S(0));
}

template <class S>
void require_square(const Mat<S>& m, const char* what) {
  if (m.rows() != m.cols()) throw DimensionError(std::string(what) + ": matrix is not square");
  if (m.rows() < 1 || m.rows() > kMaxDim)
    throw DimensionError(std::string(what) + ": dimension must be in [1, 8]");
}

template <class S>
void require_finite(const Mat<S>& m, const char* what) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (!scalar_traits<S>::is_finite(m.data()[i])) throw DomainError(std::string(what) + ": non-finite entry");
}

template <class S>
void require_same_dim(const Mat<S>& a, const Mat<S>& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError(std::string(what) + ": dimension mismatch");
}

}  // namespace multcalc
