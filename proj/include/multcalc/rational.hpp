#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <ostream>
#include <string>

namespace multcalc {

/// Exact rational scalar usable as an Eigen matrix entry.
///
/// mpq_class returns expression templates from its operators, which Eigen
/// cannot deduce through; this wrapper evaluates every operation eagerly.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long long v) : q_(static_cast<long>(v)) {}  // NOLINT
  Rational(long num, long den) : q_(num, den) { q_.canonicalize(); }
  /// Exact conversion; every finite double is a dyadic rational.
  explicit Rational(double v) : q_(v) {}
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  const mpq_class& get() const { return q_; }
  double to_double() const { return q_.get_d(); }
  std::string str() const { return q_.get_str(); }
  bool is_zero() const { return sgn(q_) == 0; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) { q_ /= o.q_; return *this; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ / b.q_)); }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.q_.get_str(); }

 private:
  mpq_class q_;
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }
inline Rational abs2(const Rational& r) { return r * r; }
inline Rational conj(const Rational& r) { return r; }
inline Rational real(const Rational& r) { return r; }
inline Rational imag(const Rational&) { return Rational(0); }

}  // namespace multcalc

namespace Eigen {

template <>
struct NumTraits<multcalc::Rational> : GenericNumTraits<multcalc::Rational> {
  using Real = multcalc::Rational;
  using NonInteger = multcalc::Rational;
  using Nested = multcalc::Rational;
  using Literal = multcalc::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 40,
    MulCost = 80
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
