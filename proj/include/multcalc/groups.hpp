#pragma once

// Concrete group instances. Every element type G provides the free functions
//   mul(a, b), inverse(a), identity_like(a), equal(a, b), distance(a, b)
// found by argument-dependent lookup; generic code is written against those.

#include "multcalc/nilpotent.hpp"

#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <vector>

namespace multcalc {

template <class G>
concept GroupElement = requires(const G& a, const G& b) {
  { mul(a, b) } -> std::convertible_to<G>;
  { inverse(a) } -> std::convertible_to<G>;
  { identity_like(a) } -> std::convertible_to<G>;
  { equal(a, b) } -> std::convertible_to<bool>;
  { distance(a, b) } -> std::convertible_to<double>;
};

// --- general invertible matrices (double) ---------------------------------

inline MatD mul(const MatD& a, const MatD& b) {
  require_same_dim(a, b, "mul");
  return a * b;
}
inline MatD inverse(const MatD& a) { return a.inverse(); }
inline MatD identity_like(const MatD& a) { return MatD::Identity(a.rows(), a.cols()); }
inline bool equal(const MatD& a, const MatD& b) { return exactly_equal(a, b); }
inline double distance(const MatD& a, const MatD& b) { return frobenius_distance(a, b); }
inline MatD to_matrix(const MatD& a) { return a; }

// --- exp(g) . {I, -I} --------------------------------------------------------

/// sign * body with sign in {+1, -1}. The scalar sign commutes with every
/// matrix, so the group law is componentwise.
template <class S>
struct SignedUnipotent {
  int sign = 1;
  Unipotent<S> body;

  SignedUnipotent() = default;
  SignedUnipotent(int s, Unipotent<S> b) : sign(s), body(std::move(b)) {
    if (s != 1 && s != -1) throw DomainError("SignedUnipotent: sign must be +1 or -1");
  }
  int dim() const { return body.dim(); }
};

template <class S>
SignedUnipotent<S> mul(const SignedUnipotent<S>& a, const SignedUnipotent<S>& b) {
  return {a.sign * b.sign, mul(a.body, b.body)};
}
template <class S>
SignedUnipotent<S> inverse(const SignedUnipotent<S>& a) {
  return {a.sign, inverse(a.body)};
}
template <class S>
SignedUnipotent<S> identity_like(const SignedUnipotent<S>& a) {
  return {1, identity_like(a.body)};
}
template <class S>
bool equal(const SignedUnipotent<S>& a, const SignedUnipotent<S>& b) {
  return a.sign == b.sign && a.body == b.body;
}
template <class S>
MatD to_matrix(const SignedUnipotent<S>& a) {
  return static_cast<double>(a.sign) * to_double(a.body.matrix());
}
template <class S>
double distance(const SignedUnipotent<S>& a, const SignedUnipotent<S>& b) {
  if constexpr (is_exact_v<S>) {
    if (equal(a, b)) return 0.0;
  }
  const Mat<S> lhs = S(a.sign) * a.body.matrix();
  const Mat<S> rhs = S(b.sign) * b.body.matrix();
  return frobenius_distance(lhs, rhs);
}

// --- symmetric group S3 ------------------------------------------------------

/// Permutation of {0,1,2}; image[i] is where i is sent.
/// Composition is (p*q)(i) = p(q(i)).
struct Perm3 {
  std::array<int, 3> image{0, 1, 2};

  static Perm3 from_index(int idx);
  /// Position in the lexicographic list of all six permutations.
  int index() const;
  static const std::array<Perm3, 6>& all();
  bool is_even() const;
  friend bool operator==(const Perm3&, const Perm3&) = default;
};

Perm3 mul(const Perm3& p, const Perm3& q);
Perm3 inverse(const Perm3& p);
inline Perm3 identity_like(const Perm3&) { return Perm3{}; }
inline bool equal(const Perm3& a, const Perm3& b) { return a == b; }
/// Frobenius distance of the permutation matrices.
double distance(const Perm3& a, const Perm3& b);
MatD to_matrix(const Perm3& p);
std::string to_string(const Perm3& p);

// --- finitely supported sequences --------------------------------------------

/// Largest support a SeqElt may have.
inline constexpr int kMaxSupport = 64;

/// Element of the eventually-identity subgroup of G^infinity. Entries past
/// the stored prefix are the identity; trailing identities are trimmed.
template <class B>
class SeqElt {
 public:
  SeqElt() = default;
  explicit SeqElt(std::vector<B> entries) : entries_(std::move(entries)) { normalize(); }

  const std::vector<B>& entries() const { return entries_; }
  int support() const { return static_cast<int>(entries_.size()); }
  /// Component k (0-based); identity beyond the support.
  B at(int k, const B& unit) const { return k < support() ? entries_[k] : unit; }

  /// (a, w) -> w
  SeqElt tail() const {
    if (entries_.empty()) return {};
    return SeqElt(std::vector<B>(entries_.begin() + 1, entries_.end()));
  }
  /// w -> (head, w)
  SeqElt prepend(const B& head) const {
    std::vector<B> e;
    e.reserve(entries_.size() + 1);
    e.push_back(head);
    e.insert(e.end(), entries_.begin(), entries_.end());
    return SeqElt(std::move(e));
  }

 private:
  void normalize() {
    while (!entries_.empty() && equal(entries_.back(), identity_like(entries_.back()))) entries_.pop_back();
    if (support() > kMaxSupport) throw DomainError("SeqElt: support exceeds 64");
  }

  std::vector<B> entries_;
};

template <class B>
SeqElt<B> mul(const SeqElt<B>& a, const SeqElt<B>& b) {
  const int n = std::max(a.support(), b.support());
  if (n == 0) return {};
  const B unit = identity_like(a.support() > 0 ? a.entries().front() : b.entries().front());
  std::vector<B> e;
  e.reserve(n);
  for (int k = 0; k < n; ++k) e.push_back(mul(a.at(k, unit), b.at(k, unit)));
  return SeqElt<B>(std::move(e));
}
template <class B>
SeqElt<B> inverse(const SeqElt<B>& a) {
  std::vector<B> e;
  e.reserve(a.entries().size());
  for (const B& x : a.entries()) e.push_back(inverse(x));
  return SeqElt<B>(std::move(e));
}
template <class B>
SeqElt<B> identity_like(const SeqElt<B>&) {
  return {};
}
template <class B>
bool equal(const SeqElt<B>& a, const SeqElt<B>& b) {
  if (a.support() != b.support()) return false;
  for (int k = 0; k < a.support(); ++k)
    if (!equal(a.entries()[k], b.entries()[k])) return false;
  return true;
}
template <class B>
double distance(const SeqElt<B>& a, const SeqElt<B>& b) {
  const int n = std::max(a.support(), b.support());
  if (n == 0) return 0.0;
  const B unit = identity_like(a.support() > 0 ? a.entries().front() : b.entries().front());
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double d = distance(a.at(k, unit), b.at(k, unit));
    sum += d * d;
  }
  return std::sqrt(sum);
}

/// Components side by side; a 0x0 matrix for the identity sequence.
template <class B>
MatD to_matrix(const SeqElt<B>& a) {
  if (a.support() == 0) return MatD(0, 0);
  const MatD first = to_matrix(a.entries().front());
  MatD out(first.rows(), first.cols() * a.support());
  for (int k = 0; k < a.support(); ++k) out.middleCols(k * first.cols(), first.cols()) = to_matrix(a.entries()[k]);
  return out;
}

template <class G>
G conj_by(const G& g, const G& x) {
  return mul(mul(g, x), inverse(g));
}

/// g^n for n >= 0 by binary exponentiation.
template <class G>
G power_int(const G& g, std::int64_t n) {
  if (n < 0) throw DomainError("power_int: negative exponent");
  G result = identity_like(g);
  G base = g;
  while (n > 0) {
    if (n & 1) result = mul(result, base);
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

}  // namespace multcalc
