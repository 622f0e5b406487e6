#pragma once

#include "multcalc/groups.hpp"
#include "multcalc/matexp.hpp"

#include <array>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

namespace multcalc {

enum class PairWeightKind { identity, inverse, power, shift, signed_power, custom_table };

/// Which composite of the pair to apply. `LH` means L after H.
enum class PairSide { L, H, LH, HL };

/// A parametrised pair of group self-maps (L_lambda, H_lambda) with
/// L_lambda o H_lambda = id on the declared domain subset.
///
///   identity      L = H = id                      (any group)
///   inverse       L = H = (.)^-1                  (any group)
///   power         L = P_lambda, H = P_{1/lambda}  (unipotent elements)
///   shift         L(a, w) = w, H(w) = (e, w)      (SeqElt)
///   signed_power  L(s, b) = (-s, b^lambda),
///                 H(s, b) = (-s, b^{1/lambda})    (SignedUnipotent, domain sign = -1)
///   custom_table  explicit L, H tables             (S3, finite carrier)
///
/// L_0 maps everything to the identity for the power kinds.
struct PairWeightFamily {
  PairWeightKind kind = PairWeightKind::identity;
  double lambda = 1.0;
  std::array<int, 6> table_l{0, 1, 2, 3, 4, 5};
  std::array<int, 6> table_h{0, 1, 2, 3, 4, 5};
  std::vector<int> table_domain;  // empty: whole carrier

  static PairWeightFamily identity() { return {}; }
  static PairWeightFamily inverse() { return {PairWeightKind::inverse}; }
  static PairWeightFamily power(double lambda) { return {PairWeightKind::power, lambda}; }
  static PairWeightFamily shift() { return {PairWeightKind::shift}; }
  static PairWeightFamily signed_power(double lambda) { return {PairWeightKind::signed_power, lambda}; }
  /// Tables are indexed by Perm3::index(); they must be total on S3.
  static PairWeightFamily custom_table(std::array<int, 6> l, std::array<int, 6> h, std::vector<int> domain = {});

  PairWeightFamily with_lambda(double l) const {
    PairWeightFamily f = *this;
    f.lambda = l;
    return f;
  }

  bool is_unital() const;
  bool is_inverse_preserving() const;
  bool is_bijective() const;
  std::string name() const;
};

std::string to_string(PairWeightKind kind);
std::optional<PairWeightKind> parse_pair_weight_kind(const std::string& s);

namespace detail {

template <class T>
struct is_unipotent : std::false_type {};
template <class S>
struct is_unipotent<Unipotent<S>> : std::true_type {};

template <class T>
struct is_signed_unipotent : std::false_type {};
template <class S>
struct is_signed_unipotent<SignedUnipotent<S>> : std::true_type {};

template <class T>
struct is_seq : std::false_type {};
template <class B>
struct is_seq<SeqElt<B>> : std::true_type {};

template <class S>
Unipotent<S> unipotent_power(const Unipotent<S>& g, double lambda, bool reciprocal) {
  if (lambda == 0.0) {
    if (reciprocal) throw DomainError("pair weight: H_0 is undefined");
    return identity_like(g);
  }
  if constexpr (is_exact_v<S>) {
    const S r = reciprocal ? S(1) / S(lambda) : S(lambda);
    return power_real(g, r);
  } else {
    return power_real(g, reciprocal ? 1.0 / lambda : lambda);
  }
}

template <class G>
G apply_one(const PairWeightFamily& f, const G& g, bool is_h) {
  switch (f.kind) {
    case PairWeightKind::identity:
      return g;
    case PairWeightKind::inverse:
      return inverse(g);
    case PairWeightKind::power:
      if constexpr (is_unipotent<G>::value) {
        return unipotent_power(g, f.lambda, is_h);
      } else if constexpr (std::is_same_v<G, MatD>) {
        if (f.lambda == 0.0) {
          if (is_h) throw DomainError("pair weight: H_0 is undefined");
          return identity_like(g);
        }
        return power_real(g, is_h ? 1.0 / f.lambda : f.lambda);
      } else if constexpr (is_signed_unipotent<G>::value) {
        if (g.sign != 1) throw DomainError("power family: element lies outside exp(g)");
        return G(1, unipotent_power(g.body, f.lambda, is_h));
      } else {
        throw DomainError("power family is not defined on this group");
      }
    case PairWeightKind::shift:
      if constexpr (is_seq<G>::value) {
        if (!is_h) return g.tail();
        if (g.support() == 0) return g;
        return g.prepend(identity_like(g.entries().front()));
      } else {
        throw DomainError("shift family is only defined on SeqElt");
      }
    case PairWeightKind::signed_power:
      if constexpr (is_signed_unipotent<G>::value) {
        return G(-g.sign, unipotent_power(g.body, f.lambda, is_h));
      } else {
        throw DomainError("signed-power family is only defined on SignedUnipotent");
      }
    case PairWeightKind::custom_table:
      if constexpr (std::is_same_v<G, Perm3>) {
        return Perm3::from_index(is_h ? f.table_h[g.index()] : f.table_l[g.index()]);
      } else {
        throw DomainError("custom-table family is only defined on S3");
      }
  }
  throw DomainError("pair weight: unknown kind");
}

}  // namespace detail

/// Whether g lies in the family's declared domain subset S.
template <class G>
bool in_domain(const PairWeightFamily& f, const G& g) {
  if (f.kind == PairWeightKind::signed_power) {
    if constexpr (detail::is_signed_unipotent<G>::value) return g.sign == -1;
    return false;
  }
  if (f.kind == PairWeightKind::custom_table && !f.table_domain.empty()) {
    if constexpr (std::is_same_v<G, Perm3>) {
      for (int k : f.table_domain)
        if (k == g.index()) return true;
    }
    return false;
  }
  return true;
}

/// L_lambda on the whole group (no domain check).
template <class G>
G pair_L(const PairWeightFamily& f, const G& g) {
  return detail::apply_one(f, g, false);
}

/// H_lambda on the whole group (no domain check).
template <class G>
G pair_H(const PairWeightFamily& f, const G& g) {
  return detail::apply_one(f, g, true);
}

/// Checked application: g must lie in the declared domain subset.
template <class G>
G apply_pair_weight(const PairWeightFamily& family, PairSide which, double lambda, const G& g) {
  const PairWeightFamily f = family.with_lambda(lambda);
  if (!in_domain(f, g)) throw DomainError("pair weight: element outside the declared domain subset");
  switch (which) {
    case PairSide::L:
      return pair_L(f, g);
    case PairSide::H:
      return pair_H(f, g);
    case PairSide::LH:
      return pair_L(f, pair_H(f, g));
    case PairSide::HL:
      return pair_H(f, pair_L(f, g));
  }
  throw DomainError("pair weight: unknown side");
}

}  // namespace multcalc
