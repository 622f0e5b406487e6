#include "multcalc/differential.hpp"
#include "multcalc/random.hpp"

#include <gtest/gtest.h>

using namespace multcalc;
using Q = Rational;

namespace {

NilMat<Q> e(int i) { return heis_basis<Q>(i); }
LieDerivation<Q> ad(int i) { return LieDerivation<Q>::ad(e(i)); }

}  // namespace

TEST(DiffClosedForm, Examples) {
  const auto d = diff_closed_form(ad(0));
  EXPECT_EQ(d(exp_nilpotent(e(1))), exp_nilpotent(e(2)));
  EXPECT_EQ(d(exp_nilpotent(e(0))), Unipotent<Q>::identity_of(3));
  const auto zero = diff_closed_form(LieDerivation<Q>(LieOperator<Q>::zero()));
  SplitMix64 rng(90);
  EXPECT_EQ(zero(random_unipotent<Q>(rng)), Unipotent<Q>::identity_of(3));
}

TEST(DiffClosedForm, RejectsNonDerivations) {
  EXPECT_THROW(diff_closed_form(LieDerivation<Q>(LieOperator<Q>::identity())), DomainError);
  EXPECT_THROW(diff_closed_form(LieDerivation<Q>(LieOperator<Q>::projection_to_center())), DomainError);
}

TEST(DiffFinite, Examples) {
  const auto d = diff_closed_form(ad(0));
  Residual r = diffg0e_residual(d, e(0), e(1));
  EXPECT_TRUE(r.exact);
  EXPECT_TRUE(exactly_equal(r.lhs, to_double(exp_nilpotent(e(2)).matrix())));
  r = diffg0e_residual(d, e(1), e(1));
  EXPECT_TRUE(r.exact);
  EXPECT_TRUE(exactly_equal(r.lhs, to_double(exp_nilpotent(Q(2) * e(2)).matrix())));
  SplitMix64 rng(91);
  const NilMat<Q> u = random_nil<Q>(rng);
  r = diffg0e_residual(d, u, NilMat<Q>(3));
  EXPECT_TRUE(r.exact);
  EXPECT_TRUE(exactly_equal(r.lhs, to_double(d(exp_nilpotent(u)).matrix())));
}

TEST(DiffFinite, ExactOnRandomPairs) {
  SplitMix64 rng(92);
  for (int i = 0; i < 3; ++i) {
    const auto d = diff_closed_form(ad(i));
    for (int k = 0; k < 200; ++k) ASSERT_TRUE(diffg0e_residual(d, random_nil<Q>(rng), random_nil<Q>(rng)).exact);
  }
}

TEST(DiffFinite, GeneralDerivationExact) {
  // Any map sending E12, E23 to the center and E13 to (tr) E13 is a derivation.
  SplitMix64 rng(93);
  for (int k = 0; k < 20; ++k) {
    CoordMap<Q> m = CoordMap<Q>::Zero();
    m(0, 0) = random_scalar<Q>(rng);
    m(1, 0) = random_scalar<Q>(rng);
    m(0, 1) = random_scalar<Q>(rng);
    m(1, 1) = random_scalar<Q>(rng);
    m(2, 0) = random_scalar<Q>(rng);
    m(2, 1) = random_scalar<Q>(rng);
    m(2, 2) = m(0, 0) + m(1, 1);
    const LieDerivation<Q> d{LieOperator<Q>(m)};
    ASSERT_TRUE(d.is_derivation());
    const auto op = diff_closed_form(d);
    for (int j = 0; j < 20; ++j) ASSERT_TRUE(diffg0e_residual(op, random_nil<Q>(rng), random_nil<Q>(rng)).exact);
  }
}

TEST(DiffLimit, AgreesOnRandomPairs) {
  SplitMix64 rng(94);
  for (int i = 0; i < 3; ++i) {
    const auto d = diff_closed_form(LieDerivation<double>::ad(heis_basis<double>(i)));
    for (int k = 0; k < 20; ++k) {
      const LimitResidual r = diff_limit_residual(d, random_unipotent<double>(rng), random_unipotent<double>(rng), {});
      EXPECT_LE(r.residual.distance, 1e-6);
    }
  }
}

TEST(DiffLimit, DegenerateArguments) {
  SplitMix64 rng(95);
  const auto d = diff_closed_form(LieDerivation<double>::ad(heis_basis<double>(0)));
  const auto a = random_unipotent<double>(rng);
  const auto id = Unipotent<double>::identity_of(3);
  EXPECT_LE(diff_limit_residual(d, a, id, {}).residual.distance, 1e-12);
  EXPECT_LE(diff_limit_residual(d, id, a, {}).residual.distance, 1e-12);
}

TEST(LieDerivationCheck, Examples) {
  SplitMix64 rng(96);
  for (int k = 0; k < 50; ++k) {
    const auto u = random_nil<Q>(rng), v = random_nil<Q>(rng);
    EXPECT_TRUE(lie_derivation_residual_zero(ad(0), u, v).exact);
    EXPECT_TRUE(lie_derivation_residual_zero(LieDerivation<Q>(LieOperator<Q>::zero()), u, v).exact);
  }
  const Residual r = lie_derivation_residual_zero(LieDerivation<Q>(LieOperator<Q>::identity()), e(0), e(1));
  EXPECT_EQ(r.distance, 1.0);
}

TEST(LieDerivationCheck, BasisCompleteness) {
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(ad(i).is_derivation());
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) EXPECT_TRUE(lie_derivation_residual_zero(ad(i), e(a), e(b)).exact);
  }
  EXPECT_FALSE(LieDerivation<Q>(LieOperator<Q>::identity()).is_derivation());
}

TEST(LieDerivationCheck, LimitVersion) {
  SplitMix64 rng(97);
  const auto d = LieDerivation<double>::ad(heis_basis<double>(1));
  for (int k = 0; k < 20; ++k)
    EXPECT_LE(lie_derivation_residual_limit(d, random_nil<double>(rng), random_nil<double>(rng), {}).residual.distance,
              1e-6);
}
