#include "multcalc/groups.hpp"
#include "multcalc/lie.hpp"
#include "multcalc/matexp.hpp"
#include "multcalc/pair_weight.hpp"
#include "multcalc/random.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace multcalc;
using Q = Rational;

namespace {

NilMat<Q> qnil(Q a, Q b, Q c) { return heis<Q>(a, b, c); }
Unipotent<Q> qgroup(Q a, Q b, Q c) {
  return Unipotent<Q>(oracle::qmat({{1, a, c}, {0, 1, b}, {0, 0, 1}}));
}

}  // namespace

TEST(Mul, HeisenbergProduct) {
  const auto p = mul(qgroup(1, 0, 0), qgroup(0, 1, 0));
  EXPECT_EQ(p, qgroup(1, 1, 1));
}

TEST(Mul, IdentityAndInverse) {
  SplitMix64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const auto a = random_unipotent<Q>(rng, 4);
    EXPECT_EQ(mul(a, Unipotent<Q>::identity_of(4)), a);
    EXPECT_EQ(mul(a, inverse(a)), Unipotent<Q>::identity_of(4));
    EXPECT_EQ(mul(inverse(a), a), Unipotent<Q>::identity_of(4));
  }
}

TEST(Mul, Associative) {
  SplitMix64 rng(12);
  for (int k = 0; k < 50; ++k) {
    const auto a = random_unipotent<Q>(rng), b = random_unipotent<Q>(rng), c = random_unipotent<Q>(rng);
    EXPECT_EQ(mul(mul(a, b), c), mul(a, mul(b, c)));
  }
}

TEST(Mul, DimensionMismatchThrows) {
  EXPECT_THROW(mul(Unipotent<Q>::identity_of(3), Unipotent<Q>::identity_of(2)), DimensionError);
}

TEST(NilMatType, RejectsLowerEntries) {
  EXPECT_THROW(NilMat<Q>(oracle::qmat({{0, 1}, {1, 0}})), DomainError);
  EXPECT_THROW(NilMat<Q>(oracle::qmat({{1, 0}, {0, 0}})), DomainError);
  EXPECT_THROW(Unipotent<Q>(oracle::qmat({{2, 0}, {0, 1}})), DomainError);
}

TEST(NilMatType, NilpotentOfIndexDim) {
  SplitMix64 rng(13);
  for (int dim = 1; dim <= 8; ++dim) {
    const NilMat<Q> x = random_nil<Q>(rng, dim);
    MatQ p = identity<Q>(dim);
    for (int k = 0; k < dim; ++k) p = p * x.matrix();
    EXPECT_TRUE(exactly_equal(p, zeros<Q>(dim)));
  }
}

TEST(ExpNilpotent, Examples) {
  EXPECT_EQ(exp_nilpotent(qnil(0, 0, 0)), qgroup(0, 0, 0));
  EXPECT_EQ(exp_nilpotent(qnil(1, 0, 0)), qgroup(1, 0, 0));
  EXPECT_EQ(exp_nilpotent(qnil(1, 1, 0)), qgroup(1, 1, Q(1, 2)));
}

TEST(ExpNilpotent, QuadraticSeriesInDimThree) {
  SplitMix64 rng(14);
  for (int k = 0; k < 200; ++k) {
    const NilMat<Q> x = random_nil<Q>(rng);
    const MatQ expect = identity<Q>(3) + x.matrix() + Q(1, 2) * (x.matrix() * x.matrix());
    EXPECT_TRUE(exactly_equal(exp_nilpotent(x).matrix(), expect));
  }
}

TEST(LogUnipotent, Examples) {
  EXPECT_EQ(log_unipotent(qgroup(0, 0, 0)), qnil(0, 0, 0));
  EXPECT_EQ(log_unipotent(qgroup(1, 0, 0)), qnil(1, 0, 0));
  EXPECT_EQ(log_unipotent(qgroup(1, 1, 1)), qnil(1, 1, Q(1, 2)));
}

TEST(LogUnipotent, RoundTripExact) {
  SplitMix64 rng(15);
  for (int k = 0; k < 300; ++k) {
    const int dim = static_cast<int>(rng.uniform_int(1, 6));
    const NilMat<Q> x = random_nil<Q>(rng, dim);
    EXPECT_EQ(log_unipotent(exp_nilpotent(x)), x);
    const Unipotent<Q> g = random_unipotent<Q>(rng, dim);
    EXPECT_EQ(exp_nilpotent(log_unipotent(g)), g);
  }
}

TEST(PowerReal, Examples) {
  EXPECT_EQ(power_real(qgroup(1, 0, 0), Q(5, 2)), qgroup(Q(5, 2), 0, 0));
  SplitMix64 rng(16);
  const auto g = random_unipotent<Q>(rng);
  EXPECT_EQ(power_real(g, Q(0)), Unipotent<Q>::identity_of(3));
  EXPECT_EQ(power_real(g, Q(1)), g);
}

TEST(PowerReal, OneParameterLaw) {
  SplitMix64 rng(17);
  for (int k = 0; k < 500; ++k) {
    const auto g = random_unipotent<double>(rng, static_cast<int>(rng.uniform_int(2, 5)));
    const double r = rng.uniform(-3, 3), s = rng.uniform(-3, 3);
    EXPECT_LE(distance(power_real(g, r + s), mul(power_real(g, r), power_real(g, s))), 1e-12);
  }
}

TEST(PowerReal, RejectsNonUnipotentMatrices) {
  EXPECT_THROW(power_real(oracle::dmat({{2, 0}, {0, 1}}), 0.5), DomainError);
  EXPECT_NO_THROW(power_real(oracle::dmat({{1, 3}, {0, 1}}), 0.5));
}

TEST(ExpGeneral, Examples) {
  EXPECT_TRUE(exactly_equal(exp_general(MatD::Zero(3, 3)), MatD(MatD::Identity(3, 3))));
  const MatD e = exp_general(oracle::dmat({{0, 1}, {1, 0}}));
  EXPECT_LE((e - oracle::swap_exp()).norm() / oracle::swap_exp().norm(), 1e-12);
}

TEST(ExpGeneral, MatchesNilpotentKernel) {
  SplitMix64 rng(18);
  for (int k = 0; k < 200; ++k) {
    const auto x = random_nil<double>(rng, static_cast<int>(rng.uniform_int(2, 6)));
    EXPECT_LE(frobenius_distance(exp_general(x.matrix()), exp_nilpotent(x).matrix()), 1e-13);
  }
}

TEST(ExpGeneral, RelativeErrorAgainstSeries) {
  SplitMix64 rng(19);
  for (int k = 0; k < 100; ++k) {
    const MatD x = random_dense(rng, static_cast<int>(rng.uniform_int(2, 5)), rng.uniform(0.1, 3.0));
    const MatD ref = oracle::taylor_exp(x);
    EXPECT_LE((exp_general(x) - ref).norm() / ref.norm(), 1e-12);
  }
}

TEST(ExpGeneral, LargeNormAgainstSquaredSeries) {
  SplitMix64 rng(20);
  for (int k = 0; k < 30; ++k) {
    const MatD x = random_dense(rng, 3, rng.uniform(5.0, 10.0));
    MatD ref = oracle::taylor_exp(x / 16.0);
    for (int s = 0; s < 4; ++s) ref = ref * ref;
    EXPECT_LE((exp_general(x) - ref).norm() / ref.norm(), 1e-12);
  }
}

TEST(ExpGeneral, RejectsNonFinite) {
  MatD x = MatD::Zero(2, 2);
  x(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(exp_general(x), DomainError);
}

TEST(LogNearIdentity, Examples) {
  EXPECT_LE(log_near_identity(MatD::Identity(3, 3)).norm(), 0.0);
  const MatD s = 0.1 * oracle::dmat({{0, 1}, {1, 0}});
  EXPECT_LE((log_near_identity(oracle::taylor_exp(s)) - s).norm(), 1e-10);
  const MatD u = oracle::heis_group(2, 3, 5);
  EXPECT_TRUE(exactly_equal(log_near_identity(u), log_unipotent(Unipotent<double>(u)).matrix()));
}

TEST(LogNearIdentity, RoundTripAndDomain) {
  SplitMix64 rng(21);
  for (int k = 0; k < 100; ++k) {
    const MatD x = random_dense(rng, 3, rng.uniform(0.01, 0.5));
    const MatD g = exp_general(x);
    if ((g - MatD::Identity(3, 3)).norm() >= 1.0) continue;
    EXPECT_LE((exp_general(log_near_identity(g)) - g).norm(), 1e-10);
  }
  EXPECT_THROW(log_near_identity(oracle::dmat({{3, 0}, {0, 1}})), DomainError);
}

TEST(SignedUnipotentGroup, ComponentwiseLaw) {
  const SignedUnipotent<Q> a(-1, qgroup(1, 0, 0));
  const SignedUnipotent<Q> b(-1, qgroup(0, 1, 0));
  const auto p = mul(a, b);
  EXPECT_EQ(p.sign, 1);
  EXPECT_EQ(p.body, qgroup(1, 1, 1));
  EXPECT_TRUE(exactly_equal(to_matrix(p), MatD(to_matrix(a) * to_matrix(b))));
  EXPECT_THROW(SignedUnipotent<Q>(2, qgroup(0, 0, 0)), DomainError);
}

TEST(SeqEltGroup, ComponentwiseAndTrimmed) {
  using Seq = SeqElt<Perm3>;
  const Perm3 s{{1, 0, 2}}, t{{0, 2, 1}};
  const Seq a({s, t});
  const Seq b({s});
  const Seq p = mul(a, b);
  EXPECT_EQ(p.support(), 2);
  EXPECT_EQ(p.entries()[0], Perm3{});
  EXPECT_TRUE(equal(mul(a, inverse(a)), Seq{}));
  EXPECT_EQ(Seq({s, Perm3{}, Perm3{}}).support(), 1);
  EXPECT_EQ(a.tail().entries().front(), t);
  EXPECT_THROW(Seq(std::vector<Perm3>(65, s)), DomainError);
}

TEST(Perm3Group, MultiplicationTableIsAGroup) {
  for (const Perm3& p : Perm3::all()) {
    EXPECT_EQ(mul(p, inverse(p)), Perm3{});
    for (const Perm3& q : Perm3::all())
      for (const Perm3& r : Perm3::all()) EXPECT_EQ(mul(mul(p, q), r), mul(p, mul(q, r)));
  }
  EXPECT_NE(mul(Perm3{{1, 0, 2}}, Perm3{{0, 2, 1}}), mul(Perm3{{0, 2, 1}}, Perm3{{1, 0, 2}}));
}

TEST(PairWeight, Examples) {
  const auto g = exp_nilpotent(qnil(1, 0, 0));
  EXPECT_EQ(apply_pair_weight(PairWeightFamily::power(1.0), PairSide::L, 0.5, g), exp_nilpotent(qnil(Q(1, 2), 0, 0)));

  using Seq = SeqElt<Perm3>;
  const Seq aw({Perm3{{1, 0, 2}}, Perm3{{0, 2, 1}}, Perm3{{2, 0, 1}}});
  const Seq hl = apply_pair_weight(PairWeightFamily::shift(), PairSide::HL, 0.0, aw);
  EXPECT_TRUE(equal(hl, Seq({Perm3{}, Perm3{{0, 2, 1}}, Perm3{{2, 0, 1}}})));

  const SignedUnipotent<Q> s(-1, exp_nilpotent(qnil(1, 0, 0)));
  const auto back = apply_pair_weight(PairWeightFamily::signed_power(1.0), PairSide::LH, 3.0, s);
  EXPECT_TRUE(equal(back, s));
}

TEST(PairWeight, DomainViolations) {
  const SignedUnipotent<Q> plus(1, qgroup(1, 0, 0));
  EXPECT_THROW(apply_pair_weight(PairWeightFamily::signed_power(1.0), PairSide::L, 2.0, plus), DomainError);
  EXPECT_THROW(apply_pair_weight(PairWeightFamily::power(1.0), PairSide::H, 0.0, qgroup(1, 0, 0)), DomainError);
  EXPECT_EQ(apply_pair_weight(PairWeightFamily::power(1.0), PairSide::L, 0.0, qgroup(1, 2, 3)), qgroup(0, 0, 0));
  EXPECT_THROW(pair_L(PairWeightFamily::shift(), qgroup(1, 0, 0)), DomainError);
}

TEST(PairWeight, FlagsPerKind) {
  EXPECT_TRUE(PairWeightFamily::identity().is_unital());
  EXPECT_TRUE(PairWeightFamily::inverse().is_inverse_preserving());
  EXPECT_TRUE(PairWeightFamily::power(2.0).is_bijective());
  EXPECT_FALSE(PairWeightFamily::power(0.0).is_bijective());
  EXPECT_TRUE(PairWeightFamily::shift().is_unital());
  EXPECT_FALSE(PairWeightFamily::shift().is_bijective());
  EXPECT_FALSE(PairWeightFamily::signed_power(1.0).is_unital());
  EXPECT_TRUE(PairWeightFamily::signed_power(1.0).is_bijective());
  std::array<int, 6> id{0, 1, 2, 3, 4, 5};
  EXPECT_TRUE(PairWeightFamily::custom_table(id, id).is_bijective());
  EXPECT_THROW(PairWeightFamily::custom_table({0, 1, 2, 3, 4, 9}, id), DomainError);
}

// L(H(g)) = g on 1000 domain elements for every shipped family.
TEST(PairWeight, LeftInverseLawProperty) {
  SplitMix64 rng(22);
  for (int k = 0; k < 1000; ++k) {
    const Q lam = random_scalar<Q>(rng);
    const double lamd = lam == Q(0) ? 2.0 : lam.to_double();
    const auto g = random_unipotent<Q>(rng);
    const auto gd = random_unipotent<double>(rng, 4);
    for (const auto& f : {PairWeightFamily::identity(), PairWeightFamily::inverse(), PairWeightFamily::power(1.0)}) {
      EXPECT_EQ(apply_pair_weight(f, PairSide::LH, lamd, g), g);
      EXPECT_LE(distance(apply_pair_weight(f, PairSide::LH, lamd, gd), gd), 1e-13);
    }
    const SignedUnipotent<Q> s(-1, g);
    EXPECT_TRUE(equal(apply_pair_weight(PairWeightFamily::signed_power(1.0), PairSide::LH, lamd, s), s));
    const auto w = random_seq<Perm3>(rng, 8, random_perm);
    EXPECT_TRUE(equal(apply_pair_weight(PairWeightFamily::shift(), PairSide::LH, 0.0, w), w));
  }
  const std::array<int, 6> l{0, 2, 1, 4, 3, 5};
  const auto tab = PairWeightFamily::custom_table(l, l);
  for (const Perm3& p : Perm3::all()) EXPECT_EQ(apply_pair_weight(tab, PairSide::LH, 1.0, p), p);
}

