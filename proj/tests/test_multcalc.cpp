#include "multcalc/calculus.hpp"
#include "multcalc/lie.hpp"
#include "multcalc/random.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace multcalc;
using Q = Rational;
using P = PolyPath<Q>;

namespace {

NilMat<Q> e12() { return heis<Q>(1, 0, 0); }
NilMat<Q> e23() { return heis<Q>(0, 1, 0); }
NilMat<Q> e13() { return heis<Q>(0, 0, 1); }
P mono(const NilMat<Q>& c, int k) { return P::monomial(c, k); }

// E12 + t E23
P fixture() { return mono(e12(), 0) + mono(e23(), 1); }

Unipotent<Q> group(Q a, Q b, Q c) { return Unipotent<Q>(oracle::qmat({{1, a, c}, {0, 1, b}, {0, 0, 1}})); }

// I + N + N^2/2 written out in coordinates: exp(aE12 + bE23 + cE13).
Unipotent<Q> exp_coords(Q a, Q b, Q c) { return group(a, b, c + a * b / Q(2)); }

std::function<Unipotent<double>(double)> exp_path(const PolyPath<double>& u) {
  return [u](double t) { return exp_nilpotent(u(t)); };
}

std::function<MatD(double)> as_matrix_path(const PolyPath<double>& u) {
  return [u](double t) { return MatD(u(t).matrix()); };
}

}  // namespace

// --- closed forms --------------------------------------------------------------

TEST(ProductIntegralClosed, Examples) {
  SplitMix64 rng(41);
  const NilMat<Q> c = random_nil<Q>(rng);
  const Q x = Q(7, 3);
  EXPECT_EQ(product_integral_closed_nilpotent(P::constant(c), x), exp_nilpotent(x * c));
  EXPECT_EQ(product_integral_closed_nilpotent(fixture(), Q(1)), exp_coords(1, Q(1, 2), Q(-1, 12)));
  EXPECT_EQ(product_integral_closed_nilpotent(fixture(), Q(1)), group(1, Q(1, 2), Q(1, 6)));
  EXPECT_EQ(product_integral_closed_nilpotent(mono(e12(), 1), x), exp_nilpotent(x * x / Q(2) * e12()));
}

TEST(ProductIntegralClosed, RejectsOtherDims) {
  const PolyPath<Q> u = PolyPath<Q>::constant(NilMat<Q>(4));
  EXPECT_THROW(product_integral_closed_nilpotent(u, Q(1)), DimensionError);
}

TEST(ProductIntegralClosed, AgreesWithOdeSolver) {
  SplitMix64 rng(42);
  for (int k = 0; k < 40; ++k) {
    const PolyPath<double> u = random_path<double>(rng, 2);
    const double x = rng.uniform(-1.5, 1.5);
    const MatD ref = oracle::rk4_ordered_exp(as_matrix_path(u), 3, x, 2000);
    EXPECT_LE(frobenius_distance(product_integral_closed_nilpotent(u, x).matrix(), ref), 1e-10);
  }
}

TEST(ProductIntegralClosed, ConcatenationExact) {
  SplitMix64 rng(43);
  for (int k = 0; k < 100; ++k) {
    const P u = random_path<Q>(rng, 3);
    Q y = random_scalar<Q>(rng), d = random_scalar<Q>(rng);
    if (y < Q(0)) y = -y;
    if (d < Q(0)) d = -d;
    const Q x = y + d;
    EXPECT_EQ(product_integral_closed_nilpotent(u, x),
              mul(product_integral_closed_between(u, y, x), product_integral_closed_nilpotent(u, y)));
  }
}

// --- numeric product integral -------------------------------------------------------

TEST(ProductIntegralNumeric, ConstantPathIsExactAtEveryLevel) {
  const auto a = [](double) { return exp_nilpotent(heis<double>(1, 0, 0)); };
  const auto r = product_integral_numeric<Unipotent<double>>(a, PairWeightFamily::power(1.0), 0.0, 1.0, {});
  for (const MatD& v : r.values) EXPECT_LE(frobenius_distance(v, oracle::heis_group(1, 0, 0)), 1e-15);
}

TEST(ProductIntegralNumeric, EmptyIntervalIsIdentity) {
  const auto r = product_integral_numeric<Unipotent<double>>(exp_path(to_double(fixture())),
                                                             PairWeightFamily::power(1.0), 0.0, 0.0, {});
  for (const MatD& v : r.values) EXPECT_TRUE(exactly_equal(v, MatD(MatD::Identity(3, 3))));
}

TEST(ProductIntegralNumeric, FixtureAt4096) {
  const PolyPath<double> u = to_double(fixture());
  const auto r = product_integral_numeric<Unipotent<double>>(exp_path(u), PairWeightFamily::power(1.0), 0.0, 1.0, {});
  ASSERT_EQ(r.ns.back(), 4096);
  const MatD target = oracle::heis_group(1, 0.5, 1.0 / 6.0);
  EXPECT_LE(frobenius_distance(r.last(), target), 1e-3);
  std::vector<double> errors;
  for (const MatD& v : r.values) errors.push_back(frobenius_distance(v, target));
  const double p = mean_log2_ratio(errors, 3);
  EXPECT_GE(p, 0.75);
  EXPECT_LE(p, 1.25);
}

TEST(ProductIntegralNumeric, FirstOrderOnRandomPaths) {
  SplitMix64 rng(44);
  Schedule s;
  s.kmax = 10;
  for (int k = 0; k < 20; ++k) {
    const PolyPath<double> u = random_path<double>(rng, 2);
    const double x = rng.uniform(0.5, 1.5);
    const auto r = product_integral_numeric<Unipotent<double>>(exp_path(u), PairWeightFamily::power(1.0), 0.0, x, s);
    const MatD closed = product_integral_closed_nilpotent(u, x).matrix();
    std::vector<double> errors;
    for (const MatD& v : r.values) errors.push_back(frobenius_distance(v, closed));
    if (errors.back() < 1e-12) continue;  // path with commuting values
    const double p = mean_log2_ratio(errors, 3);
    EXPECT_GE(p, 0.75);
    EXPECT_LE(p, 1.25);
  }
}

TEST(ProductIntegralNumeric, TimeOrderingWitness) {
  const PolyPath<double> u = to_double(fixture());
  Schedule s;
  s.kmax = 10;
  const auto desc = product_integral_numeric<Unipotent<double>>(exp_path(u), PairWeightFamily::power(1.0), 0.0, 1.0,
                                                                s, SampleRule::right, Ordering::time_descending);
  const auto asc = product_integral_numeric<Unipotent<double>>(exp_path(u), PairWeightFamily::power(1.0), 0.0, 1.0,
                                                               s, SampleRule::right, Ordering::time_ascending);
  const MatD closed = oracle::heis_group(1, 0.5, 1.0 / 6.0);
  EXPECT_LE(frobenius_distance(desc.extrapolated, closed), 1e-6);
  // Ascending order solves F' = F u, whose E13 entry is 1/3 instead of 1/6.
  EXPECT_GE(frobenius_distance(asc.extrapolated, closed), 0.1);
  EXPECT_LE(frobenius_distance(asc.extrapolated, oracle::heis_group(1, 0.5, 1.0 / 3.0)), 1e-6);
}

TEST(ProductIntegralNumeric, DomainViolationPropagates) {
  const auto a = [](double) { return SignedUnipotent<double>(1, Unipotent<double>::identity_of(3)); };
  EXPECT_THROW(product_integral_numeric<SignedUnipotent<double>>(a, PairWeightFamily::signed_power(1.0), 0, 1, {}),
               DomainError);
}

// --- multiplicative derivative ------------------------------------------------------

TEST(MultDerivativeClosed, Examples) {
  SplitMix64 rng(45);
  const NilMat<Q> c = random_nil<Q>(rng);
  EXPECT_EQ(mult_derivative_closed(mono(c, 1), Q(3)), exp_nilpotent(c));
  const P u = mono(e12(), 1) + mono(e23(), 2);
  const Q x = Q(5, 4);
  EXPECT_EQ(mult_derivative_closed(u, x), exp_nilpotent(e12() + Q(2) * x * e23() + x * x / Q(2) * e13()));
  EXPECT_EQ(mult_derivative_closed(P::constant(c), x), Unipotent<Q>::identity_of(3));
}

// exp(A'(x) A(x)^-1) with A = exp(u) differentiated entrywise.
TEST(MultDerivativeClosed, AgreesWithEntrywiseDerivative) {
  SplitMix64 rng(46);
  for (int k = 0; k < 100; ++k) {
    const PolyPath<double> u = random_path<double>(rng, 3);
    const double x = rng.uniform(-1, 1);
    const MatD n = u(x).matrix();
    const MatD dn = derivative(u)(x).matrix();
    const MatD a = MatD::Identity(3, 3) + n + 0.5 * n * n;
    const MatD da = dn + 0.5 * (dn * n + n * dn);
    const MatD ref = oracle::taylor_exp(da * a.inverse());
    EXPECT_LE(frobenius_distance(mult_derivative_closed(u, x).matrix(), ref), 1e-12);
  }
}

TEST(MultDerivativeNumeric, Examples) {
  const NilMat<double> c = heis<double>(0.5, -1.0, 2.0);
  const auto line = [c](double t) { return exp_nilpotent(t * c); };
  const auto r1 = mult_derivative_numeric<Unipotent<double>>(line, PairWeightFamily::power(1.0), 0.3, {});
  for (const MatD& v : r1.values) EXPECT_LE(frobenius_distance(v, exp_nilpotent(c).matrix()), 1e-12);

  const PolyPath<double> u = to_double(mono(e12(), 1) + mono(e23(), 2));
  const auto r2 = mult_derivative_numeric<Unipotent<double>>(exp_path(u), PairWeightFamily::power(1.0), 1.0, {});
  EXPECT_LE(frobenius_distance(r2.extrapolated, oracle::heis_group(1, 2, 0.5 + 1.0)), 1e-4);

  const auto flat = [](double) { return exp_nilpotent(heis<double>(1, 2, 3)); };
  const auto r3 = mult_derivative_numeric<Unipotent<double>>(flat, PairWeightFamily::power(1.0), 0.0, {});
  for (const MatD& v : r3.values) EXPECT_LE(frobenius_distance(v, MatD(MatD::Identity(3, 3))), 1e-15);
}

// --- FTC ---------------------------------------------------------------------------

TEST(Ftc, Examples) {
  const auto f = ftc_check(fixture(), Q(1));
  EXPECT_EQ(f.derivative_of_integral, 0.0);
  EXPECT_EQ(f.integral_of_derivative, 0.0);
  EXPECT_TRUE(f.exact);
  // u(0) = E12 != 0, so the literal target exp(u(x)) is missed by exp(u(0)).
  EXPECT_GT(f.integral_of_derivative_literal, 0.0);

  const auto g = ftc_check(P::constant(e12() + e23()), Q(2));
  EXPECT_TRUE(g.exact);
  EXPECT_GT(g.integral_of_derivative_literal, 0.0);

  const auto h = ftc_check(mono(e13(), 2), Q(3));
  EXPECT_TRUE(h.exact);
  EXPECT_EQ(h.integral_of_derivative_literal, 0.0);
}

TEST(Ftc, ExactOnRandomCubicPaths) {
  SplitMix64 rng(47);
  for (int k = 0; k < 50; ++k) {
    const auto f = ftc_check(random_path<Q>(rng, 3), random_scalar<Q>(rng));
    EXPECT_TRUE(f.exact);
  }
}

TEST(Ftc, LiteralTargetHoldsWhenPathStartsAtZero) {
  SplitMix64 rng(48);
  for (int k = 0; k < 50; ++k) {
    P u = random_path<Q>(rng, 3);
    u = u - P::constant(u(Q(0)));
    EXPECT_EQ(ftc_check(u, random_scalar<Q>(rng)).integral_of_derivative_literal, 0.0);
  }
}

// --- integration by parts ----------------------------------------------------------

TEST(Ibp, Examples) {
  const Residual r = ibp_check_closed(P::constant(e12()), P::constant(e23()), Q(1));
  EXPECT_TRUE(r.exact);
  EXPECT_TRUE(exactly_equal(r.lhs, to_double(group(1, 1, 1).matrix())));
  EXPECT_TRUE(exactly_equal(r.rhs, to_double(exp_coords(1, 1, Q(1, 2)).matrix())));

  SplitMix64 rng(49);
  EXPECT_TRUE(ibp_check_closed(random_path<Q>(rng, 2), P(3), Q(2)).exact);
}

TEST(Ibp, ExactOnRandomQuadraticPairs) {
  SplitMix64 rng(50);
  for (int k = 0; k < 200; ++k) {
    const Residual r = ibp_check_closed(random_path<Q>(rng, 2), random_path<Q>(rng, 2), random_scalar<Q>(rng));
    EXPECT_TRUE(r.exact);
  }
}

TEST(Ibp, RightSideAgreesWithOdeSolver) {
  SplitMix64 rng(51);
  for (int k = 0; k < 10; ++k) {
    const PolyPath<double> a = random_path<double>(rng, 2), b = random_path<double>(rng, 2);
    // F_a(t) by ODE, then the right-side integrand a + F_a b F_a^-1 by a second ODE on a fine grid.
    const int steps = 4000;
    const double x = 1.0, h = x / steps;
    MatD fa = MatD::Identity(3, 3), rhs = MatD::Identity(3, 3);
    const auto am = as_matrix_path(a), bm = as_matrix_path(b);
    auto gamma = [&](double t, const MatD& f) { return MatD(am(t) + f * bm(t) * f.inverse()); };
    for (int s = 0; s < steps; ++s) {
      const double t = s * h;
      const MatD fa_mid = oracle::rk4_ordered_exp([&](double r) { return am(t + r); }, 3, h / 2, 1) * fa;
      const MatD fa_end = oracle::rk4_ordered_exp([&](double r) { return am(t + r); }, 3, h, 1) * fa;
      const MatD k1 = gamma(t, fa) * rhs;
      const MatD k2 = gamma(t + h / 2, fa_mid) * (rhs + h / 2 * k1);
      const MatD k3 = gamma(t + h / 2, fa_mid) * (rhs + h / 2 * k2);
      const MatD k4 = gamma(t + h, fa_end) * (rhs + h * k3);
      rhs += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
      fa = fa_end;
    }
    EXPECT_LE(frobenius_distance(product_integral_closed_nilpotent(ibp_exponent(a, b), x).matrix(), rhs), 1e-9);
  }
}

TEST(Ibp, NumericModeOnFixtures) {
  const std::vector<std::pair<PolyPath<double>, PolyPath<double>>> cases = {
      {to_double(P::constant(e12())), to_double(P::constant(e23()))},
      {to_double(fixture()), to_double(P::constant(e23()) + mono(e12(), 1))},
      {to_double(mono(e12() + e23(), 0) + mono(e13(), 1)), to_double(mono(e12() - e23(), 1))},
  };
  for (const auto& [a, b] : cases) {
    const auto r = ibp_check_numeric(a, b, 1.0, {});
    EXPECT_LE(r.residual, 1e-4);
    const MatD closed = product_integral_closed_nilpotent(a, 1.0).matrix() * product_integral_closed_nilpotent(b, 1.0).matrix();
    EXPECT_LE(frobenius_distance(r.lhs.extrapolated, closed), 1e-6);
  }
}

// --- Leibniz ------------------------------------------------------------------------

TEST(Leibniz, Examples) {
  const Q x = Q(3, 2);
  const Residual r = leibniz_check(mono(e12(), 1), mono(e23(), 1), x);
  EXPECT_TRUE(r.exact);
  EXPECT_TRUE(exactly_equal(r.lhs, to_double(exp_nilpotent(e12() + e23() + x * e13()).matrix())));

  SplitMix64 rng(52);
  EXPECT_TRUE(leibniz_check(random_path<Q>(rng, 2), P::constant(random_nil<Q>(rng)), x).exact);
  const P a = random_path<Q>(rng, 3);
  EXPECT_TRUE(leibniz_check(a, a, x).exact);
}

TEST(Leibniz, ExactOnRandomPairs) {
  SplitMix64 rng(53);
  for (int k = 0; k < 200; ++k)
    EXPECT_TRUE(leibniz_check(random_path<Q>(rng, 2), random_path<Q>(rng, 2), random_scalar<Q>(rng)).exact);
}

// --- synchronized limits ---------------------------------------------------------------

TEST(SynchronizedLimit, TrotterMap) {
  SplitMix64 rng(54);
  const auto a = random_unipotent<double>(rng), b = random_unipotent<double>(rng);
  const NilMat<double> dir = random_nil<double>(rng);
  const auto zero = synchronized_limit_check(trotter_pair, a, b, 0.0, dir, {});
  for (double d : zero.deviations) EXPECT_EQ(d, 0.0);
  EXPECT_TRUE(zero.passed);

  Schedule loose;
  loose.tol = 1e-3;  // deviation is first order in 1/n: about 1e-4 at n = 4096
  const auto half = synchronized_limit_check(trotter_pair, a, b, 0.5, dir, loose);
  EXPECT_TRUE(half.passed);
  EXPECT_NEAR(half.order, 1.0, 0.25);
  for (std::size_t k = 1; k < half.deviations.size(); ++k) EXPECT_LT(half.deviations[k], half.deviations[k - 1]);
}

TEST(SynchronizedLimit, ConstantMapByContinuity) {
  SplitMix64 rng(55);
  const auto a = random_unipotent<double>(rng), b = random_unipotent<double>(rng);
  const PairMap product = [](const Unipotent<double>& x, const Unipotent<double>& y, std::int64_t) {
    return MatD(mul(x, y).matrix());
  };
  Schedule loose;
  loose.tol = 1e-3;
  const auto r = synchronized_limit_check(product, a, b, 0.5, random_nil<double>(rng), loose);
  EXPECT_TRUE(r.passed);
  EXPECT_LT(r.deviations.back(), r.deviations.front());
}

// --- partitions and reports ----------------------------------------------------------

TEST(PartitionTags, Rules) {
  const Partition right(0, 1, 4), left(0, 1, 4, SampleRule::left), mid(0, 1, 4, SampleRule::midpoint);
  EXPECT_EQ(right.mesh(), 0.25);
  EXPECT_EQ(right.tag(1), 0.25);
  EXPECT_EQ(left.tag(1), 0.0);
  EXPECT_EQ(mid.tag(4), 0.875);
  EXPECT_EQ(Partition(2, 2, 8).mesh(), 0.0);
  EXPECT_THROW(Partition(0, 1, 0), DomainError);
}

TEST(Report, RichardsonOnFirstOrderSequence) {
  Schedule s;
  s.kmin = 2;
  s.kmax = 10;
  const MatD limit = oracle::heis_group(1, 2, 3);
  const MatD c = oracle::heis_group(0, 1, 0) - MatD::Identity(3, 3);
  const auto r = run_schedule(s, [&](std::int64_t n) { return MatD(limit + c / static_cast<double>(n)); });
  EXPECT_EQ(r.ns.front(), 4);
  EXPECT_EQ(r.ns.back(), 1024);
  EXPECT_EQ(r.deltas.size(), r.values.size() - 1);
  EXPECT_LE(frobenius_distance(r.extrapolated, limit), 1e-12);
  EXPECT_NEAR(r.order, 1.0, 1e-9);
  EXPECT_FALSE(r.converged);  // final delta ~ 1e-3 > tol
  s.tol = 1e-2;
  EXPECT_TRUE(run_schedule(s, [&](std::int64_t n) { return MatD(limit + c / static_cast<double>(n)); }).converged);
}

TEST(Report, ConstantSequenceHasUndefinedOrder) {
  const auto r = run_schedule({}, [](std::int64_t) { return MatD(MatD::Identity(2, 2)); });
  EXPECT_TRUE(std::isnan(r.order));
  EXPECT_TRUE(r.converged);
}

TEST(Report, GrowingDeltasAreNotConverged) {
  Schedule s;
  s.tol = 1e3;
  const auto r = run_schedule(s, [](std::int64_t n) { return MatD(MatD::Identity(2, 2) * std::sqrt(double(n))); });
  EXPECT_FALSE(r.converged);
}

TEST(Report, ScheduleValidation) {
  Schedule s;
  s.kmin = 5;
  s.kmax = 5;
  EXPECT_THROW(s.validate(), DomainError);
  s.kmax = 6;
  s.tol = 0;
  EXPECT_THROW(s.validate(), DomainError);
}
