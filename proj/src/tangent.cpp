#include "multcalc/tangent.hpp"

#include "multcalc/matexp.hpp"

#include <cmath>
#include <limits>

namespace multcalc {

namespace {

struct StencilWeights {
  std::vector<double> offsets;
  std::vector<double> weights;
};

StencilWeights first_derivative(Stencil s) {
  if (s == Stencil::central4) return {{2.0, 1.0, -1.0, -2.0}, {-1.0 / 12.0, 8.0 / 12.0, -8.0 / 12.0, 1.0 / 12.0}};
  return {{1.0, -1.0}, {0.5, -0.5}};
}

void require_fixes_identity(const MatOp& op, int dim, const char* what) {
  const MatD id = MatD::Identity(dim, dim);
  if (!exactly_equal(op(id), id)) throw DomainError(std::string(what) + ": operator does not fix the identity");
}

void require_step(double h) {
  if (!(h > 0.0)) throw DomainError("tangent: step must be positive");
  if (h < std::ldexp(1.0, -kMaxStepExponent)) throw DomainError("tangent: steps below 2^-7 are rejected");
}

double max_abs(const MatD& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

MatD lie_bracket(const MatD& x, const MatD& y) { return x * y - y * x; }

}  // namespace

std::string to_string(Stencil s) { return s == Stencil::central4 ? "central-4" : "central-2"; }

MatD tangent_of_operator(const MatOp& op, const CurveProbe& probe) {
  require_square(probe.direction, "tangent_of_operator");
  require_step(probe.h);
  const int n = static_cast<int>(probe.direction.rows());
  require_fixes_identity(op, n, "tangent_of_operator");
  const StencilWeights st = first_derivative(probe.stencil);
  MatD acc = MatD::Zero(n, n);
  for (std::size_t i = 0; i < st.offsets.size(); ++i) {
    const MatD g = exp_general(st.offsets[i] * probe.h * probe.direction);
    acc += st.weights[i] * log_near_identity(op(g));
  }
  return acc / probe.h;
}

MatD mixed_second_bracket(const MatOp& op_a, const MatOp& op_b, const MatD& u, const MatD& v, double h,
                          Stencil stencil) {
  require_square(u, "mixed_second_bracket");
  require_same_dim(u, v, "mixed_second_bracket");
  require_step(h);
  const int n = static_cast<int>(u.rows());
  require_fixes_identity(op_a, n, "mixed_second_bracket");
  require_fixes_identity(op_b, n, "mixed_second_bracket");
  const StencilWeights st = first_derivative(stencil);
  MatD acc = MatD::Zero(n, n);
  for (std::size_t i = 0; i < st.offsets.size(); ++i) {
    const double t = st.offsets[i] * h;
    const MatD front = op_a(exp_general(t * u));
    const MatD back = op_a(exp_general(-t * u));
    for (std::size_t j = 0; j < st.offsets.size(); ++j) {
      const double s = st.offsets[j] * h;
      const MatD curve = front * op_b(exp_general(s * v)) * back;
      acc += (st.weights[i] * st.weights[j]) * log_near_identity(curve);
    }
  }
  return acc / (h * h);
}

Eigen::VectorXd LieBasis::coords(const MatD& x) const {
  // Every shipped basis consists of matrix units, so coordinates are read off exactly.
  Eigen::VectorXd c(size());
  for (int j = 0; j < size(); ++j) {
    Eigen::Index r = 0, col = 0;
    elems[j].cwiseAbs().maxCoeff(&r, &col);
    c(j) = x(r, col);
  }
  return c;
}

MatD LieBasis::element(const Eigen::VectorXd& c) const {
  MatD x = MatD::Zero(elems.front().rows(), elems.front().cols());
  for (int j = 0; j < size(); ++j) x += c(j) * elems[j];
  return x;
}

LieBasis LieBasis::heisenberg() {
  return {"heisenberg", {unit<double>(3, 1, 2), unit<double>(3, 2, 3), unit<double>(3, 1, 3)}};
}

LieBasis LieBasis::affine() { return {"affine", {unit<double>(2, 1, 1), unit<double>(2, 1, 2)}}; }

MatD extract_tangent(const MatOp& op, const LieBasis& basis, double h, Stencil stencil) {
  MatD t(basis.size(), basis.size());
  for (int j = 0; j < basis.size(); ++j) t.col(j) = basis.coords(tangent_of_operator(op, {basis.elems[j], h, stencil}));
  return t;
}

std::string to_string(TangentTheorem t) {
  switch (t) {
    case TangentTheorem::tgop: return "tgop";
    case TangentTheorem::tanglim: return "tanglim";
    case TangentTheorem::rbg2rbl0: return "rbg2rbl0";
    case TangentTheorem::diffgLie1: return "diffgLie1";
    case TangentTheorem::dgpl0: return "dgpl0";
  }
  return "unknown";
}

std::optional<TangentTheorem> parse_tangent_theorem(const std::string& s) {
  for (TangentTheorem t : {TangentTheorem::tgop, TangentTheorem::tanglim, TangentTheorem::rbg2rbl0,
                           TangentTheorem::diffgLie1, TangentTheorem::dgpl0})
    if (to_string(t) == s) return t;
  return std::nullopt;
}

namespace {

const std::vector<TangentTheorem> kAllTheorems = {TangentTheorem::tgop, TangentTheorem::tanglim,
                                                  TangentTheorem::rbg2rbl0, TangentTheorem::diffgLie1,
                                                  TangentTheorem::dgpl0};

MatD coord_matrix(const CoordMap<double>& m) { return MatD(m); }

LieIdentity identity_for(TangentTheorem t) {
  switch (t) {
    case TangentTheorem::tgop: return LieIdentity::rb_weight_one;
    case TangentTheorem::tanglim: return LieIdentity::rb_limit;
    case TangentTheorem::rbg2rbl0: return LieIdentity::rb_weight_zero;
    case TangentTheorem::diffgLie1: return LieIdentity::derivation_limit;
    case TangentTheorem::dgpl0: return LieIdentity::derivation_zero;
  }
  return LieIdentity::none;
}

TangentFixture diff_fixture(const std::string& name, int i, int j) {
  const LieDerivation<double> d = LieDerivation<double>::ad(NilMat<double>(unit<double>(3, i, j)), name);
  return {"diff-" + name, lift(diff_closed_form(d)), LieBasis::heisenberg(), coord_matrix(d.map().matrix()),
          {TangentTheorem::dgpl0, TangentTheorem::diffgLie1}};
}

}  // namespace

TangentFixture tangent_fixture(const std::string& name) {
  if (name == "rb0-center") {
    const auto b = LieOperator<double>::projection_to_center();
    return {name, lift(rb_zero_closed_form(b)), LieBasis::heisenberg(), coord_matrix(b.matrix()),
            {TangentTheorem::rbg2rbl0, TangentTheorem::tanglim}};
  }
  if (name == "rb0-negate-first") {
    const auto b = LieOperator<double>::negate_first();
    return {name, lift(rb_zero_closed_form(b)), LieBasis::heisenberg(), coord_matrix(b.matrix()),
            {TangentTheorem::rbg2rbl0, TangentTheorem::tanglim}};
  }
  if (name == "heisenberg-factorization") {
    MatD expected = MatD::Zero(3, 3);
    expected(1, 1) = -1.0;
    return {name, lift(heisenberg_factorization_operator<double>()), LieBasis::heisenberg(), expected,
            {TangentTheorem::tgop}};
  }
  if (name == "affine-factorization") {
    MatD expected = MatD::Zero(2, 2);
    expected(1, 1) = -1.0;
    return {name, lift(affine_factorization_operator()), LieBasis::affine(), expected, {TangentTheorem::tgop}};
  }
  if (name == "diff-ad-e12") return diff_fixture("ad-e12", 1, 2);
  if (name == "diff-ad-e23") return diff_fixture("ad-e23", 2, 3);
  if (name == "diff-ad-e13") return diff_fixture("ad-e13", 1, 3);
  if (name == "identity") {
    // Validates the extractor only; the identity satisfies none of the identities.
    return {name, [](const MatD& g) { return g; }, LieBasis::heisenberg(), MatD::Identity(3, 3), kAllTheorems, false};
  }
  if (name == "power-half") {
    const PairWeightFamily f = PairWeightFamily::power(0.5);
    return {name, [f](const MatD& g) { return pair_L(f, g); }, LieBasis::heisenberg(), 0.5 * MatD::Identity(3, 3),
            kAllTheorems, false};
  }
  throw DomainError("unknown tangent fixture: " + name);
}

std::vector<std::string> tangent_fixture_names() {
  return {"rb0-center",  "rb0-negate-first", "heisenberg-factorization", "affine-factorization", "diff-ad-e12",
          "diff-ad-e23", "diff-ad-e13",      "identity",                 "power-half"};
}

std::string default_fixture(TangentTheorem t) {
  switch (t) {
    case TangentTheorem::tgop: return "heisenberg-factorization";
    case TangentTheorem::tanglim:
    case TangentTheorem::rbg2rbl0: return "rb0-center";
    case TangentTheorem::diffgLie1:
    case TangentTheorem::dgpl0: return "diff-ad-e12";
  }
  return "identity";
}

double lie_identity_residual(LieIdentity kind, const MatD& op, const LieBasis& basis) {
  const auto apply = [&](const MatD& x) { return basis.element(op * basis.coords(x)); };
  const Schedule schedule{2, 12, 1e-6, 1.0};
  double worst = 0.0;
  for (const MatD& u : basis.elems) {
    for (const MatD& v : basis.elems) {
      const MatD tu = apply(u);
      const MatD tv = apply(v);
      MatD lhs, rhs;
      switch (kind) {
        case LieIdentity::rb_weight_zero:
          lhs = lie_bracket(tu, tv);
          rhs = apply(lie_bracket(tu, v) + lie_bracket(u, tv));
          break;
        case LieIdentity::rb_weight_one:
          lhs = lie_bracket(tu, tv);
          rhs = apply(lie_bracket(tu, v) + lie_bracket(u, tv) + lie_bracket(u, v));
          break;
        case LieIdentity::rb_limit: {
          lhs = lie_bracket(tu, tv);
          const ConvergenceReport r = run_schedule(schedule, [&](std::int64_t n) {
            const double l = 1.0 / static_cast<double>(n);
            return MatD((lie_bracket(tu, l * v) + lie_bracket(l * u, tv) + lie_bracket(l * u, l * v)) / l);
          });
          rhs = apply(r.extrapolated);
          break;
        }
        case LieIdentity::derivation_zero:
          lhs = apply(lie_bracket(u, v));
          rhs = lie_bracket(tu, v) + lie_bracket(u, tv);
          break;
        case LieIdentity::derivation_limit: {
          lhs = apply(lie_bracket(u, v));
          const ConvergenceReport r = run_schedule(schedule, [&](std::int64_t n) {
            const double l = 1.0 / static_cast<double>(n);
            return MatD((lie_bracket(l * tu, v) + lie_bracket(u, l * tv) + lie_bracket(l * tu, l * tv)) / l);
          });
          rhs = r.extrapolated;
          break;
        }
        case LieIdentity::none:
          return 0.0;
      }
      worst = std::max(worst, (lhs - rhs).norm());
    }
  }
  return worst;
}

TangentReport verify_tangent_theorem(TangentTheorem theorem, const TangentFixture& fixture, int hmin_exp,
                                     double tol, Stencil stencil) {
  if (hmin_exp < 5 || hmin_exp > kMaxStepExponent)
    throw DomainError("verify_tangent_theorem: hmin_exp must be in [5, 7]");
  bool compatible = false;
  for (TangentTheorem t : fixture.theorems) compatible = compatible || t == theorem;
  if (!compatible) throw DomainError("fixture " + fixture.name + " does not instantiate " + to_string(theorem));

  TangentReport rep;
  rep.theorem = to_string(theorem);
  rep.fixture = fixture.name;
  rep.expected = fixture.expected;

  std::vector<MatD> directions = fixture.basis.elems;
  MatD sum = MatD::Zero(directions.front().rows(), directions.front().cols());
  for (const MatD& e : fixture.basis.elems) sum += e;
  directions.push_back(sum);

  std::vector<double> errors;
  for (int k = 3; k <= hmin_exp; ++k) {
    TangentLevel level;
    level.h = std::ldexp(1.0, -k);
    level.extracted = extract_tangent(fixture.op, fixture.basis, level.h, stencil);
    for (const MatD& d : directions) {
      const MatD got = tangent_of_operator(fixture.op, {d, level.h, stencil});
      const MatD want = fixture.basis.element(fixture.expected * fixture.basis.coords(d));
      level.error = std::max(level.error, max_abs(got - want));
    }
    errors.push_back(level.error);
    rep.ladder.push_back(std::move(level));
  }
  for (std::size_t k = 0; k + 1 < errors.size(); ++k)
    rep.slopes.push_back(errors[k] > 0.0 && errors[k + 1] > 0.0 ? std::log2(errors[k] / errors[k + 1])
                                                                : std::numeric_limits<double>::quiet_NaN());
  rep.order = mean_log2_ratio(errors, 2);
  rep.slope_ok = true;
  for (std::size_t k = rep.slopes.size() - 2; k < rep.slopes.size(); ++k)
    rep.slope_ok = rep.slope_ok && rep.slopes[k] >= 1.8 && rep.slopes[k] <= 2.2;
  rep.tangent_ok = errors.back() <= tol;

  const LieIdentity kind = fixture.lie_check ? identity_for(theorem) : LieIdentity::none;
  rep.lie_residual = lie_identity_residual(kind, rep.ladder.back().extracted, fixture.basis);
  rep.lie_exact = rep.lie_residual == 0.0;
  rep.lie_ok = rep.lie_residual <= tol;

  if (theorem == TangentTheorem::tanglim || theorem == TangentTheorem::diffgLie1) {
    const double h = rep.ladder.back().h;
    for (int n : {2, 4, 8}) {
      const PairWeightFamily f = PairWeightFamily::power(1.0 / n);
      const MatOp l = [f](const MatD& g) { return pair_L(f, g); };
      const MatD t = extract_tangent(l, LieBasis::heisenberg(), h, stencil);
      rep.family_tangent_error = std::max(rep.family_tangent_error, max_abs(t - MatD::Identity(3, 3) / n));
    }
    rep.tangent_ok = rep.tangent_ok && rep.family_tangent_error <= tol;
  }
  return rep;
}

}  // namespace multcalc
