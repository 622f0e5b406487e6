#pragma once

// Finite-difference tangent maps at the identity. Derivatives are taken of
// log(curve), so extracted maps live in the Lie algebra.

#include "multcalc/differential.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace multcalc {

using MatOp = std::function<MatD(const MatD&)>;

enum class Stencil { central2, central4 };

std::string to_string(Stencil s);

/// Smallest step accepted in double precision.
inline constexpr int kMaxStepExponent = 7;

struct CurveProbe {
  MatD direction;
  double h = 0.125;
  Stencil stencil = Stencil::central2;
};

template <class S>
MatOp lift(const GroupOperator<Unipotent<S>>& op) {
  return [op](const MatD& g) { return to_double(op(Unipotent<S>(from_double<S>(g))).matrix()); };
}

inline MatOp lift(const GroupOperator<MatD>& op) { return op.fn; }

/// d/dt log op(exp(t u)) at t = 0. Throws DomainError if op(e) != e.
MatD tangent_of_operator(const MatOp& op, const CurveProbe& probe);

/// d^2/dtds log(opA(e^{tu}) opB(e^{sv}) opA(e^{-tu})) at t = s = 0, which is [Au, Bv].
MatD mixed_second_bracket(const MatOp& op_a, const MatOp& op_b, const MatD& u, const MatD& v, double h,
                          Stencil stencil = Stencil::central2);

/// A basis of a matrix Lie algebra together with coordinate extraction.
struct LieBasis {
  std::string name;
  std::vector<MatD> elems;

  int size() const { return static_cast<int>(elems.size()); }
  Eigen::VectorXd coords(const MatD& x) const;
  MatD element(const Eigen::VectorXd& c) const;

  static LieBasis heisenberg();
  /// Affine algebra span{E11, E12} of 2x2 matrices.
  static LieBasis affine();
};

/// Coordinate matrix of the tangent map: column j is the image of basis j.
MatD extract_tangent(const MatOp& op, const LieBasis& basis, double h, Stencil stencil = Stencil::central2);

enum class TangentTheorem { tgop, tanglim, rbg2rbl0, diffgLie1, dgpl0 };

std::string to_string(TangentTheorem t);
std::optional<TangentTheorem> parse_tangent_theorem(const std::string& s);

/// Which Lie-level identity the extracted operator must satisfy.
enum class LieIdentity { rb_weight_zero, rb_weight_one, rb_limit, derivation_zero, derivation_limit, none };

struct TangentFixture {
  std::string name;
  MatOp op;
  LieBasis basis;
  /// Expected tangent as a coordinate matrix.
  MatD expected;
  std::vector<TangentTheorem> theorems;
  /// False for fixtures that only exercise the extractor.
  bool lie_check = true;
};

TangentFixture tangent_fixture(const std::string& name);
std::vector<std::string> tangent_fixture_names();
std::string default_fixture(TangentTheorem t);

struct TangentLevel {
  double h = 0.0;
  MatD extracted;
  double error = 0.0;
};

struct TangentReport {
  std::string theorem;
  std::string fixture;
  MatD expected;
  std::vector<TangentLevel> ladder;
  /// slopes[k] = log2(e(h_k) / e(h_{k+1})).
  std::vector<double> slopes;
  /// Mean slope over the three smallest steps; NaN if any error there is zero.
  double order = 0.0;
  double lie_residual = 0.0;
  bool lie_exact = false;
  /// Tangent of L_{1/n} for the power family against id/n (limit-weight theorems only).
  double family_tangent_error = 0.0;

  bool tangent_ok = false;
  bool lie_ok = false;
  bool slope_ok = false;
  bool passed() const { return tangent_ok && lie_ok && slope_ok; }
};

/// Extracts the tangent of the fixture's operator over h = 2^-3 .. 2^-hmin_exp (hmin_exp in [5, 7]),
/// compares it with the expected Lie operator, and checks the Lie-level
/// identity the theorem predicts. The error at each step is the largest entry
/// error over the basis directions and their sum.
TangentReport verify_tangent_theorem(TangentTheorem theorem, const TangentFixture& fixture, int hmin_exp = 7,
                                     double tol = 1e-6, Stencil stencil = Stencil::central2);

/// Largest residual of the given identity over all basis pairs, for a
/// coordinate operator on the basis.
double lie_identity_residual(LieIdentity kind, const MatD& op, const LieBasis& basis);

}  // namespace multcalc
