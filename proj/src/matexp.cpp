#include "multcalc/matexp.hpp"

#include <cmath>
#include <limits>

namespace multcalc {

namespace {

bool strictly_upper(const MatD& m) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c <= r; ++c)
      if (m(r, c) != 0.0) return false;
  return true;
}

// Denman-Beavers iteration for the principal square root.
MatD sqrtm(const MatD& a) {
  MatD y = a;
  MatD z = MatD::Identity(a.rows(), a.cols());
  for (int it = 0; it < 60; ++it) {
    const MatD yi = y.inverse();
    const MatD zi = z.inverse();
    const MatD y_next = 0.5 * (y + zi);
    const MatD z_next = 0.5 * (z + yi);
    const double step = (y_next - y).norm();
    y = y_next;
    z = z_next;
    if (step <= 1e-16 * std::max(1.0, y.norm())) break;
  }
  return y;
}

}  // namespace

MatD exp_general(const MatD& x) {
  require_square(x, "exp_general");
  require_finite(x, "exp_general");
  const int n = static_cast<int>(x.rows());
  if (strictly_upper(x)) return exp_nilpotent(NilMat<double>::unchecked(x)).matrix();

  const double norm = x.lpNorm<1>();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const MatD scaled = x / std::ldexp(1.0, squarings);

  MatD sum = MatD::Identity(n, n);
  MatD term = MatD::Identity(n, n);
  for (int k = 1; k <= 30; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    sum += term;
    if (term.lpNorm<1>() <= std::numeric_limits<double>::epsilon() * 1e-2 * sum.lpNorm<1>()) break;
  }
  for (int s = 0; s < squarings; ++s) sum = (sum * sum).eval();
  require_finite(sum, "exp_general (overflow)");
  return sum;
}

MatD log_near_identity(const MatD& g) {
  require_square(g, "log_near_identity");
  require_finite(g, "log_near_identity");
  if (Unipotent<double>::is_unipotent(g)) return log_unipotent(Unipotent<double>::unchecked(g)).matrix();

  const int n = static_cast<int>(g.rows());
  const MatD id = MatD::Identity(n, n);
  if ((g - id).norm() >= 1.0) throw DomainError("log_near_identity: ||g - I|| >= 1 and g is not unipotent");

  MatD a = g;
  int roots = 0;
  while ((a - id).norm() > 0.05 && roots < 40) {
    a = sqrtm(a);
    ++roots;
  }
  const MatD e = a - id;
  MatD sum = MatD::Zero(n, n);
  MatD power = id;
  for (int k = 1; k <= 60; ++k) {
    power = (power * e).eval();
    const MatD term = power * ((k % 2 == 1 ? 1.0 : -1.0) / k);
    sum += term;
    if (term.norm() <= 1e-18 * std::max(1.0, sum.norm())) break;
  }
  return sum * std::ldexp(1.0, roots);
}

MatD power_real(const MatD& g, double r) {
  require_square(g, "power_real");
  if (!Unipotent<double>::is_unipotent(g))
    throw DomainError("power_real: only unipotent matrices have a unique one-parameter subgroup");
  return power_real(Unipotent<double>::unchecked(g), r).matrix();
}

}  // namespace multcalc
