#pragma once

// Reference computations used only by the tests. They share no code with the
// library kernels they check.

#include "multcalc/matrix.hpp"
#include "multcalc/rational.hpp"

#include <cmath>
#include <functional>
#include <initializer_list>

namespace oracle {

using multcalc::MatD;
using multcalc::MatQ;
using multcalc::Rational;

/// Plain Taylor series, no scaling. Fine for ||x|| <= 3.
inline MatD taylor_exp(const MatD& x, int terms = 60) {
  MatD sum = MatD::Identity(x.rows(), x.cols());
  MatD term = sum;
  for (int k = 1; k < terms; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

/// Classical RK4 for F' = u(t) F, F(0) = I on [0, x].
inline MatD rk4_ordered_exp(const std::function<MatD(double)>& u, int dim, double x, int steps) {
  MatD f = MatD::Identity(dim, dim);
  const double h = x / steps;
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    const MatD k1 = u(t) * f;
    const MatD k2 = u(t + h / 2) * (f + h / 2 * k1);
    const MatD k3 = u(t + h / 2) * (f + h / 2 * k2);
    const MatD k4 = u(t + h) * (f + h * k3);
    f += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return f;
}

/// I + a E12 + b E23 + c E13.
inline MatD heis_group(double a, double b, double c) {
  MatD m = MatD::Identity(3, 3);
  m(0, 1) = a;
  m(1, 2) = b;
  m(0, 2) = c;
  return m;
}

inline MatQ qmat(std::initializer_list<std::initializer_list<Rational>> rows) {
  const int n = static_cast<int>(rows.size());
  MatQ m(n, n);
  int r = 0;
  for (const auto& row : rows) {
    int c = 0;
    for (const auto& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

inline MatD dmat(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  MatD m(n, n);
  int r = 0;
  for (const auto& row : rows) {
    int c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

/// exp([[0,1],[1,0]]) via its eigenbasis (1,1)/sqrt2, (1,-1)/sqrt2.
inline MatD swap_exp() {
  const double ep = std::exp(1.0), em = std::exp(-1.0);
  return dmat({{(ep + em) / 2, (ep - em) / 2}, {(ep - em) / 2, (ep + em) / 2}});
}

}  // namespace oracle
