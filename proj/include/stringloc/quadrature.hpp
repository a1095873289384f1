#pragma once
// Quadrature building blocks: Gauss-Legendre rules of arbitrary order,
// an adaptive Gauss-Kronrod 7/15 integrator for complex-valued integrands,
// and a trapezoidal rule for smooth periodic integrands.

#include <functional>
#include <utility>
#include <vector>

#include "stringloc/minkowski.hpp"

namespace stringloc {

struct QuadNode {
  double x;
  double w;
};

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]
// (computed by Newton iteration on Legendre polynomials, cached per n).
const std::vector<QuadNode>& gauss_legendre(int n);

// Same rule mapped to [a, b].
std::vector<QuadNode> gauss_legendre(int n, double a, double b);

struct QuadResult {
  cplx value{0.0, 0.0};
  double error = 0.0;   // absolute error estimate
  long evals = 0;
  bool converged = true;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b].  Splits intervals until the local
// error estimate is below tol_abs + tol_rel * |integral so far|, a depth
// limit, or an evaluation cap; 'converged' reports whether the tolerance
// was met everywhere.
QuadResult adaptive_gk(const std::function<cplx(double)>& f, double a, double b,
                       double tol_abs = 1e-10, double tol_rel = 1e-10,
                       int max_depth = 48, long max_evals = 2'000'000);

// Trapezoidal rule for integrands of period (b - a) sampled at n points.
QuadResult trapezoid_periodic(const std::function<cplx(double)>& f, double a,
                              double b, int n);

}  // namespace stringloc
