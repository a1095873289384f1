#pragma once
// Spherical harmonics in the Condon-Shortley convention and product
// quadrature grids on the unit sphere.
//
//   Y_{l,m}(theta, phi) = (-1)^m sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!)
//                         P_l^m(cos theta) e^{i m phi}      (m >= 0)
//   Y_{l,-m} = (-1)^m conj(Y_{l,m})
//
// with P_l^m the associated Legendre functions WITHOUT the (-1)^m phase.

#include <vector>

#include "stringloc/minkowski.hpp"

namespace stringloc {

// Associated Legendre P_l^m(x) without Condon-Shortley phase, m >= 0.
double assoc_legendre(int l, int m, double x);

cplx sph_harm(int l, int m, double theta, double phi);

// Evaluation from a spatial unit vector n (3 components).
cplx sph_harm_n(int l, int m, const std::array<double, 3>& n);

struct SphereNode {
  std::array<double, 3> n;
  double theta, phi;
  double w;  // weight for integral over the unit sphere (total 4 pi)
};

// Product rule: Gauss-Legendre in cos(theta) x trapezoid in phi.  Exact for
// integrands of spherical-harmonic degree < min(2*n_theta, n_phi).
std::vector<SphereNode> sphere_grid(int n_theta, int n_phi);

}  // namespace stringloc
