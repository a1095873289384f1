#pragma once
// One-particle kinematics: standard boosts B_p, induced little-group
// elements R(Lambda, p) = B_p^{-1} Lambda B_{Lambda^{-1} p}, and the unitary
// action of the little group on the small Hilbert spaces
//
//   massive, d=4 : C^{2s+1}, rotation group acting through spin-s matrices,
//   massive, d=3 : C, a rotation by omega acts as e^{i s omega},
//   massless, d=4: functions on the circle of radius kappa, the euclidean
//                  group E(2) acting by rotation and a translation phase,
//   massless, d=3: C (two values +-kappa handled separately), translations
//                  acting by a phase.
//
// The massive standard boost is the symmetric pure boost taking
// (m, 0, ..., 0) to p.  The massless one is a light-cone shear followed by a
// boost along the d-1 axis, taking (1, 0, .., 0, 1) to p; it degenerates on
// the ray p^0 + p^{d-1} = 0, where a domain_error is raised.
//
// Reflection conventions: the distinguished reflection j0 flips x^0 and
// x^{d-1}.  On massive d=4 spin components it acts by conjugate-and-swap,
// (J v)_m = conj(v_{-m}); on massive d=3 and on circle functions it acts by
// plain complex conjugation of components / samples.

#include <vector>

#include "stringloc/minkowski.hpp"

namespace stringloc {

RealFourVector base_momentum(int dim, double mass);

// On-shell momentum from spatial components.
RealFourVector on_shell(int dim, double mass,
                        const std::array<double, 3>& spatial);

double mass_shell_defect(const RealFourVector& p, double mass);

LorentzMatrix standard_boost(int dim, double mass, const RealFourVector& p);

// B_p^{-1} Lambda B_{Lambda^{-1} p}; stabilizes the base momentum.
LorentzMatrix wigner_rotation(int dim, double mass, const LorentzMatrix& lam,
                              const RealFourVector& p);

// ---- massless little group ------------------------------------------------

// Element of E(2) (d=4): rotation angle phi together with a translation
// 2-vector c; in d=3 only the translation component c[0] is meaningful.
struct E2Element {
  int dim = 4;
  std::array<double, 2> c{0.0, 0.0};
  double phi = 0.0;
};

// Decomposes a little-group element (a Lorentz matrix stabilizing the base
// null momentum) into translation and rotation parts; throws if the matrix
// does not stabilize the base momentum or if recomposition misses by more
// than 1e-8.
E2Element e2_decompose(const LorentzMatrix& lam);

LorentzMatrix e2_compose(int dim, const std::array<double, 2>& c, double phi);

// ---- little group representations -----------------------------------------

using SpinVector = std::vector<cplx>;  // components m = -s..s (d=4), size 1 in d=3

// Unitary spin-s action of a little-group rotation matrix on C^{2s+1}
// (d = 4), or the phase e^{i s omega} (d = 3).
SpinVector apply_D_massive(int dim, int s, const LorentzMatrix& rot,
                           const SpinVector& v);

// The (2s+1) x (2s+1) representation matrix itself (d = 4).
std::vector<std::vector<cplx>> spin_rep_matrix(int s, const LorentzMatrix& rot);

// Rotation angle of a d=3 spatial rotation in our orientation convention.
double rotation_angle_d3(const LorentzMatrix& rot);

// Reflection action on massive little space (see header comment).
SpinVector apply_j0_massive(int dim, const SpinVector& v);

// Function on the circle of radius kappa, sampled at angles 2 pi j / N.
struct CircleFunction {
  double kappa = 1.0;
  std::vector<cplx> v;

  std::array<double, 2> point(size_t j) const {
    double ang = 2.0 * PI * static_cast<double>(j) / static_cast<double>(v.size());
    return {kappa * std::cos(ang), kappa * std::sin(ang)};
  }
};

// E(2) action on circle functions: (u(g) f)(k) = e^{i c . k} f(R^{-1} k),
// implemented by an exact DFT rotation followed by the translation phase.
CircleFunction apply_D_infinite_spin(const E2Element& g,
                                     const CircleFunction& f);

CircleFunction apply_j0_infinite_spin(const CircleFunction& f);

}  // namespace stringloc
