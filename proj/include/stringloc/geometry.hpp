#pragma once
// Wedge regions, spacelike strings and the complexified boosts attached to
// them.
//
// The standard wedge is W0 = { x : x_{d-1} > |x^0| }.  A general wedge is a
// Poincare transform (a, L) of W0; its boost subgroup, reflection across its
// edge, and the analytic continuation of the boost to complex parameters are
// all transported from the standard wedge by conjugation.
//
// A "string" is a ray x + R_{>=0} e with spacelike unit direction e
// (e.e = -1).  Directions may be complexified into the tuboid
// T = { e : e.e = -1, Im e inside the open forward cone },
// which is where the intertwiner integrals of the other modules converge.

#include <optional>

#include "stringloc/minkowski.hpp"

namespace stringloc {

struct SpacelikeDirection {
  RealFourVector e;

  // Validates e.e = -1 (tolerance tol) and returns the direction.
  static SpacelikeDirection checked(const RealFourVector& v,
                                    double tol = 1e-9);
  // Rescales a spacelike vector to unit Minkowski length.
  static SpacelikeDirection normalized(const RealFourVector& v);
};

struct Wedge {
  RealFourVector a;  // translation (edge passes through a)
  LorentzMatrix L;   // real proper orthochronous transform applied to W0

  static Wedge standard(int dim);
  Wedge transformed(const RealFourVector& shift, const LorentzMatrix& lam) const;
};

struct StringRay {
  RealFourVector apex;
  RealFourVector dir;  // spacelike unit direction

  StringRay(const RealFourVector& x, const SpacelikeDirection& e)
      : apex(x), dir(e.e) {}
  StringRay(const RealFourVector& x, const RealFourVector& e) : apex(x), dir(e) {}
};

// Membership of e.e = -1 complex directions in the tuboid: Im e must lie in
// the open forward cone with margin tol (use tol <= 0 to get the closure).
bool in_tuboid(const ComplexFourVector& e, double tol = 1e-12);

// Quadric constraint residual |e.e + 1|.
double direction_defect(const ComplexFourVector& e);

// One-parameter boost group of the wedge, analytically continued to complex
// parameter z; at z = i pi it equals the wedge reflection.
LorentzMatrix wedge_boost(const Wedge& W, cplx z);

// Reflection across the wedge edge (flips the time and wedge axes of W).
LorentzMatrix wedge_reflection(const Wedge& W);

// Affine action of the continued boost on a point, x -> a + L(z)(x - a).
ComplexFourVector wedge_boost_apply(const Wedge& W, cplx z,
                                    const RealFourVector& x);

// True iff the whole string apex + R_{>=0} dir lies in the wedge; boundary
// ties count as contained.
bool string_in_wedge(const StringRay& s, const Wedge& W);

// Supremum over t, t' >= 0 of the Minkowski square
//   (delta + t e1 - t' e2)^2,
// enlarged by a Euclidean margin rho (used to certify whole neighbourhoods
// of the apexes at once); +infinity when the square is unbounded above.
double string_separation_sup(const RealFourVector& delta,
                             const RealFourVector& e1,
                             const RealFourVector& e2, double rho = 0.0);

// True iff every point of string 1 is spacelike to every point of string 2.
bool strings_spacelike_separated(const StringRay& s1, const StringRay& s2);

// Certified variant: the strings remain spacelike separated when each apex
// is moved anywhere within a Euclidean ball of the given radius.
bool strings_spacelike_separated_certified(const StringRay& s1, double rho1,
                                           const StringRay& s2, double rho2);

}  // namespace stringloc
