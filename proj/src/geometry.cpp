#include "stringloc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stringloc {

SpacelikeDirection SpacelikeDirection::checked(const RealFourVector& v,
                                               double tol) {
  if (std::abs(minkowski_dot(v, v) + 1.0) > tol)
    throw std::invalid_argument("SpacelikeDirection: v.v != -1");
  return SpacelikeDirection{v};
}

SpacelikeDirection SpacelikeDirection::normalized(const RealFourVector& v) {
  double q = minkowski_dot(v, v);
  if (q >= 0.0)
    throw std::invalid_argument("SpacelikeDirection: vector not spacelike");
  return SpacelikeDirection{(1.0 / std::sqrt(-q)) * v};
}

Wedge Wedge::standard(int dim) {
  return Wedge{RealFourVector(dim), LorentzMatrix::identity(dim)};
}

Wedge Wedge::transformed(const RealFourVector& shift,
                         const LorentzMatrix& lam) const {
  Wedge W;
  W.L = lam * L;
  RealFourVector la = apply_real(lam, a);
  W.a = la + shift;
  return W;
}

bool in_tuboid(const ComplexFourVector& e, double tol) {
  RealFourVector im = e.imag_part();
  if (im[0] <= tol) return false;
  double s2 = 0;
  for (int i = 1; i < e.dim; ++i) s2 += im[i] * im[i];
  return im[0] - std::sqrt(s2) > tol;
}

double direction_defect(const ComplexFourVector& e) {
  return std::abs(minkowski_dot(e, e) + cplx(1.0));
}

LorentzMatrix wedge_boost(const Wedge& W, cplx z) {
  LorentzMatrix lam0 = boost_in_axis(W.L.dim, W.L.dim - 1, z);
  return W.L * lam0 * lorentz_inverse(W.L);
}

LorentzMatrix wedge_reflection(const Wedge& W) {
  return W.L * standard_reflection(W.L.dim) * lorentz_inverse(W.L);
}

ComplexFourVector wedge_boost_apply(const Wedge& W, cplx z,
                                    const RealFourVector& x) {
  LorentzMatrix L = wedge_boost(W, z);
  ComplexFourVector rel = ComplexFourVector::from_real(x - W.a);
  ComplexFourVector y = apply(L, rel);
  return y + ComplexFourVector::from_real(W.a);
}

bool string_in_wedge(const StringRay& s, const Wedge& W) {
  LorentzMatrix Linv = lorentz_inverse(W.L);
  RealFourVector y = apply_real(Linv, s.apex - W.a);
  RealFourVector f = apply_real(Linv, s.dir);
  const int d = W.L.dim;
  // Apex in the (closed, for tie resolution) wedge; direction in the closed
  // asymptotic cone of W0, which keeps x + t e inside for all t >= 0.
  if (y[d - 1] < std::abs(y[0])) return false;
  if (f[d - 1] < std::abs(f[0])) return false;
  return true;
}

double string_separation_sup(const RealFourVector& delta,
                             const RealFourVector& e1,
                             const RealFourVector& e2, double rho) {
  const double inf = std::numeric_limits<double>::infinity();
  const double b1 = minkowski_dot(delta, e1);
  const double b2 = minkowski_dot(delta, e2);
  const double c = minkowski_dot(e1, e2);

  // Euclidean margins: (v + d)^2 <= v^2 + 2 rho |v|_E + rho^2 for |d|_E <= rho,
  // and |v(t,t')|_E <= |delta|_E + t |e1|_E + t' |e2|_E, which only perturbs
  // the linear coefficients of the quadratic in (t, t').
  const double bt1 = b1 + rho * euclid_norm(e1);
  const double bt2 = b2 - rho * euclid_norm(e2);
  const double K = minkowski_dot(delta, delta) + rho * rho +
                   2.0 * rho * euclid_norm(delta);

  // q(t,t') = K + 2 t bt1 - 2 t' bt2 - t^2 - t'^2 - 2 c t t'
  if (c < -1.0) return inf;  // direction t' = t escapes to +infinity
  if (std::abs(c + 1.0) < 1e-14 && bt1 - bt2 > 0.0) return inf;

  double best = K;  // corner t = t' = 0
  if (bt1 > 0.0) best = std::max(best, K + bt1 * bt1);
  if (bt2 < 0.0) best = std::max(best, K + bt2 * bt2);
  if (std::abs(c) < 1.0) {
    const double den = 1.0 - c * c;
    const double t = (bt1 + c * bt2) / den;
    const double tp = -(bt2 + c * bt1) / den;
    if (t > 0.0 && tp > 0.0) best = std::max(best, K + t * bt1 - tp * bt2);
  }
  return best;
}

bool strings_spacelike_separated(const StringRay& s1, const StringRay& s2) {
  return string_separation_sup(s2.apex - s1.apex, s1.dir, s2.dir, 0.0) < 0.0;
}

bool strings_spacelike_separated_certified(const StringRay& s1, double rho1,
                                           const StringRay& s2, double rho2) {
  return string_separation_sup(s2.apex - s1.apex, s1.dir, s2.dir,
                               rho1 + rho2) < 0.0;
}

}  // namespace stringloc
