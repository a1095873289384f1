#pragma once
// String-localized vector potential for the photon (helicity +-1, d = 4).
//
// The one-particle space is a helicity doublet (lambda = +1, -1).  The
// euclidean little group acts on it through the non-faithful phase
// representation D_lambda(g) = e^{i lambda phi(g)}, with phi(g) the rotation
// angle of g in the convention of e2_decompose; the translation part acts
// trivially.  The distinguished reflection j0 acts antiunitarily and swaps
// helicity: (J phi)_lambda(p) = conj(phi(-j0 p)_{-lambda}).
//
// Reference polarization pair ehat_{+-} = (0, 1, +-i, 0); moving frames
// ehat_{+-}(p) = B_p ehat_{+-} with the massless standard boost.  Both are
// orthogonal to p and pair to ehat_+(p).ehat_-(p) = -2.
//
// Intertwiners (components stored with plain upper indices; contractions
// use minkowski_dot):
//   point-localized field strength (momentum-space 2-form):
//       u(p)_{+-} = i p /\ ehat_{-+}(p)          [helicity/frame cross-over]
//   string potential with modulator F (analytic in the upper half plane):
//       u(e, p)_{+-} = F(e.p) i { (ehat_{-+}(p).e) p - (p.e) ehat_{-+}(p) }
// The potential is orthogonal to both p and e ("gauge conditions"), and its
// momentum-space curl i (p /\ u(e, p)) is independent of the string
// direction exactly when F(w) = i/w, in which case it reproduces the field
// strength intertwiner.

#include <array>
#include <vector>

#include "stringloc/massive_intertwiners.hpp"
#include "stringloc/minkowski.hpp"
#include "stringloc/wigner.hpp"

namespace stringloc {

// ---------------------------------------------------------------------------
// Moving polarization frame ehat_{+-}(p) = B_p (0, 1, +-i, 0).
struct PolarizationFrame {
  RealFourVector p;
  ComplexFourVector plus;   // ehat_{+1}(p)
  ComplexFourVector minus;  // ehat_{-1}(p)

  const ComplexFourVector& at(int lambda) const {
    if (lambda == 1) return plus;
    if (lambda == -1) return minus;
    throw std::invalid_argument("PolarizationFrame: helicity must be +-1");
  }
};

// Throws std::domain_error on the degenerate ray p^0 + p^3 = 0 and
// std::invalid_argument if p is not forward null (d = 4).
PolarizationFrame polarization_frame(const RealFourVector& p);

// ---------------------------------------------------------------------------
// Helicity phase of a little-group element (a Lorentz matrix stabilizing the
// base null momentum): the rotation angle phi of its e2_decompose
// factorization.  D_lambda(g) = exp(i lambda helicity_phase(g)); the
// translation part drops out.  d = 4 only.
double helicity_phase(const LorentzMatrix& little);
cplx helicity_rep(int lambda, const LorentzMatrix& little);

// ---------------------------------------------------------------------------
using Tensor2 = std::array<std::array<cplx, 4>, 4>;

// Antisymmetric momentum-space 2-form pair indexed by helicity.
struct FieldStrengthIntertwiner {
  RealFourVector p;
  Tensor2 plus{};
  Tensor2 minus{};

  const Tensor2& at(int lambda) const {
    if (lambda == 1) return plus;
    if (lambda == -1) return minus;
    throw std::invalid_argument("FieldStrengthIntertwiner: helicity +-1");
  }
};

// u(p)_{+-}[mu][nu] = i (p[mu] ehat_{-+}(p)[nu] - p[nu] ehat_{-+}(p)[mu]).
FieldStrengthIntertwiner field_strength_intertwiner(const RealFourVector& p);

// ---------------------------------------------------------------------------
// Helicity pair of Lorentz vectors attached to a string direction.
struct VectorIntertwiner {
  RealFourVector p;
  ComplexFourVector e;
  ComplexFourVector plus;   // helicity +1 component
  ComplexFourVector minus;  // helicity -1 component

  const ComplexFourVector& at(int lambda) const {
    if (lambda == 1) return plus;
    if (lambda == -1) return minus;
    throw std::invalid_argument("VectorIntertwiner: helicity must be +-1");
  }
};

// Modulator-free point kernel i { (ehat_{-+}(p).e) p - (p.e) ehat_{-+}(p) };
// polynomial in e, defined for every complex e.  Its only zeros in e are
// null vectors of the form (a, b, -+ i b, a), so it never vanishes on the
// complex hyperboloid e.e = -1.
VectorIntertwiner potential_point_intertwiner(const ComplexFourVector& e,
                                              const RealFourVector& p);

// u(e, p)_lambda = F(e.p + i pole_shift) * point kernel.  Real arguments of
// F are boundary values from above; pole_shift > 0 regularizes evaluation
// near a pole of a non-entire modulator (i epsilon prescription).  Throws
// std::domain_error when the modulator value is not finite (pole contact)
// and propagates the modulator's domain error when Im(e.p) drops below the
// closed upper half plane.
VectorIntertwiner potential_intertwiner(const FModulator& F,
                                        const ComplexFourVector& e,
                                        const RealFourVector& p,
                                        double pole_shift = 0.0);

// Antiunitary conjugate u_c(e, p)_lambda = j0 conj(u(j0 e, -j0 p)_{-lambda});
// defined for real e or Im e in the backward cone (so that j0 e lies in the
// holomorphy tuboid of the non-entire modulators).  For real e and a
// self-conjugate modulator (conjugate_reflected == operator(), e.g. F = 1
// or F = i/w) this equals potential_intertwiner; applied twice it always
// returns the original intertwiner.
VectorIntertwiner conjugate_potential_intertwiner(const FModulator& F,
                                                  const ComplexFourVector& e,
                                                  const RealFourVector& p,
                                                  double pole_shift = 0.0);

// ---------------------------------------------------------------------------
// Momentum-space curl i (p /\ u(e, p)) per helicity, swept over string
// directions.  max_rel_deviation measures the spread of the curl across the
// e samples relative to the mean; it vanishes (and the mean equals the field
// strength intertwiner) exactly for the modulator F(w) = i/w.
struct CurlReport {
  double max_rel_deviation = 0.0;
  FieldStrengthIntertwiner mean;
};

CurlReport curl_e_independence(const FModulator& F, const RealFourVector& p,
                               const std::vector<ComplexFourVector>& e_samples,
                               double pole_shift = 0.0);

// ---------------------------------------------------------------------------
// Joint eigenvector of the stabilizer, in the little group, of a real
// direction e on the hyperboloid with e^0 != e^3: the unique ray v obeying
// W v = exp(i lambda helicity_phase(W)) v for every little-group element W
// fixing e.  residual is the worst eigen-equation error over sampled
// stabilizer angles; orthogonal_failure is the smallest such error over the
// whole orthogonal complement of v (order 1 = the eigenspace is genuinely
// one-dimensional).  Throws std::domain_error when e^0 = e^3 (the stabilizer
// there contains no rotations) and std::invalid_argument off the hyperboloid.
struct StabilityEigenvectorReport {
  ComplexFourVector vector;  // unit euclidean norm
  double residual = 0.0;
  double orthogonal_failure = 0.0;
};

StabilityEigenvectorReport stability_eigenvector_check(const RealFourVector& e,
                                                       int lambda,
                                                       int angle_samples = 8);

}  // namespace stringloc
