#pragma once
// Intertwiner functions for massive integer-spin one-particle
// representations, in d = 3 or 4 spacetime dimensions.
//
// An intertwiner function u(e, p) absorbs the momentum-dependent little-group
// rotation of the induced representation into a covariant dependence on a
// spacelike direction e (real with e.e = -1, or complexified into the tuboid
// T = { e.e = -1, Im e in the open forward cone }).  The defining property is
//
//   D(R(Lambda, p)) u(Lambda^{-1} e, Lambda^{-1} p) = u(e, p),
//
// with D the little-group representation and R the induced rotation.
//
// This module provides
//   * the closed-form minimal intertwiner u0 at the base momentum: a vector
//     of homogeneous polynomials of degree s in the components of e
//     (one polynomial per little-space index in d = 4, a single one in
//     d = 3), normalized so that s = 0 gives the constant 1,
//   * its independent spherical-harmonic evaluation for real e (d = 4),
//   * the one-parameter family of integral intertwiners u^alpha obtained by
//     integrating (B_p q . e)^alpha over the sphere of null directions q
//     against the little-group harmonic of weight s, with the complex power
//     taken on the branch that is continuous from the upper half plane,
//   * general intertwiners F(e.p) u^{|s|}(e, p) with a modulating factor F
//     analytic in the upper half plane, and their conjugates
//     u_c(e, p) = D(j0) u(j0 e, -j0 p),
//   * the symmetric-tensor decomposition of the polynomial u0 (the bridge to
//     point-localized tensor fields), and
//   * the exact norm law ||u(e, p)||^2 = c |F(e.p)|^2 (m^2 + (e.p)^2)^s.

#include <map>
#include <vector>

#include "stringloc/minkowski.hpp"
#include "stringloc/wigner.hpp"

namespace stringloc {

// ---------------------------------------------------------------------------
// Complex power on the upper-boundary branch.
//
// w^alpha with the principal logarithm off the negative real axis; values on
// the negative real axis are limits from Im w > 0, i.e.
// (-x)^alpha = x^alpha e^{i pi alpha} for x > 0.  Imaginary parts within
// roundoff of zero are snapped to the boundary before branching.
cplx power_upper(cplx w, cplx alpha);

// ---------------------------------------------------------------------------
// Modulating factor F, analytic on the open upper half plane, evaluated on
// the closed upper half plane (real arguments = boundary values from above).
class FModulator {
 public:
  enum class Variant { Polynomial, Inverse, Power };

  // F = 1.
  static FModulator one();
  // F(w) = c0 + c1 w + ... (entire).
  static FModulator polynomial(std::vector<cplx> coeffs);
  // F(w) = i / (w + i0): the boundary value picks 1/w for real w != 0.
  static FModulator inverse_energy();
  // F(w) = (w + i eta)^beta on the upper-boundary branch, eta >= 0.
  static FModulator power(cplx beta, double eta = 0.0);

  // Evaluation; throws std::domain_error for non-entire variants when
  // Im w < 0 beyond roundoff.
  cplx operator()(cplx w) const;

  // The conjugation partner G(w) = conj(F(-conj(w))), which is again
  // analytic in the upper half plane.  F is self-conjugate when G = F.
  cplx conjugate_reflected(cplx w) const;

  Variant variant() const { return variant_; }
  bool entire() const { return variant_ == Variant::Polynomial; }
  bool is_one() const;
  const std::vector<cplx>& coefficients() const { return coeffs_; }
  cplx exponent() const { return beta_; }
  double offset() const { return eta_; }

 private:
  FModulator() = default;
  Variant variant_ = Variant::Polynomial;
  std::vector<cplx> coeffs_{cplx(1.0)};  // Polynomial
  cplx beta_{0.0};                       // Power
  double eta_ = 0.0;                     // Power offset
};

// ---------------------------------------------------------------------------
// Field specification shared by the concrete field families.
enum class FieldKind {
  MassiveClosed,        // F(e.p) u0^{|s|}(B_p^{-1} e), closed form
  MassiveAlpha,         // F(e.p) u^alpha(e, p), integral family
  InfiniteSpin,         // massless, faithful euclidean little group
  PhotonPotential,      // massless helicity +-1 vector potential
  PhotonFieldStrength,  // its point-localized curl
};

struct FieldSpec {
  int dimension = 4;
  double mass = 1.0;
  int spin = 0;       // massive families; may be negative in d = 3
  double kappa = 0.0; // infinite-spin invariant (radius of the orbit circle)
  cplx alpha{0.0, 0.0};
  FieldKind kind = FieldKind::MassiveClosed;
  FModulator modulator = FModulator::one();

  static FieldSpec massive_closed(int dim, double mass, int spin,
                                  FModulator F = FModulator::one());
  static FieldSpec massive_alpha(int dim, double mass, int spin, cplx alpha,
                                 FModulator F = FModulator::one());
  static FieldSpec infinite_spin(int dim, double kappa, cplx alpha);
  static FieldSpec photon_potential(FModulator F = FModulator::inverse_energy());
  static FieldSpec photon_field_strength();

  // Throws std::invalid_argument on kind-inconsistent parameters.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Sparse polynomials in the components of a four-vector.
class Poly4 {
 public:
  using Key = std::array<int, 4>;  // exponents of (x0, x1, x2, x3)

  static Poly4 constant(cplx c);
  static Poly4 variable(int i);

  Poly4 operator+(const Poly4& o) const;
  Poly4 operator-(const Poly4& o) const;
  Poly4 operator*(const Poly4& o) const;
  Poly4 operator*(cplx s) const;
  friend Poly4 operator*(cplx s, const Poly4& p) { return p * s; }

  Poly4 derivative(int i) const;
  cplx eval(const ComplexFourVector& x) const;
  int total_degree() const;  // -1 for the zero polynomial
  bool empty() const { return terms_.empty(); }
  const std::map<Key, cplx>& terms() const { return terms_; }

 private:
  std::map<Key, cplx> terms_;  // zero coefficients are pruned on the fly
};

// ---------------------------------------------------------------------------
// Closed-form minimal intertwiner at the base momentum.
//
// d = 4: 2s+1 homogeneous degree-s polynomials in (e1, e2, e3), one per
//        little index m = -s..s (index m+s), built symbolically by repeated
//        application of the lowering operator
//          (e1 + i e2) d/de3  -  e3 (d/de1 + i d/de2)
//        to the top component (e1 - i e2)^s, with prefactor
//        i^s sqrt((s+m)!/(s-m)!) and overall normalization (-1/sqrt 2)^s.
//        With this normalization s = 0 gives 1 and s = 1 gives
//          u0(e)_{+-1} = -+ i (e1 -+ i e2),   u0(e)_0 = i sqrt(2) e3.
// d = 3: the single polynomial i^{|s|} (e1 + i e2)^s for s >= 0 and
//        i^{|s|} (e1 - i e2)^{|s|} for s < 0.
//
// The polynomial tables are cached per (dim, s); spins up to 12 supported.
const std::vector<Poly4>& u0_closed_polys(int s, int dim);
SpinVector u0_closed(int s, int dim, const ComplexFourVector& e);

// Independent evaluation route for real e in d = 4:
//   (-i)^s (1 + e0^2)^{s/2} conj(Y_{s,m}(n(e))),  n(e) = spatial direction.
// Agrees with u0_closed up to one real constant per s.
SpinVector u0_harmonic_form(int s, const RealFourVector& e);

// ---------------------------------------------------------------------------
// Integral intertwiners.
struct QuadratureConfig {
  double tolerance = 1e-8;   // target on max(1, ||value||_inf)
  int max_refinements = 8;   // dyadic refinement levels
  int initial_polar = 0;     // 0 = choose from s
  int initial_azimuthal = 0; // 0 = choose from s
  bool refine = true;        // false: evaluate on the initial grid only
};

struct IntertwinerValue {
  SpinVector value;
  ComplexFourVector e;
  RealFourVector p;
  double quadrature_error_estimate = 0.0;  // 0 for closed forms
  bool converged = true;
};

// u^alpha(e, p): e^{-i pi alpha / 2} times the integral over the sphere of
// null directions q = (1, n)/m of (q . B_p^{-1} e)^alpha against the weight
// conj(Y_{s,m}(n)) (d = 4) or e^{i s theta} (d = 3).
//
// For e in the tuboid the integrand is smooth and any alpha is admissible;
// for real e the power is singular on a circle and Re alpha > -1 is required
// (nonnegative integer alpha is always fine).  Throws std::domain_error for
// real e with Re alpha <= -1; reports honest error estimates otherwise.
IntertwinerValue u_alpha_integral(cplx alpha, int s, int dim, double mass,
                                  const ComplexFourVector& e,
                                  const RealFourVector& p,
                                  const QuadratureConfig& q = {});

// u(e, p) = F(e.p) u0^{|s|}(B_p^{-1} e)  (MassiveClosed)
//         = F(e.p) u^alpha(e, p)         (MassiveAlpha)
// Throws std::invalid_argument for kinds handled by other modules.
IntertwinerValue intertwiner(const FieldSpec& spec, const ComplexFourVector& e,
                             const RealFourVector& p,
                             const QuadratureConfig& q = {});

// u_c(e, p) = D(j0) u(j0 e, -j0 p); defined for real e or e in the
// reflected tuboid -T (so that j0 e lands back in T).
IntertwinerValue conjugate_intertwiner(const FieldSpec& spec,
                                       const ComplexFourVector& e,
                                       const RealFourVector& p,
                                       const QuadratureConfig& q = {});

// ---------------------------------------------------------------------------
// Symmetric tensor decomposition of the degree-s polynomial u0:
//
//   u0^s(e)_m = sum over index tuples  T^{mu_1 .. mu_s}_m e_{mu_1} .. e_{mu_s}
//
// with lowered components e_mu = (e^0, -e^1, .., -e^{d-1}).  Components are
// stored per exponent multi-index a (|a| = s); the tensor entry for any index
// tuple with exponent pattern a is components[a][m+s].  Extraction is by
// exact finite differencing of u0_closed on integer lattice points (all
// monomials have total degree exactly s, so s-th differences are exact).
struct TensorDecomposition {
  int spin = 0;
  int dimension = 4;
  std::map<std::array<int, 4>, std::vector<cplx>> components;

  // Contracts the tensor with e in every slot; equals u0_closed(e).
  SpinVector reconstruct(const ComplexFourVector& e) const;
};

TensorDecomposition tensor_decomposition(int s, int dim);

// ---------------------------------------------------------------------------
// Exact norm law for the closed-form family:
//
//   || F(e.p) u0^{|s|}(B_p^{-1} e) ||^2 = c |F(e.p)|^2 (m^2 + (e.p)^2)^s
//
// for real e, with c depending on (dim, s, m) only; the per-spin constant is
// measured once at a reference direction and cached.
double uv_norm_squared(const FieldSpec& spec, const RealFourVector& e,
                       const RealFourVector& p);

}  // namespace stringloc
