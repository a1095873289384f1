#include "stringloc/photon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stringloc {

namespace {

ComplexFourVector reference_polarization(int lambda) {
  return ComplexFourVector(cplx(0.0), cplx(1.0),
                           cplx(0.0, static_cast<double>(lambda)), cplx(0.0));
}

void require_forward_null(const RealFourVector& p) {
  if (p.dim != 4)
    throw std::invalid_argument("photon: d = 4 momenta only");
  if (!(p[0] > 0.0))
    throw std::invalid_argument("photon: momentum must be forward");
  double defect = std::abs(minkowski_dot(p, p));
  if (defect > 1e-8 * (1.0 + p[0] * p[0]))
    throw std::invalid_argument("photon: momentum is not on the null shell");
}

void require_helicity(int lambda) {
  if (lambda != 1 && lambda != -1)
    throw std::invalid_argument("photon: helicity must be +-1");
}

double cnorm(const ComplexFourVector& v) {
  double s = 0.0;
  for (int i = 0; i < v.dim; ++i) s += std::norm(v[i]);
  return std::sqrt(s);
}

ComplexFourVector conj_vec(const ComplexFourVector& v) {
  ComplexFourVector r(v.dim);
  for (int i = 0; i < v.dim; ++i) r[i] = std::conj(v[i]);
  return r;
}

// i { (ehat.e) p - (p.e) ehat } for one helicity's frame vector.
ComplexFourVector point_kernel(const ComplexFourVector& ehat,
                               const ComplexFourVector& e,
                               const RealFourVector& p) {
  cplx a = minkowski_dot(ehat, e);
  cplx b = minkowski_dot(e, p);
  ComplexFourVector r(4);
  const cplx I(0.0, 1.0);
  for (int i = 0; i < 4; ++i) r[i] = I * (a * p[i] - b * ehat[i]);
  return r;
}

Tensor2 wedge(const RealFourVector& p, const ComplexFourVector& v) {
  Tensor2 t{};
  const cplx I(0.0, 1.0);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      t[static_cast<size_t>(mu)][static_cast<size_t>(nu)] =
          I * (p[mu] * v[nu] - p[nu] * v[mu]);
  return t;
}

// ---- small dense helpers for the stability eigenproblem -------------------

// Unit-norm kernel vector of a (numerically rank 3) 4x4 matrix, by full-pivot
// Gaussian elimination.
ComplexFourVector kernel_vector(const LorentzMatrix& A) {
  std::array<std::array<cplx, 4>, 4> a{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      a[static_cast<size_t>(i)][static_cast<size_t>(j)] = A(i, j);
  std::array<int, 4> colp{0, 1, 2, 3};
  for (int step = 0; step < 3; ++step) {
    int bi = step, bj = step;
    double best = -1.0;
    for (int i = step; i < 4; ++i)
      for (int j = step; j < 4; ++j)
        if (std::abs(a[static_cast<size_t>(i)][static_cast<size_t>(j)]) > best) {
          best = std::abs(a[static_cast<size_t>(i)][static_cast<size_t>(j)]);
          bi = i;
          bj = j;
        }
    std::swap(a[static_cast<size_t>(step)], a[static_cast<size_t>(bi)]);
    for (int i = 0; i < 4; ++i)
      std::swap(a[static_cast<size_t>(i)][static_cast<size_t>(step)],
                a[static_cast<size_t>(i)][static_cast<size_t>(bj)]);
    std::swap(colp[static_cast<size_t>(step)], colp[static_cast<size_t>(bj)]);
    cplx piv = a[static_cast<size_t>(step)][static_cast<size_t>(step)];
    if (std::abs(piv) == 0.0)
      throw std::runtime_error("stability check: eigenspace not 1-dimensional");
    for (int i = step + 1; i < 4; ++i) {
      cplx f = a[static_cast<size_t>(i)][static_cast<size_t>(step)] / piv;
      for (int j = step; j < 4; ++j)
        a[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
            f * a[static_cast<size_t>(step)][static_cast<size_t>(j)];
    }
  }
  std::array<cplx, 4> x{};
  x[3] = 1.0;
  for (int i = 2; i >= 0; --i) {
    cplx s(0.0);
    for (int j = i + 1; j < 4; ++j)
      s += a[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
    x[static_cast<size_t>(i)] = -s / a[static_cast<size_t>(i)][static_cast<size_t>(i)];
  }
  ComplexFourVector v(4);
  for (int k = 0; k < 4; ++k) v[colp[static_cast<size_t>(k)]] = x[static_cast<size_t>(k)];
  double n = cnorm(v);
  for (int i = 0; i < 4; ++i) v[i] /= n;
  return v;
}

// Smallest eigenvalue of a 3x3 hermitian matrix via the trigonometric form
// of the characteristic cubic.
double smallest_eigenvalue_3x3(const std::array<std::array<cplx, 3>, 3>& n) {
  double q = (n[0][0].real() + n[1][1].real() + n[2][2].real()) / 3.0;
  std::array<std::array<cplx, 3>, 3> b = n;
  for (int i = 0; i < 3; ++i) b[static_cast<size_t>(i)][static_cast<size_t>(i)] -= q;
  double tr_b2 = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      tr_b2 += std::norm(b[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  double p = std::sqrt(std::max(tr_b2 / 6.0, 0.0));
  if (p < 1e-300) return q;
  cplx det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
             b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
             b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  double r = std::clamp(det.real() / (2.0 * p * p * p), -1.0, 1.0);
  double theta = std::acos(r) / 3.0;
  return q + 2.0 * p * std::cos(theta + 2.0 * PI / 3.0);
}

}  // namespace

PolarizationFrame polarization_frame(const RealFourVector& p) {
  require_forward_null(p);
  LorentzMatrix B = standard_boost(4, 0.0, p);
  PolarizationFrame f;
  f.p = p;
  f.plus = apply(B, reference_polarization(+1));
  f.minus = apply(B, reference_polarization(-1));
  return f;
}

double helicity_phase(const LorentzMatrix& little) {
  if (little.dim != 4)
    throw std::invalid_argument("helicity_phase: d = 4 only");
  return e2_decompose(little).phi;
}

cplx helicity_rep(int lambda, const LorentzMatrix& little) {
  require_helicity(lambda);
  return std::exp(cplx(0.0, lambda * helicity_phase(little)));
}

FieldStrengthIntertwiner field_strength_intertwiner(const RealFourVector& p) {
  PolarizationFrame f = polarization_frame(p);
  FieldStrengthIntertwiner u;
  u.p = p;
  u.plus = wedge(p, f.minus);   // helicity +1 uses the -1 frame vector
  u.minus = wedge(p, f.plus);
  return u;
}

VectorIntertwiner potential_point_intertwiner(const ComplexFourVector& e,
                                              const RealFourVector& p) {
  if (e.dim != 4)
    throw std::invalid_argument("photon: d = 4 directions only");
  PolarizationFrame f = polarization_frame(p);
  VectorIntertwiner u;
  u.p = p;
  u.e = e;
  u.plus = point_kernel(f.minus, e, p);
  u.minus = point_kernel(f.plus, e, p);
  return u;
}

VectorIntertwiner potential_intertwiner(const FModulator& F,
                                        const ComplexFourVector& e,
                                        const RealFourVector& p,
                                        double pole_shift) {
  VectorIntertwiner u = potential_point_intertwiner(e, p);
  cplx w = minkowski_dot(e, p) + cplx(0.0, pole_shift);
  cplx Fw = F(w);
  if (!std::isfinite(Fw.real()) || !std::isfinite(Fw.imag()))
    throw std::domain_error("potential_intertwiner: modulator pole at e.p");
  u.plus = Fw * u.plus;
  u.minus = Fw * u.minus;
  return u;
}

VectorIntertwiner conjugate_potential_intertwiner(const FModulator& F,
                                                  const ComplexFourVector& e,
                                                  const RealFourVector& p,
                                                  double pole_shift) {
  LorentzMatrix j0 = standard_reflection(4);
  ComplexFourVector j0e = apply(j0, e);
  RealFourVector mj0p = apply_real(j0, p);
  for (int i = 0; i < 4; ++i) mj0p[i] = -mj0p[i];
  VectorIntertwiner inner = potential_intertwiner(F, j0e, mj0p, pole_shift);
  VectorIntertwiner u;
  u.p = p;
  u.e = e;
  u.plus = apply(j0, conj_vec(inner.minus));
  u.minus = apply(j0, conj_vec(inner.plus));
  return u;
}

CurlReport curl_e_independence(const FModulator& F, const RealFourVector& p,
                               const std::vector<ComplexFourVector>& e_samples,
                               double pole_shift) {
  if (e_samples.empty())
    throw std::invalid_argument("curl_e_independence: no string directions");
  std::vector<Tensor2> curls_plus, curls_minus;
  curls_plus.reserve(e_samples.size());
  curls_minus.reserve(e_samples.size());
  for (const ComplexFourVector& e : e_samples) {
    VectorIntertwiner u = potential_intertwiner(F, e, p, pole_shift);
    curls_plus.push_back(wedge(p, u.plus));
    curls_minus.push_back(wedge(p, u.minus));
  }
  CurlReport rep;
  rep.mean.p = p;
  const double n = static_cast<double>(e_samples.size());
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      cplx sp(0.0), sm(0.0);
      for (size_t k = 0; k < e_samples.size(); ++k) {
        sp += curls_plus[k][static_cast<size_t>(mu)][static_cast<size_t>(nu)];
        sm += curls_minus[k][static_cast<size_t>(mu)][static_cast<size_t>(nu)];
      }
      rep.mean.plus[static_cast<size_t>(mu)][static_cast<size_t>(nu)] = sp / n;
      rep.mean.minus[static_cast<size_t>(mu)][static_cast<size_t>(nu)] = sm / n;
    }
  double scale = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      scale = std::max(
          {scale,
           std::abs(rep.mean.plus[static_cast<size_t>(mu)][static_cast<size_t>(nu)]),
           std::abs(rep.mean.minus[static_cast<size_t>(mu)][static_cast<size_t>(nu)])});
  if (scale < 1e-300) scale = 1e-300;
  double dev = 0.0;
  for (size_t k = 0; k < e_samples.size(); ++k)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        dev = std::max(
            dev,
            std::abs(curls_plus[k][static_cast<size_t>(mu)][static_cast<size_t>(nu)] -
                     rep.mean.plus[static_cast<size_t>(mu)][static_cast<size_t>(nu)]));
        dev = std::max(
            dev,
            std::abs(curls_minus[k][static_cast<size_t>(mu)][static_cast<size_t>(nu)] -
                     rep.mean.minus[static_cast<size_t>(mu)][static_cast<size_t>(nu)]));
      }
  rep.max_rel_deviation = dev / scale;
  return rep;
}

StabilityEigenvectorReport stability_eigenvector_check(const RealFourVector& e,
                                                       int lambda,
                                                       int angle_samples) {
  require_helicity(lambda);
  if (e.dim != 4)
    throw std::invalid_argument("stability check: d = 4 only");
  if (angle_samples < 2)
    throw std::invalid_argument("stability check: need at least 2 angles");
  double ee = minkowski_dot(e, e);
  double esc = 1.0 + euclid_norm(e) * euclid_norm(e);
  if (std::abs(ee + 1.0) > 1e-8 * esc)
    throw std::invalid_argument("stability check: direction must satisfy e.e = -1");
  double t = e[0] - e[3];
  if (std::abs(t) <= 1e-9 * (1.0 + std::abs(e[0]) + std::abs(e[3])))
    throw std::domain_error("stability check: degenerate direction e^0 = e^3");

  // Little-group element carrying the canonical direction with the same
  // light-cone component e^0 - e^3 onto e; the stabilizer of e is the
  // conjugate of the rotation subgroup by this element.
  LorentzMatrix g = e2_compose(4, {e[1] / t, e[2] / t}, 0.0);
  LorentzMatrix ginv = lorentz_inverse(g);

  std::vector<LorentzMatrix> stab;
  std::vector<double> phis;
  for (int k = 1; k <= angle_samples; ++k) {
    double phi = 2.0 * PI * static_cast<double>(k) /
                 static_cast<double>(angle_samples + 1);
    LorentzMatrix W = g * e2_compose(4, {0.0, 0.0}, phi) * ginv;
    ComplexFourVector We = apply(W, e);
    double drift = 0.0;
    for (int i = 0; i < 4; ++i) drift = std::max(drift, std::abs(We[i] - cplx(e[i])));
    if (drift > 1e-8 * (1.0 + euclid_norm(e)))
      throw std::runtime_error("stability check: sampled element moved e");
    stab.push_back(W);
    phis.push_back(phi);
  }

  auto shifted = [&](size_t k) {
    LorentzMatrix A = stab[k];
    cplx ev = std::exp(cplx(0.0, lambda * phis[k]));
    for (int i = 0; i < 4; ++i) A(i, i) -= ev;
    return A;
  };

  StabilityEigenvectorReport rep;
  rep.vector = kernel_vector(shifted(0));

  for (size_t k = 0; k < stab.size(); ++k) {
    ComplexFourVector r = apply(shifted(k), rep.vector);
    rep.residual = std::max(rep.residual, cnorm(r));
  }

  // Mean of A^* A over the samples; restricted to the orthogonal complement
  // of the eigenvector its smallest eigenvalue bounds the eigen-equation
  // error of every competing candidate from below.
  std::array<std::array<cplx, 4>, 4> m{};
  for (size_t k = 0; k < stab.size(); ++k) {
    LorentzMatrix A = shifted(k);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        cplx s(0.0);
        for (int l = 0; l < 4; ++l) s += std::conj(A(l, i)) * A(l, j);
        m[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
            s / static_cast<double>(stab.size());
      }
  }
  // Orthonormal basis of the complement by Gram-Schmidt over the standard
  // basis, dropping the direction most aligned with the eigenvector.
  std::vector<ComplexFourVector> basis;
  int drop = 0;
  double align = -1.0;
  for (int i = 0; i < 4; ++i)
    if (std::abs(rep.vector[i]) > align) {
      align = std::abs(rep.vector[i]);
      drop = i;
    }
  for (int i = 0; i < 4; ++i) {
    if (i == drop) continue;
    ComplexFourVector b(4);
    b[i] = 1.0;
    cplx ip(0.0);
    for (int l = 0; l < 4; ++l) ip += std::conj(rep.vector[l]) * b[l];
    for (int l = 0; l < 4; ++l) b[l] -= ip * rep.vector[l];
    for (const ComplexFourVector& q : basis) {
      cplx qp(0.0);
      for (int l = 0; l < 4; ++l) qp += std::conj(q[l]) * b[l];
      for (int l = 0; l < 4; ++l) b[l] -= qp * q[l];
    }
    double n = cnorm(b);
    if (n < 1e-12)
      throw std::runtime_error("stability check: degenerate complement basis");
    for (int l = 0; l < 4; ++l) b[l] /= n;
    basis.push_back(b);
  }
  std::array<std::array<cplx, 3>, 3> nmat{};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) {
      cplx s(0.0);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          s += std::conj(basis[i][a]) * m[static_cast<size_t>(a)][static_cast<size_t>(b)] *
               basis[j][b];
      nmat[i][j] = s;
    }
  rep.orthogonal_failure =
      std::sqrt(std::max(smallest_eigenvalue_3x3(nmat), 0.0));
  return rep;
}

}  // namespace stringloc
