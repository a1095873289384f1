// Tests for the photon intertwiners: polarization frames, field strength,
// string potential with gauge conditions and covariance, curl independence
// for the inverse-energy modulator, conjugation, zero structure, and the
// stabilizer eigenvector check.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "stringloc/massive_intertwiners.hpp"
#include "stringloc/minkowski.hpp"
#include "stringloc/photon.hpp"
#include "stringloc/rng.hpp"
#include "stringloc/wigner.hpp"

using namespace stringloc;

namespace {

constexpr int kHelicities[2] = {+1, -1};

RealFourVector random_null_momentum(CounterRng& rng, double wmin = 0.3,
                                    double wmax = 3.0) {
  for (;;) {
    double w = rng.uniform(wmin, wmax);
    double c = rng.uniform(-1.0, 1.0);
    double s = std::sqrt(1.0 - c * c);
    double a = rng.uniform(0.0, 2.0 * PI);
    RealFourVector p(w, w * s * std::cos(a), w * s * std::sin(a), w * c);
    if (p[0] + p[3] > 0.1 * p[0]) return p;
  }
}

RealFourVector random_unit_spacelike(CounterRng& rng, double eta_max = 1.2) {
  double eta = rng.uniform(-eta_max, eta_max);
  double cth = rng.uniform(-1.0, 1.0);
  double sth = std::sqrt(1.0 - cth * cth);
  double phi = rng.uniform(0.0, 2.0 * PI);
  return RealFourVector(std::sinh(eta), std::cosh(eta) * sth * std::cos(phi),
                        std::cosh(eta) * sth * std::sin(phi),
                        std::cosh(eta) * cth);
}

LorentzMatrix random_proper_lorentz(CounterRng& rng, double rap = 0.8) {
  LorentzMatrix L = LorentzMatrix::identity(4);
  for (int rep = 0; rep < 2; ++rep) {
    L = rotation_about_3axis(rng.uniform(0.0, 2.0 * PI)) * L;
    double a = rng.uniform(0.0, 2.0 * PI);
    LorentzMatrix R = LorentzMatrix::identity(4);
    R(2, 2) = std::cos(a);
    R(2, 3) = std::sin(a);
    R(3, 2) = -std::sin(a);
    R(3, 3) = std::cos(a);
    L = R * L;
    L = boost_in_axis(4, 1 + rng.uniform_int(3), rng.uniform(-rap, rap)) * L;
  }
  return L;
}

ComplexFourVector random_tuboid_direction(CounterRng& rng) {
  double th = rng.uniform(0.15, PI - 0.15);
  ComplexFourVector e(4);
  e[0] = cplx(0.0, std::sin(th));
  e[3] = std::cos(th);
  return apply(random_proper_lorentz(rng), e);
}

// Random point on the complexified hyperboloid e.e = -1 (spatial components
// free, e0 solved by a complex square root).
ComplexFourVector random_complex_direction(CounterRng& rng) {
  ComplexFourVector e(4);
  for (int i = 1; i < 4; ++i)
    e[i] = cplx(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
  cplx s2 = e[1] * e[1] + e[2] * e[2] + e[3] * e[3] - cplx(1.0);
  e[0] = std::sqrt(s2);
  if (rng.uniform() < 0.5) e[0] = -e[0];
  return e;
}

double vnorm(const ComplexFourVector& v) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

double vdist(const ComplexFourVector& a, const ComplexFourVector& b) {
  double m = 0.0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double tnorm(const Tensor2& t) {
  double m = 0.0;
  for (const auto& row : t)
    for (const cplx& z : row) m = std::max(m, std::abs(z));
  return m;
}

double tdist(const Tensor2& a, const Tensor2& b) {
  double m = 0.0;
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

// p_mu t^{mu nu}: metric contraction of the first slot with p.
ComplexFourVector contract_first(const RealFourVector& p, const Tensor2& t) {
  ComplexFourVector r(4);
  for (int nu = 0; nu < 4; ++nu) {
    cplx s = p[0] * t[0][static_cast<size_t>(nu)];
    for (int mu = 1; mu < 4; ++mu)
      s -= p[mu] * t[static_cast<size_t>(mu)][static_cast<size_t>(nu)];
    r[nu] = s;
  }
  return r;
}

ComplexFourVector conj_vec(const ComplexFourVector& v) {
  ComplexFourVector r(4);
  for (int i = 0; i < 4; ++i) r[i] = std::conj(v[i]);
  return r;
}

const RealFourVector kBase(1.0, 0.0, 0.0, 1.0);

}  // namespace

TEST_CASE("polarization frame at the base momentum and its invariants") {
  PolarizationFrame f0 = polarization_frame(kBase);
  CHECK(vdist(f0.plus, ComplexFourVector(cplx(0.0), cplx(1.0), cplx(0.0, 1.0),
                                         cplx(0.0))) == 0.0);
  CHECK(vdist(f0.minus, ComplexFourVector(cplx(0.0), cplx(1.0),
                                          cplx(0.0, -1.0), cplx(0.0))) == 0.0);

  CounterRng rng(2026, 51);
  for (int trial = 0; trial < 200; ++trial) {
    RealFourVector p = random_null_momentum(rng);
    PolarizationFrame f = polarization_frame(p);
    for (int lam : kHelicities) {
      CHECK(std::abs(minkowski_dot(f.at(lam), ComplexFourVector::from_real(p)))
            < 1e-10 * (1.0 + vnorm(f.at(lam))) * (1.0 + p[0]));
    }
    CHECK(std::abs(minkowski_dot(f.plus, f.minus) - cplx(-2.0)) <
          1e-10 * (1.0 + vnorm(f.plus) * vnorm(f.minus)));
  }

  // reflection compatibility: the frame at -j0 p is the j0 image of the
  // frame at p (the massless standard boost satisfies j0 B_p j0 = B_{-j0 p})
  LorentzMatrix j0 = standard_reflection(4);
  for (int trial = 0; trial < 50; ++trial) {
    RealFourVector p = random_null_momentum(rng);
    if (p[0] - p[3] < 0.1 * p[0]) continue;  // -j0 p must avoid the bad ray
    RealFourVector q = apply_real(j0, p);
    for (int i = 0; i < 4; ++i) q[i] = -q[i];
    PolarizationFrame fp = polarization_frame(p);
    PolarizationFrame fq = polarization_frame(q);
    for (int lam : kHelicities)
      CHECK(vdist(fq.at(lam), apply(j0, fp.at(lam))) <
            1e-12 * (1.0 + vnorm(fp.at(lam))));
  }

  // degenerate ray and invalid input
  CHECK_THROWS_AS(polarization_frame(RealFourVector(1.0, 0.0, 0.0, -1.0)),
                  std::domain_error);
  CHECK_THROWS_AS(polarization_frame(RealFourVector(1.0, 0.0, 0.0, 0.5)),
                  std::invalid_argument);
}

TEST_CASE("field strength intertwiner: antisymmetry, transversality, covariance") {
  CounterRng rng(2026, 52);

  for (int trial = 0; trial < 100; ++trial) {
    RealFourVector p = random_null_momentum(rng);
    FieldStrengthIntertwiner u = field_strength_intertwiner(p);
    for (int lam : kHelicities) {
      const Tensor2& t = u.at(lam);
      for (size_t mu = 0; mu < 4; ++mu)
        for (size_t nu = 0; nu < 4; ++nu)
          CHECK(t[mu][nu] == -t[nu][mu]);  // exact by construction
      ComplexFourVector c = contract_first(p, t);
      CHECK(vnorm(c) < 1e-10 * (1.0 + tnorm(t)) * (1.0 + p[0]));
    }
  }

  // tensor covariance: D_lambda(R(L,p)) u(L^{-1} p) = (L^{-1} x L^{-1}) u(p)
  double worst = 0.0;
  int done = 0;
  while (done < 30) {
    RealFourVector p = random_null_momentum(rng);
    LorentzMatrix L = random_proper_lorentz(rng);
    LorentzMatrix Linv = lorentz_inverse(L);
    RealFourVector pL = apply_real(Linv, p);
    if (pL[0] + pL[3] < 0.05 * pL[0]) continue;
    ++done;
    LorentzMatrix W = wigner_rotation(4, 0.0, L, p);
    FieldStrengthIntertwiner up = field_strength_intertwiner(p);
    FieldStrengthIntertwiner upL = field_strength_intertwiner(pL);
    for (int lam : kHelicities) {
      cplx D = helicity_rep(lam, W);
      Tensor2 lhs{};
      for (size_t mu = 0; mu < 4; ++mu)
        for (size_t nu = 0; nu < 4; ++nu)
          lhs[mu][nu] = D * upL.at(lam)[mu][nu];
      Tensor2 rhs{};
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          cplx s(0.0);
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
              s += Linv(mu, a) * Linv(nu, b) *
                   up.at(lam)[static_cast<size_t>(a)][static_cast<size_t>(b)];
          rhs[static_cast<size_t>(mu)][static_cast<size_t>(nu)] = s;
        }
      worst = std::max(worst, tdist(lhs, rhs) / std::max(1.0, tnorm(rhs)));
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("potential intertwiner: frozen value at the base configuration") {
  ComplexFourVector e(cplx(0.0), cplx(1.0), cplx(0.0), cplx(0.0));
  VectorIntertwiner u = potential_intertwiner(FModulator::one(), e, kBase);
  ComplexFourVector expect(cplx(0.0, -1.0), cplx(0.0), cplx(0.0),
                           cplx(0.0, -1.0));
  CHECK(vdist(u.plus, expect) < 1e-14);
  CHECK(vdist(u.minus, expect) < 1e-14);  // both frame pairings give -i pbar
}

TEST_CASE("potential intertwiner: gauge conditions e.u = p.u = 0") {
  CounterRng rng(2026, 53);
  std::vector<FModulator> mods;
  mods.push_back(FModulator::one());
  mods.push_back(FModulator::inverse_energy());
  mods.push_back(FModulator::polynomial({cplx(1.0), cplx(0.0, 0.7),
                                         cplx(-0.3)}));
  double worst = 0.0;
  int done = 0;
  while (done < 1000) {
    RealFourVector p = random_null_momentum(rng);
    ComplexFourVector e = (done % 3 == 0)
                              ? random_tuboid_direction(rng)
                              : ComplexFourVector::from_real(
                                    random_unit_spacelike(rng));
    const FModulator& F = mods[static_cast<size_t>(done) % mods.size()];
    cplx w = minkowski_dot(e, p);
    if (F.variant() == FModulator::Variant::Inverse &&
        std::abs(w) < 0.05 * (1.0 + p[0]))
      continue;
    ++done;
    VectorIntertwiner u = potential_intertwiner(F, e, p);
    for (int lam : kHelicities) {
      double scale = (1.0 + vnorm(u.at(lam))) * (1.0 + vnorm(e) + p[0]);
      worst = std::max(
          worst, std::abs(minkowski_dot(e, u.at(lam))) / scale);
      worst = std::max(
          worst,
          std::abs(minkowski_dot(ComplexFourVector::from_real(p), u.at(lam))) /
              scale);
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("potential intertwiner: vector covariance under the little group action") {
  CounterRng rng(2026, 54);
  std::vector<FModulator> mods;
  mods.push_back(FModulator::one());
  mods.push_back(FModulator::polynomial({cplx(0.4), cplx(0.0, 1.0)}));
  mods.push_back(FModulator::inverse_energy());
  double worst = 0.0;
  int done = 0;
  while (done < 100) {
    RealFourVector p = random_null_momentum(rng);
    LorentzMatrix L = random_proper_lorentz(rng);
    LorentzMatrix Linv = lorentz_inverse(L);
    RealFourVector pL = apply_real(Linv, p);
    if (pL[0] + pL[3] < 0.05 * pL[0]) continue;
    ComplexFourVector e = (done % 4 == 0)
                              ? random_tuboid_direction(rng)
                              : ComplexFourVector::from_real(
                                    random_unit_spacelike(rng));
    const FModulator& F = mods[static_cast<size_t>(done) % mods.size()];
    ComplexFourVector Le = apply(L, e);
    cplx w = minkowski_dot(Le, p);
    if (F.variant() == FModulator::Variant::Inverse &&
        (std::abs(w) < 0.05 * (1.0 + p[0]) || w.imag() < -1e-12))
      continue;
    ++done;
    LorentzMatrix W = wigner_rotation(4, 0.0, L, p);
    VectorIntertwiner u_moved = potential_intertwiner(F, e, pL);
    VectorIntertwiner u_here = potential_intertwiner(F, Le, p);
    for (int lam : kHelicities) {
      ComplexFourVector lhs = helicity_rep(lam, W) * u_moved.at(lam);
      ComplexFourVector rhs = apply(Linv, u_here.at(lam));
      worst = std::max(worst, vdist(lhs, rhs) / std::max(1.0, vnorm(rhs)));
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("potential at the base momentum: little group phase law") {
  // For an element g = (c, phi) of the stabilizer of the base momentum:
  //   g u0(e)_lambda = e^{-i lambda phi} u0(g e)_lambda,
  // independently of the translation part c.
  CounterRng rng(2026, 55);
  double worst = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    std::array<double, 2> c{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    double phi = rng.uniform(0.0, 2.0 * PI);
    LorentzMatrix G = e2_compose(4, c, phi);
    ComplexFourVector e =
        (trial % 2 == 0)
            ? ComplexFourVector::from_real(random_unit_spacelike(rng))
            : random_tuboid_direction(rng);
    VectorIntertwiner u0 = potential_point_intertwiner(e, kBase);
    VectorIntertwiner u0g = potential_point_intertwiner(apply(G, e), kBase);
    for (int lam : kHelicities) {
      ComplexFourVector lhs = apply(G, u0.at(lam));
      ComplexFourVector rhs =
          std::exp(cplx(0.0, -lam * phi)) * u0g.at(lam);
      worst = std::max(worst, vdist(lhs, rhs) / std::max(1.0, vnorm(rhs)));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("helicity phase: rotation angle recovered, translations trivial") {
  CounterRng rng(2026, 56);
  for (int trial = 0; trial < 40; ++trial) {
    std::array<double, 2> c{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    double phi = rng.uniform(-PI + 0.05, PI - 0.05);
    LorentzMatrix G = e2_compose(4, c, phi);
    CHECK(std::abs(helicity_phase(G) - phi) < 1e-9);
  }
  LorentzMatrix T = e2_compose(4, {0.7, -0.4}, 0.0);
  CHECK(std::abs(helicity_rep(+1, T) - cplx(1.0)) < 1e-12);
  CHECK(std::abs(helicity_rep(-1, T) - cplx(1.0)) < 1e-12);
  CHECK_THROWS_AS(helicity_phase(rotation_d3(0.3)), std::invalid_argument);
  CHECK_THROWS_AS(helicity_rep(2, T), std::invalid_argument);
}

TEST_CASE("curl of the potential: e-independent exactly for F = i/w") {
  CounterRng rng(2026, 57);
  for (int rep = 0; rep < 5; ++rep) {
    RealFourVector p = random_null_momentum(rng);
    std::vector<ComplexFourVector> samples;
    while (samples.size() < 50) {
      ComplexFourVector e =
          ComplexFourVector::from_real(random_unit_spacelike(rng));
      if (std::abs(minkowski_dot(e, p)) < 0.3 * p[0]) continue;
      samples.push_back(e);
    }
    CurlReport curl = curl_e_independence(FModulator::inverse_energy(), p,
                                          samples);
    CHECK(curl.max_rel_deviation < 1e-10);

    // the common value is the field strength intertwiner itself
    FieldStrengthIntertwiner fs = field_strength_intertwiner(p);
    for (int lam : kHelicities) {
      CHECK(tdist(curl.mean.at(lam), fs.at(lam)) <
            1e-10 * (1.0 + tnorm(fs.at(lam))));
      ComplexFourVector c = contract_first(p, curl.mean.at(lam));
      CHECK(vnorm(c) < 1e-10 * (1.0 + tnorm(curl.mean.at(lam))) * (1.0 + p[0]));
      for (size_t mu = 0; mu < 4; ++mu)
        for (size_t nu = 0; nu < 4; ++nu)
          CHECK(std::abs(curl.mean.at(lam)[mu][nu] +
                         curl.mean.at(lam)[nu][mu]) < 1e-14);
    }

    // a constant modulator is not a potential of an e-independent 2-form
    CurlReport flat = curl_e_independence(FModulator::one(), p, samples);
    CHECK(flat.max_rel_deviation > 0.1);
  }
}

TEST_CASE("conjugation: point kernel identity and modulator reflection") {
  CounterRng rng(2026, 58);
  LorentzMatrix j0 = standard_reflection(4);

  // j0 conj(u_point(j0 e, -j0 p)_lambda) = u_point(e, p)_{-lambda} at real e
  double worst_pt = 0.0;
  int done = 0;
  while (done < 30) {
    RealFourVector p = random_null_momentum(rng);
    if (p[0] - p[3] < 0.1 * p[0]) continue;
    ++done;
    RealFourVector e = random_unit_spacelike(rng);
    ComplexFourVector ec = ComplexFourVector::from_real(e);
    ComplexFourVector j0e = apply(j0, ec);
    RealFourVector mj0p = apply_real(j0, p);
    for (int i = 0; i < 4; ++i) mj0p[i] = -mj0p[i];
    VectorIntertwiner inner = potential_point_intertwiner(j0e, mj0p);
    VectorIntertwiner direct = potential_point_intertwiner(ec, p);
    for (int lam : kHelicities) {
      ComplexFourVector lhs = apply(j0, conj_vec(inner.at(lam)));
      ComplexFourVector rhs = direct.at(-lam);
      worst_pt = std::max(worst_pt, vdist(lhs, rhs) / std::max(1.0, vnorm(rhs)));
    }
  }
  CHECK(worst_pt < 1e-13);

  // self-conjugate modulators: the conjugate intertwiner equals the original
  std::vector<FModulator> selfconj;
  selfconj.push_back(FModulator::one());
  selfconj.push_back(FModulator::inverse_energy());
  selfconj.push_back(FModulator::polynomial({cplx(1.0), cplx(0.0, 0.7),
                                             cplx(-0.3)}));
  double worst_sc = 0.0;
  done = 0;
  while (done < 60) {
    RealFourVector p = random_null_momentum(rng);
    if (p[0] - p[3] < 0.1 * p[0]) continue;
    ComplexFourVector e =
        ComplexFourVector::from_real(random_unit_spacelike(rng));
    const FModulator& F = selfconj[static_cast<size_t>(done) % selfconj.size()];
    if (F.variant() == FModulator::Variant::Inverse &&
        std::abs(minkowski_dot(e, p)) < 0.05 * (1.0 + p[0]))
      continue;
    ++done;
    VectorIntertwiner uc = conjugate_potential_intertwiner(F, e, p);
    VectorIntertwiner u = potential_intertwiner(F, e, p);
    for (int lam : kHelicities)
      worst_sc = std::max(
          worst_sc, vdist(uc.at(lam), u.at(lam)) / std::max(1.0, vnorm(u.at(lam))));
  }
  CHECK(worst_sc < 1e-9);

  // a boundary power modulator is conjugated into e^{-i pi beta} times
  // itself: the failure of self-conjugacy is exactly that constant
  FModulator pw = FModulator::power(cplx(0.5));
  cplx twist = std::exp(cplx(0.0, -PI * 0.5));
  double worst_tw = 0.0;
  done = 0;
  while (done < 30) {
    RealFourVector p = random_null_momentum(rng);
    if (p[0] - p[3] < 0.1 * p[0]) continue;
    ComplexFourVector e =
        ComplexFourVector::from_real(random_unit_spacelike(rng));
    if (std::abs(minkowski_dot(e, p)) < 0.05 * (1.0 + p[0])) continue;
    ++done;
    VectorIntertwiner uc = conjugate_potential_intertwiner(pw, e, p);
    VectorIntertwiner u = potential_intertwiner(pw, e, p);
    for (int lam : kHelicities)
      worst_tw = std::max(worst_tw,
                          vdist(uc.at(lam), twist * u.at(lam)) /
                              std::max(1.0, vnorm(u.at(lam))));
  }
  CHECK(worst_tw < 1e-12);

  // conjugating twice returns the original for any modulator
  double worst_inv = 0.0;
  done = 0;
  while (done < 30) {
    RealFourVector p = random_null_momentum(rng);
    if (p[0] - p[3] < 0.1 * p[0]) continue;
    ComplexFourVector e =
        ComplexFourVector::from_real(random_unit_spacelike(rng));
    if (std::abs(minkowski_dot(e, p)) < 0.05 * (1.0 + p[0])) continue;
    ++done;
    ComplexFourVector j0e = apply(j0, e);
    RealFourVector mj0p = apply_real(j0, p);
    for (int i = 0; i < 4; ++i) mj0p[i] = -mj0p[i];
    VectorIntertwiner uc_far = conjugate_potential_intertwiner(pw, j0e, mj0p);
    VectorIntertwiner u = potential_intertwiner(pw, e, p);
    for (int lam : kHelicities) {
      ComplexFourVector lhs = apply(j0, conj_vec(uc_far.at(-lam)));
      worst_inv = std::max(
          worst_inv, vdist(lhs, u.at(lam)) / std::max(1.0, vnorm(u.at(lam))));
    }
  }
  CHECK(worst_inv < 1e-12);
}

TEST_CASE("zero structure of the point kernel") {
  CounterRng rng(2026, 59);

  // At the base momentum the helicity component built on ehat_{-lambda}
  // vanishes exactly on null directions (a, b, -i lambda b, a) and only
  // there; the opposite component stays nonzero at generic such points.
  for (int trial = 0; trial < 10; ++trial) {
    cplx a(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    cplx b(rng.uniform(0.3, 1.0), rng.uniform(-1.0, 1.0));
    for (int lam : kHelicities) {
      ComplexFourVector e(a, b, cplx(0.0, -static_cast<double>(lam)) * b, a);
      VectorIntertwiner u = potential_point_intertwiner(e, kBase);
      CHECK(vnorm(u.at(lam)) < 1e-13 * (1.0 + vnorm(e)));
      CHECK(vnorm(u.at(-lam)) > 0.1 * std::abs(b));
    }
  }

  // No zeros on the complex hyperboloid e.e = -1.
  double min_norm = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 10000; ++trial) {
    RealFourVector p = (trial % 2 == 0) ? kBase : random_null_momentum(rng);
    ComplexFourVector e = random_complex_direction(rng);
    VectorIntertwiner u = potential_point_intertwiner(e, p);
    double scale = (1.0 + vnorm(e)) * (1.0 + p[0]);
    for (int lam : kHelicities)
      min_norm = std::min(min_norm, vnorm(u.at(lam)) / scale);
  }
  CHECK(min_norm > 1e-8);
}

TEST_CASE("stabilizer eigenvector: canonical, transported, and generic directions") {
  // canonical light-cone direction (e_+, e_-, 0, 0), e_+ e_- = -1:
  // eigenvector proportional to the reference polarization (0, 1, +-i, 0)
  double t = 0.7;
  RealFourVector ecan(0.5 * (-1.0 / t + t), 0.0, 0.0, 0.5 * (-1.0 / t - t));
  for (int lam : kHelicities) {
    StabilityEigenvectorReport rep = stability_eigenvector_check(ecan, lam);
    CHECK(rep.residual < 1e-10);
    CHECK(rep.orthogonal_failure > 0.3);
    ComplexFourVector ref(cplx(0.0), cplx(1.0),
                          cplx(0.0, static_cast<double>(lam)), cplx(0.0));
    cplx ip(0.0);
    double rn = 0.0;
    for (int i = 0; i < 4; ++i) {
      ip += std::conj(ref[i]) * rep.vector[i];
      rn += std::norm(ref[i]);
    }
    ComplexFourVector proj = (ip / rn) * ref;
    CHECK(vdist(rep.vector, proj) < 1e-10);
  }

  // transported by a little-group element: eigenvector moves along
  CounterRng rng(2026, 60);
  for (int trial = 0; trial < 10; ++trial) {
    std::array<double, 2> c{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    double phi = rng.uniform(0.0, 2.0 * PI);
    LorentzMatrix G = e2_compose(4, c, phi);
    RealFourVector emoved = apply_real(G, ecan);
    for (int lam : kHelicities) {
      StabilityEigenvectorReport base = stability_eigenvector_check(ecan, lam);
      StabilityEigenvectorReport rep = stability_eigenvector_check(emoved, lam);
      CHECK(rep.residual < 1e-9);
      ComplexFourVector pred = apply(G, base.vector);
      cplx ip(0.0);
      double pn = 0.0;
      for (int i = 0; i < 4; ++i) {
        ip += std::conj(pred[i]) * rep.vector[i];
        pn += std::norm(pred[i]);
      }
      ComplexFourVector proj = (ip / pn) * pred;
      CHECK(vdist(rep.vector, proj) < 1e-9 * (1.0 + vnorm(pred)));
    }
  }

  // generic real directions on the hyperboloid
  int done = 0;
  while (done < 20) {
    RealFourVector e = random_unit_spacelike(rng);
    if (std::abs(e[0] - e[3]) < 0.1) continue;
    ++done;
    for (int lam : kHelicities) {
      StabilityEigenvectorReport rep = stability_eigenvector_check(e, lam);
      CHECK(rep.residual < 1e-9);
      CHECK(rep.orthogonal_failure > 0.1);
    }
  }

  // degenerate direction e^0 = e^3 and off-hyperboloid input
  CHECK_THROWS_AS(
      stability_eigenvector_check(RealFourVector(0.5, 1.0, 0.0, 0.5), +1),
      std::domain_error);
  CHECK_THROWS_AS(
      stability_eigenvector_check(RealFourVector(0.0, 2.0, 0.0, 0.0), +1),
      std::invalid_argument);
}

TEST_CASE("modulator poles and the i-epsilon prescription") {
  // e.p = 0 exactly at the base configuration: the inverse modulator has a
  // pole there
  ComplexFourVector e(cplx(0.0), cplx(1.0), cplx(0.0), cplx(0.0));
  CHECK_THROWS_AS(
      potential_intertwiner(FModulator::inverse_energy(), e, kBase),
      std::domain_error);

  // a small positive shift regularizes: u = (1/eps) * point kernel
  double eps = 1e-6;
  VectorIntertwiner reg =
      potential_intertwiner(FModulator::inverse_energy(), e, kBase, eps);
  VectorIntertwiner pt = potential_point_intertwiner(e, kBase);
  for (int lam : kHelicities)
    CHECK(vdist(reg.at(lam), (1.0 / eps) * pt.at(lam)) <
          1e-9 * vnorm(reg.at(lam)));

  // away from the pole the shift is a small perturbation
  CounterRng rng(2026, 61);
  for (int trial = 0; trial < 20; ++trial) {
    RealFourVector p = random_null_momentum(rng);
    ComplexFourVector ee =
        ComplexFourVector::from_real(random_unit_spacelike(rng));
    double w = std::abs(minkowski_dot(ee, p).real());
    if (w < 0.2 * (1.0 + p[0])) continue;
    VectorIntertwiner u0 =
        potential_intertwiner(FModulator::inverse_energy(), ee, p);
    VectorIntertwiner u1 = potential_intertwiner(
        FModulator::inverse_energy(), ee, p, 1e-6 * w);
    for (int lam : kHelicities)
      CHECK(vdist(u0.at(lam), u1.at(lam)) < 1e-4 * vnorm(u0.at(lam)));
  }
}

TEST_CASE("field specification dispatch for photon kinds") {
  FieldSpec pot = FieldSpec::photon_potential();
  CHECK(pot.kind == FieldKind::PhotonPotential);
  CHECK(pot.mass == 0.0);
  FieldSpec fs = FieldSpec::photon_field_strength();
  CHECK(fs.kind == FieldKind::PhotonFieldStrength);
  ComplexFourVector e(cplx(0.2), cplx(0.3), cplx(0.0), cplx(1.0));
  CHECK_THROWS_AS(intertwiner(pot, e, kBase), std::invalid_argument);
}
