#include "stringloc/massive_intertwiners.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "stringloc/quadrature.hpp"
#include "stringloc/spherical_harmonics.hpp"

namespace stringloc {

// ---------------------------------------------------------------------------
// power_upper

cplx power_upper(cplx w, cplx alpha) {
  double re = w.real(), im = w.imag();
  if (im != 0.0 && std::abs(im) <= 1e-14 * std::abs(re)) im = 0.0;
  if (im == 0.0) {
    if (re == 0.0) {
      if (alpha.real() > 0.0) return cplx(0.0);
      if (alpha == cplx(0.0)) return cplx(1.0);
      if (alpha.real() < 0.0)
        return cplx(std::numeric_limits<double>::infinity(), 0.0);
      return cplx(std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN());
    }
    cplx logw(std::log(std::abs(re)), re < 0.0 ? PI : 0.0);
    return std::exp(alpha * logw);
  }
  return std::exp(alpha * std::log(cplx(re, im)));
}

// ---------------------------------------------------------------------------
// FModulator

FModulator FModulator::one() { return polynomial({cplx(1.0)}); }

FModulator FModulator::polynomial(std::vector<cplx> coeffs) {
  if (coeffs.empty()) coeffs.push_back(cplx(0.0));
  FModulator f;
  f.variant_ = Variant::Polynomial;
  f.coeffs_ = std::move(coeffs);
  return f;
}

FModulator FModulator::inverse_energy() {
  FModulator f;
  f.variant_ = Variant::Inverse;
  return f;
}

FModulator FModulator::power(cplx beta, double eta) {
  if (eta < 0.0)
    throw std::invalid_argument("FModulator::power: offset must be >= 0");
  FModulator f;
  f.variant_ = Variant::Power;
  f.beta_ = beta;
  f.eta_ = eta;
  return f;
}

bool FModulator::is_one() const {
  return variant_ == Variant::Polynomial && coeffs_.size() == 1 &&
         coeffs_[0] == cplx(1.0);
}

cplx FModulator::operator()(cplx w) const {
  if (variant_ == Variant::Polynomial) {
    cplx acc(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * w + *it;
    return acc;
  }
  if (w.imag() < -1e-10 * (1.0 + std::abs(w)))
    throw std::domain_error(
        "FModulator: argument below the closed upper half plane");
  if (variant_ == Variant::Inverse) {
    if (w == cplx(0.0))
      return cplx(std::numeric_limits<double>::infinity(), 0.0);
    return cplx(0.0, 1.0) / w;
  }
  return power_upper(w + cplx(0.0, eta_), beta_);
}

cplx FModulator::conjugate_reflected(cplx w) const {
  return std::conj((*this)(-std::conj(w)));
}

// ---------------------------------------------------------------------------
// FieldSpec

FieldSpec FieldSpec::massive_closed(int dim, double mass, int spin,
                                    FModulator F) {
  FieldSpec s;
  s.dimension = dim;
  s.mass = mass;
  s.spin = spin;
  s.kind = FieldKind::MassiveClosed;
  s.modulator = std::move(F);
  s.validate();
  return s;
}

FieldSpec FieldSpec::massive_alpha(int dim, double mass, int spin, cplx alpha,
                                   FModulator F) {
  FieldSpec s;
  s.dimension = dim;
  s.mass = mass;
  s.spin = spin;
  s.alpha = alpha;
  s.kind = FieldKind::MassiveAlpha;
  s.modulator = std::move(F);
  s.validate();
  return s;
}

FieldSpec FieldSpec::infinite_spin(int dim, double kappa, cplx alpha) {
  FieldSpec s;
  s.dimension = dim;
  s.mass = 0.0;
  s.kappa = kappa;
  s.alpha = alpha;
  s.kind = FieldKind::InfiniteSpin;
  s.validate();
  return s;
}

FieldSpec FieldSpec::photon_potential(FModulator F) {
  FieldSpec s;
  s.dimension = 4;
  s.mass = 0.0;
  s.kind = FieldKind::PhotonPotential;
  s.modulator = std::move(F);
  s.validate();
  return s;
}

FieldSpec FieldSpec::photon_field_strength() {
  FieldSpec s;
  s.dimension = 4;
  s.mass = 0.0;
  s.kind = FieldKind::PhotonFieldStrength;
  s.validate();
  return s;
}

void FieldSpec::validate() const {
  if (dimension != 3 && dimension != 4)
    throw std::invalid_argument("FieldSpec: dimension must be 3 or 4");
  switch (kind) {
    case FieldKind::MassiveClosed:
    case FieldKind::MassiveAlpha:
      if (mass <= 0.0)
        throw std::invalid_argument("FieldSpec: massive kinds need mass > 0");
      if (dimension == 4 && spin < 0)
        throw std::invalid_argument(
            "FieldSpec: negative spin labels exist only in d = 3");
      break;
    case FieldKind::InfiniteSpin:
      if (mass != 0.0 || kappa <= 0.0)
        throw std::invalid_argument(
            "FieldSpec: infinite spin needs mass = 0 and kappa > 0");
      break;
    case FieldKind::PhotonPotential:
    case FieldKind::PhotonFieldStrength:
      if (mass != 0.0 || dimension != 4)
        throw std::invalid_argument(
            "FieldSpec: photon kinds need mass = 0 and d = 4");
      break;
  }
}

// ---------------------------------------------------------------------------
// Poly4

Poly4 Poly4::constant(cplx c) {
  Poly4 p;
  if (c != cplx(0.0)) p.terms_[{0, 0, 0, 0}] = c;
  return p;
}

Poly4 Poly4::variable(int i) {
  Poly4 p;
  Key k{0, 0, 0, 0};
  k[static_cast<size_t>(i)] = 1;
  p.terms_[k] = cplx(1.0);
  return p;
}

Poly4 Poly4::operator+(const Poly4& o) const {
  Poly4 r = *this;
  for (const auto& [k, c] : o.terms_) {
    cplx& dst = r.terms_[k];
    dst += c;
    if (dst == cplx(0.0)) r.terms_.erase(k);
  }
  return r;
}

Poly4 Poly4::operator-(const Poly4& o) const { return *this + o * cplx(-1.0); }

Poly4 Poly4::operator*(const Poly4& o) const {
  Poly4 r;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) {
      Key k{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3]};
      cplx& dst = r.terms_[k];
      dst += ca * cb;
      if (dst == cplx(0.0)) r.terms_.erase(k);
    }
  return r;
}

Poly4 Poly4::operator*(cplx s) const {
  Poly4 r;
  if (s == cplx(0.0)) return r;
  for (const auto& [k, c] : terms_) r.terms_[k] = c * s;
  return r;
}

Poly4 Poly4::derivative(int i) const {
  Poly4 r;
  const size_t ii = static_cast<size_t>(i);
  for (const auto& [k, c] : terms_) {
    if (k[ii] == 0) continue;
    Key kk = k;
    kk[ii] -= 1;
    r.terms_[kk] = c * static_cast<double>(k[ii]);
  }
  return r;
}

cplx Poly4::eval(const ComplexFourVector& x) const {
  int maxdeg[4] = {0, 0, 0, 0};
  for (const auto& [k, c] : terms_)
    for (int i = 0; i < 4; ++i) maxdeg[i] = std::max(maxdeg[i], k[i]);
  std::array<std::array<cplx, 16>, 4> pw;
  for (int i = 0; i < 4; ++i) {
    pw[static_cast<size_t>(i)][0] = cplx(1.0);
    for (int k = 1; k <= maxdeg[i]; ++k)
      pw[static_cast<size_t>(i)][static_cast<size_t>(k)] =
          pw[static_cast<size_t>(i)][static_cast<size_t>(k - 1)] * x[i];
  }
  cplx s(0.0);
  for (const auto& [k, c] : terms_)
    s += c * pw[0][static_cast<size_t>(k[0])] * pw[1][static_cast<size_t>(k[1])] *
         pw[2][static_cast<size_t>(k[2])] * pw[3][static_cast<size_t>(k[3])];
  return s;
}

int Poly4::total_degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k[0] + k[1] + k[2] + k[3]);
  return d;
}

// ---------------------------------------------------------------------------
// Closed-form minimal intertwiner

namespace {

constexpr int kMaxSpin = 12;

cplx i_power(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return cplx(1.0, 0.0);
    case 1: return cplx(0.0, 1.0);
    case 2: return cplx(-1.0, 0.0);
    default: return cplx(0.0, -1.0);
  }
}

double factorial_ratio_sqrt(int a, int b) {
  // sqrt(a! / b!)
  return std::exp(0.5 * (std::lgamma(static_cast<double>(a) + 1.0) -
                         std::lgamma(static_cast<double>(b) + 1.0)));
}

std::vector<Poly4> build_u0_polys(int s, int dim) {
  std::vector<Poly4> out;
  const cplx I(0.0, 1.0);
  if (dim == 3) {
    const int a = std::abs(s);
    Poly4 z = (s >= 0) ? (Poly4::variable(1) + I * Poly4::variable(2))
                       : (Poly4::variable(1) - I * Poly4::variable(2));
    Poly4 acc = Poly4::constant(1.0);
    for (int k = 0; k < a; ++k) acc = acc * z;
    out.push_back(acc * i_power(a));
    return out;
  }
  // d = 4: repeated lowering from the top component (e1 - i e2)^s.
  const Poly4 zp = Poly4::variable(1) + I * Poly4::variable(2);
  const Poly4 zm = Poly4::variable(1) - I * Poly4::variable(2);
  const Poly4 x3 = Poly4::variable(3);
  Poly4 cur = Poly4::constant(1.0);
  for (int k = 0; k < s; ++k) cur = cur * zm;
  const cplx base = i_power(s) * std::pow(-1.0 / std::sqrt(2.0), s);
  out.resize(static_cast<size_t>(2 * s + 1));
  for (int m = s; m >= -s; --m) {
    const double pref = factorial_ratio_sqrt(s + m, s - m);
    out[static_cast<size_t>(m + s)] = cur * (base * pref);
    if (m > -s)
      cur = zp * cur.derivative(3) -
            x3 * (cur.derivative(1) + I * cur.derivative(2));
  }
  return out;
}

std::mutex g_u0_mutex;
std::map<std::pair<int, int>, std::vector<Poly4>> g_u0_cache;

}  // namespace

const std::vector<Poly4>& u0_closed_polys(int s, int dim) {
  if (dim != 3 && dim != 4)
    throw std::invalid_argument("u0_closed_polys: dimension must be 3 or 4");
  if (dim == 4 && (s < 0 || s > kMaxSpin))
    throw std::invalid_argument("u0_closed_polys: spin out of range for d = 4");
  if (dim == 3 && std::abs(s) > kMaxSpin)
    throw std::invalid_argument("u0_closed_polys: |spin| too large for d = 3");
  std::lock_guard<std::mutex> lock(g_u0_mutex);
  auto key = std::make_pair(dim, s);
  auto it = g_u0_cache.find(key);
  if (it == g_u0_cache.end())
    it = g_u0_cache.emplace(key, build_u0_polys(s, dim)).first;
  return it->second;
}

SpinVector u0_closed(int s, int dim, const ComplexFourVector& e) {
  const auto& polys = u0_closed_polys(s, dim);
  SpinVector v;
  v.reserve(polys.size());
  for (const auto& p : polys) v.push_back(p.eval(e));
  return v;
}

SpinVector u0_harmonic_form(int s, const RealFourVector& e) {
  if (e.dim != 4)
    throw std::invalid_argument("u0_harmonic_form: d = 4 only");
  double r = std::sqrt(e[1] * e[1] + e[2] * e[2] + e[3] * e[3]);
  if (r == 0.0)
    throw std::invalid_argument("u0_harmonic_form: vanishing spatial part");
  std::array<double, 3> n{e[1] / r, e[2] / r, e[3] / r};
  const cplx factor =
      i_power(-s) * std::pow(1.0 + e[0] * e[0], 0.5 * static_cast<double>(s));
  SpinVector v;
  v.reserve(static_cast<size_t>(2 * s + 1));
  for (int m = -s; m <= s; ++m)
    v.push_back(factor * std::conj(sph_harm_n(s, m, n)));
  return v;
}

// ---------------------------------------------------------------------------
// Integral intertwiners

namespace {

bool is_nonneg_integer(cplx a) {
  if (std::abs(a.imag()) > 1e-13) return false;
  double r = a.real();
  double n = std::round(r);
  return n >= 0.0 && std::abs(r - n) <= 1e-13 * (1.0 + std::abs(r));
}

double max_abs_component(const SpinVector& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, std::abs(c));
  return m;
}

double max_change(const SpinVector& a, const SpinVector& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Integration over the sphere / circle of null directions on a fixed product
// grid; valid whenever the integrand is smooth (tuboid e, or integer alpha).
SpinVector u_alpha_grid_d4(cplx alpha, int s, double mass,
                           const ComplexFourVector& x, int n_theta, int n_phi) {
  const auto grid = sphere_grid(n_theta, n_phi);
  std::vector<cplx> powers(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    const auto& g = grid[i];
    cplx w = (x[0] - g.n[0] * x[1] - g.n[1] * x[2] - g.n[2] * x[3]) / mass;
    powers[i] = power_upper(w, alpha);
  }
  SpinVector out(static_cast<size_t>(2 * s + 1));
  for (int m = -s; m <= s; ++m) {
    cplx acc(0.0);
    for (size_t i = 0; i < grid.size(); ++i)
      acc += grid[i].w * std::conj(sph_harm(s, m, grid[i].theta, grid[i].phi)) *
             powers[i];
    out[static_cast<size_t>(m + s)] = acc;
  }
  return out;
}

SpinVector u_alpha_grid_d3(cplx alpha, int s, double mass,
                           const ComplexFourVector& x, int n) {
  cplx acc(0.0);
  for (int j = 0; j < n; ++j) {
    double th = 2.0 * PI * static_cast<double>(j) / static_cast<double>(n);
    cplx w = (x[0] - std::cos(th) * x[1] - std::sin(th) * x[2]) / mass;
    acc += std::exp(cplx(0.0, s * th)) * power_upper(w, alpha);
  }
  acc *= 2.0 * PI / static_cast<double>(n);
  return {acc};
}

// Azimuthal Fourier weight of conj(Y_{s,m}) at a polar angle: the real
// function L(t) with conj(Y_{s,m}(theta, phi)) = L(cos theta) e^{-i m phi}.
double polar_weight(int s, int m, double t) {
  t = std::clamp(t, -1.0, 1.0);
  return sph_harm(s, m, std::acos(t), 0.0).real();
}

// --- boundary-value quadrature (real direction, noninteger power) ---------
//
// The integrand carries |w|^alpha factors that vanish on a curve of the
// integration domain.  We locate the zeros of w along each one-dimensional
// fibre, split the integral there, and flatten the remaining algebraic
// endpoint singularity with the substitution t = a + (b-a) xi^kappa, which
// turns |t-a|^alpha dt into a xi^{kappa(1+alpha)-1} dxi profile.

int substitution_power(double re_alpha) {
  if (re_alpha >= 0.0) return 2;
  int k = 2 * static_cast<int>(std::ceil(1.0 / (1.0 + re_alpha)));
  return std::clamp(k, 2, 16);
}

QuadResult integrate_one_sided(const std::function<cplx(double)>& f, double a,
                               double b, bool sing_a, bool sing_b, int kappa,
                               double tol) {
  if (!(b > a)) return QuadResult{cplx(0.0), 0.0, 0, true};
  if (sing_a && sing_b) {
    const double mid = 0.5 * (a + b);
    QuadResult l = integrate_one_sided(f, a, mid, true, false, kappa, tol / 2);
    QuadResult r = integrate_one_sided(f, mid, b, false, true, kappa, tol / 2);
    return QuadResult{l.value + r.value, l.error + r.error, l.evals + r.evals,
                      l.converged && r.converged};
  }
  const double len = b - a;
  if (sing_a || sing_b) {
    auto g = [&f, a, b, len, kappa, sing_a](double xi) {
      const double pw = std::pow(xi, kappa - 1);
      const double jac = kappa * len * pw;
      const double t = sing_a ? a + len * pw * xi : b - len * pw * xi;
      const cplx v = f(t) * jac;
      // the substitution extends the integrand continuously by zero at the
      // singular endpoint; a node that underflows onto the zero of the base
      // must not poison the sum with an infinity
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        return cplx(0.0);
      return v;
    };
    return adaptive_gk(g, 0.0, 1.0, tol, tol);
  }
  return adaptive_gk(f, a, b, tol, tol);
}

struct Segment {
  double a, b;
  bool sing_a, sing_b;
};

std::vector<Segment> segments_from_roots(double a, double b,
                                         std::vector<double> roots) {
  std::sort(roots.begin(), roots.end());
  std::vector<double> pts{a};
  const double eps = 1e-13 * (1.0 + std::abs(a) + std::abs(b));
  for (double r : roots)
    if (r > pts.back() + eps && r < b - eps) pts.push_back(r);
  pts.push_back(b);
  std::vector<Segment> segs;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    bool sl = i > 0 || (!roots.empty() && std::abs(roots.front() - a) <= eps);
    bool sr = i + 2 < pts.size() ||
              (!roots.empty() && std::abs(roots.back() - b) <= eps);
    segs.push_back(Segment{pts[i], pts[i + 1], sl, sr});
  }
  return segs;
}

QuadResult integrate_split(const std::function<cplx(double)>& f, double a,
                           double b, const std::vector<double>& roots,
                           int kappa, double tol) {
  auto segs = segments_from_roots(a, b, roots);
  QuadResult total{cplx(0.0), 0.0, 0, true};
  const double tol_each = tol / static_cast<double>(segs.size());
  for (const auto& sg : segs) {
    QuadResult r =
        integrate_one_sided(f, sg.a, sg.b, sg.sing_a, sg.sing_b, kappa,
                            tol_each);
    total.value += r.value;
    total.error += r.error;
    total.evals += r.evals;
    total.converged = total.converged && r.converged;
  }
  return total;
}

// circle fibre: zeros of w(theta) = (x0 - x1 cos - x2 sin)/mass
QuadResult d3_boundary_integral(cplx alpha, int s, double mass,
                                const RealFourVector& xr, double tol) {
  const double R = std::hypot(xr[1], xr[2]);
  const double that = std::atan2(xr[2], xr[1]);
  auto f = [&](double th) {
    const double w =
        (xr[0] - std::cos(th) * xr[1] - std::sin(th) * xr[2]) / mass;
    return std::exp(cplx(0.0, s * th)) * power_upper(cplx(w, 0.0), alpha);
  };
  std::vector<double> roots;
  if (R > 1e-14 * (1.0 + std::abs(xr[0])) && std::abs(xr[0]) < R) {
    const double g = std::acos(std::clamp(xr[0] / R, -1.0, 1.0));
    roots = {that + g, that + 2.0 * PI - g};
  }
  const int kappa = substitution_power(alpha.real());
  // integrate over one full period starting at the axis angle so the root
  // breakpoints fall inside the window
  return integrate_split(f, that, that + 2.0 * PI, roots, kappa, tol);
}

// polar fibre at fixed azimuth: zeros of w(t) = (x0 - a1 sqrt(1-t^2) - c t)/m
std::vector<double> polar_fibre_roots(double x0, double a1, double c) {
  std::vector<double> out;
  const double A = c * c + a1 * a1;
  const double scale = std::abs(x0) + std::abs(a1) + std::abs(c) + 1e-300;
  if (A < 1e-280) return out;
  const double disc = a1 * a1 * (A - x0 * x0);
  if (disc < 0.0) return out;
  const double sq = std::sqrt(disc);
  for (double t : {(x0 * c + sq) / A, (x0 * c - sq) / A}) {
    if (!(t >= -1.0 && t <= 1.0)) continue;
    const double res =
        x0 - a1 * std::sqrt(std::max(0.0, 1.0 - t * t)) - c * t;
    if (std::abs(res) <= 1e-8 * scale) out.push_back(t);
  }
  return out;
}

}  // namespace

IntertwinerValue u_alpha_integral(cplx alpha, int s, int dim, double mass,
                                  const ComplexFourVector& e,
                                  const RealFourVector& p,
                                  const QuadratureConfig& q) {
  if (dim != 3 && dim != 4)
    throw std::invalid_argument("u_alpha_integral: dimension must be 3 or 4");
  if (mass <= 0.0)
    throw std::invalid_argument("u_alpha_integral: mass must be positive");
  if (dim == 4 && s < 0)
    throw std::invalid_argument("u_alpha_integral: negative spin needs d = 3");

  const LorentzMatrix B = standard_boost(dim, mass, p);
  const ComplexFourVector x = apply(lorentz_inverse(B), e);

  double re_scale = 0.0, im_scale = 0.0;
  for (int i = 0; i < dim; ++i) {
    re_scale = std::max(re_scale, std::abs(x[i].real()));
    im_scale = std::max(im_scale, std::abs(x[i].imag()));
  }
  const bool effectively_real = im_scale <= 1e-13 * (1.0 + re_scale);
  const RealFourVector xi = x.imag_part();
  double xi_spatial = 0.0;
  for (int i = 1; i < dim; ++i) xi_spatial += xi[i] * xi[i];
  xi_spatial = std::sqrt(xi_spatial);
  const bool forward_timelike_im =
      xi[0] - xi_spatial > 1e-12 * (1.0 + re_scale + im_scale);
  const bool smooth = forward_timelike_im || is_nonneg_integer(alpha);

  if (!smooth && !effectively_real)
    throw std::domain_error(
        "u_alpha_integral: direction must be real or have forward-timelike "
        "imaginary part");
  if (!smooth && alpha.real() <= -1.0 + 1e-12)
    throw std::domain_error(
        "u_alpha_integral: real directions need Re alpha > -1");

  const cplx prefactor = std::exp(cplx(0.0, -PI / 2.0) * alpha);
  const double pref_mag = std::abs(prefactor);

  IntertwinerValue out;
  out.e = e;
  out.p = p;

  const int sa = std::abs(s);
  SpinVector cur, prev;
  double err = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;

  if (smooth) {
    int nt0 = q.initial_polar > 0 ? q.initial_polar : std::max(sa + 4, 10);
    int np0 = q.initial_azimuthal > 0 ? q.initial_azimuthal
                                      : std::max(4 * sa + 8, 16);
    const int levels = q.refine ? q.max_refinements : 0;
    for (int level = 0; level <= levels; ++level) {
      if (dim == 4)
        cur = u_alpha_grid_d4(alpha, s, mass, x, nt0 << level, np0 << level);
      else
        cur = u_alpha_grid_d3(alpha, s, mass, x, (4 * np0) << level);
      if (level > 0) {
        err = max_change(cur, prev);
        double scale = std::max(1.0, max_abs_component(cur));
        if (err <= q.tolerance * scale) {
          converged = true;
          break;
        }
      }
      prev = cur;
    }
    if (!q.refine) {
      err = std::numeric_limits<double>::quiet_NaN();
      converged = false;
    }
  } else if (dim == 3) {
    const RealFourVector xr = x.real_part();
    QuadResult r = d3_boundary_integral(alpha, s, mass, xr,
                                        0.2 * q.tolerance);
    cur = {r.value};
    err = r.error;
    converged = r.converged;
  } else {
    // d = 4, real direction, noninteger alpha: the power is singular on a
    // curve of the sphere.  For each azimuthal node locate the zeros along
    // the polar fibre, split there, and flatten the endpoint singularity;
    // the azimuthal trapezoid refines dyadically with node reuse.
    const RealFourVector xr = x.real_part();
    const int np0 = q.initial_azimuthal > 0 ? q.initial_azimuthal
                                            : std::max(4 * sa + 8, 32);
    const int levels = q.refine ? q.max_refinements : 0;
    const double inner_tol = 0.05 * q.tolerance;
    const int kappa = substitution_power(alpha.real());
    const int n_m = 2 * s + 1;
    struct Fibre {
      SpinVector vals;
      double err;
      bool ok;
    };
    const long long key_den = static_cast<long long>(np0) << levels;
    std::unordered_map<long long, Fibre> fibre_cache;
    auto fibre_at = [&](int j, int n) -> const Fibre& {
      const long long key = static_cast<long long>(j) * (key_den / n);
      auto it = fibre_cache.find(key);
      if (it != fibre_cache.end()) return it->second;
      const double phi = 2.0 * PI * static_cast<double>(j) / n;
      const double a1 = std::cos(phi) * xr[1] + std::sin(phi) * xr[2];
      Fibre fb;
      fb.vals.assign(static_cast<size_t>(n_m), cplx(0.0));
      fb.err = 0.0;
      fb.ok = true;
      const auto roots = polar_fibre_roots(xr[0], a1, xr[3]);
      for (int m = -s; m <= s; ++m) {
        auto f = [&](double t) {
          const double sin_th = std::sqrt(std::max(0.0, 1.0 - t * t));
          const double w = (xr[0] - sin_th * a1 - t * xr[3]) / mass;
          return polar_weight(s, m, t) * power_upper(cplx(w, 0.0), alpha);
        };
        QuadResult r = integrate_split(f, -1.0, 1.0, roots, kappa, inner_tol);
        fb.vals[static_cast<size_t>(m + s)] =
            std::exp(cplx(0.0, -m * phi)) * r.value;
        fb.err += r.error;
        fb.ok = fb.ok && r.converged;
      }
      return fibre_cache.emplace(key, std::move(fb)).first->second;
    };
    for (int level = 0; level <= levels; ++level) {
      const int n = np0 << level;
      SpinVector vals(static_cast<size_t>(n_m), cplx(0.0));
      double inner_err = 0.0;
      bool inner_ok = true;
      for (int j = 0; j < n; ++j) {
        const Fibre& fb = fibre_at(j, n);
        for (int k = 0; k < n_m; ++k)
          vals[static_cast<size_t>(k)] +=
              (2.0 * PI / n) * fb.vals[static_cast<size_t>(k)];
        inner_err += (2.0 * PI / n) * fb.err;
        inner_ok = inner_ok && fb.ok;
      }
      cur = vals;
      if (level > 0) {
        err = max_change(cur, prev) + inner_err;
        double scale = std::max(1.0, max_abs_component(cur));
        if (inner_ok && err <= q.tolerance * scale) {
          converged = true;
          break;
        }
      }
      prev = cur;
    }
    if (!q.refine) {
      err = std::numeric_limits<double>::quiet_NaN();
      converged = false;
    }
  }

  out.value = cur;
  for (auto& c : out.value) c *= prefactor;
  out.quadrature_error_estimate = std::isnan(err) ? err : pref_mag * err;
  out.converged = converged;
  return out;
}

// ---------------------------------------------------------------------------
// General intertwiners and conjugates

IntertwinerValue intertwiner(const FieldSpec& spec, const ComplexFourVector& e,
                             const RealFourVector& p,
                             const QuadratureConfig& q) {
  spec.validate();
  if (spec.kind != FieldKind::MassiveClosed &&
      spec.kind != FieldKind::MassiveAlpha)
    throw std::invalid_argument(
        "intertwiner: this kind is evaluated by its own module");
  if (e.dim != spec.dimension || p.dim != spec.dimension)
    throw std::invalid_argument("intertwiner: dimension mismatch");

  const cplx w = minkowski_dot(e, p);
  const cplx F = spec.modulator(w);

  IntertwinerValue out;
  if (spec.kind == FieldKind::MassiveClosed) {
    const LorentzMatrix B = standard_boost(spec.dimension, spec.mass, p);
    const ComplexFourVector x = apply(lorentz_inverse(B), e);
    out.value = u0_closed(spec.spin, spec.dimension, x);
    out.e = e;
    out.p = p;
    out.quadrature_error_estimate = 0.0;
    out.converged = true;
  } else {
    out = u_alpha_integral(spec.alpha, spec.spin, spec.dimension, spec.mass, e,
                           p, q);
  }
  for (auto& c : out.value) c *= F;
  out.quadrature_error_estimate *= std::abs(F);
  return out;
}

IntertwinerValue conjugate_intertwiner(const FieldSpec& spec,
                                       const ComplexFourVector& e,
                                       const RealFourVector& p,
                                       const QuadratureConfig& q) {
  const LorentzMatrix j0 = standard_reflection(spec.dimension);
  const ComplexFourVector ej = apply(j0, e);
  RealFourVector pj = apply_real(j0, p);
  for (int i = 0; i < pj.dim; ++i) pj[i] = -pj[i];
  IntertwinerValue v = intertwiner(spec, ej, pj, q);
  IntertwinerValue out;
  out.value = apply_j0_massive(spec.dimension, v.value);
  out.e = e;
  out.p = p;
  out.quadrature_error_estimate = v.quadrature_error_estimate;
  out.converged = v.converged;
  return out;
}

// ---------------------------------------------------------------------------
// Tensor decomposition

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i)
    r *= static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

SpinVector TensorDecomposition::reconstruct(const ComplexFourVector& e) const {
  ComplexFourVector low(e.dim);
  low[0] = e[0];
  for (int i = 1; i < e.dim; ++i) low[i] = -e[i];
  const size_t nm = static_cast<size_t>(dimension == 4 ? 2 * spin + 1 : 1);
  SpinVector out(nm, cplx(0.0));
  double s_fact = std::exp(std::lgamma(static_cast<double>(spin) + 1.0));
  for (const auto& [a, comp] : components) {
    double mult = s_fact;
    cplx mono(1.0);
    for (int i = 0; i < 4; ++i) {
      mult /= std::exp(std::lgamma(static_cast<double>(a[static_cast<size_t>(i)]) + 1.0));
      for (int k = 0; k < a[static_cast<size_t>(i)]; ++k) mono *= low[i];
    }
    for (size_t mi = 0; mi < nm; ++mi) out[mi] += mult * comp[mi] * mono;
  }
  return out;
}

TensorDecomposition tensor_decomposition(int s, int dim) {
  if (s < 0)
    throw std::invalid_argument("tensor_decomposition: spin must be >= 0");
  TensorDecomposition td;
  td.spin = s;
  td.dimension = dim;
  const size_t nm = static_cast<size_t>(dim == 4 ? 2 * s + 1 : 1);
  const double s_fact = std::exp(std::lgamma(static_cast<double>(s) + 1.0));

  // Lattice values of u0 (all monomials have total degree exactly s, so
  // s-th order forward differences extract coefficients exactly).
  std::map<std::array<int, 4>, SpinVector> lattice;
  auto value_at = [&](const std::array<int, 4>& j) -> const SpinVector& {
    auto it = lattice.find(j);
    if (it == lattice.end()) {
      ComplexFourVector x(dim);
      for (int i = 0; i < dim; ++i) x[i] = static_cast<double>(j[static_cast<size_t>(i)]);
      it = lattice.emplace(j, u0_closed(s, dim, x)).first;
    }
    return it->second;
  };

  // Enumerate exponent multi-indices a with |a| = s on the first `dim` slots.
  std::array<int, 4> a{0, 0, 0, 0};
  auto emit = [&](const std::array<int, 4>& aa) {
    SpinVector delta(nm, cplx(0.0));
    std::array<int, 4> j{0, 0, 0, 0};
    // sum over 0 <= j <= a of (-1)^{|a| - |j|} prod C(a_i, j_i) u0(j)
    for (j[0] = 0; j[0] <= aa[0]; ++j[0])
      for (j[1] = 0; j[1] <= aa[1]; ++j[1])
        for (j[2] = 0; j[2] <= aa[2]; ++j[2])
          for (j[3] = 0; j[3] <= aa[3]; ++j[3]) {
            int drop = (aa[0] - j[0]) + (aa[1] - j[1]) + (aa[2] - j[2]) +
                       (aa[3] - j[3]);
            double coef = ((drop % 2 == 0) ? 1.0 : -1.0);
            for (int i = 0; i < 4; ++i)
              coef *= binomial(aa[static_cast<size_t>(i)], j[static_cast<size_t>(i)]);
            const SpinVector& v = value_at(j);
            for (size_t mi = 0; mi < nm; ++mi) delta[mi] += coef * v[mi];
          }
    // tensor entry with lowered indices: Delta^a u0(0) (-1)^{s - a0} / s!
    const double sign = ((s - aa[0]) % 2 == 0) ? 1.0 : -1.0;
    SpinVector entry(nm);
    double scale_max = 0.0;
    for (size_t mi = 0; mi < nm; ++mi) {
      entry[mi] = delta[mi] * sign / s_fact;
      scale_max = std::max(scale_max, std::abs(entry[mi]));
    }
    if (scale_max > 1e-12) td.components[aa] = entry;
  };

  // compositions of s into dim parts
  if (dim == 4) {
    for (a[0] = 0; a[0] <= s; ++a[0])
      for (a[1] = 0; a[1] + a[0] <= s; ++a[1])
        for (a[2] = 0; a[2] + a[1] + a[0] <= s; ++a[2]) {
          a[3] = s - a[0] - a[1] - a[2];
          emit(a);
        }
  } else {
    a[3] = 0;
    for (a[0] = 0; a[0] <= s; ++a[0])
      for (a[1] = 0; a[1] + a[0] <= s; ++a[1]) {
        a[2] = s - a[0] - a[1];
        emit(a);
      }
  }
  return td;
}

// ---------------------------------------------------------------------------
// Norm law

double uv_norm_squared(const FieldSpec& spec, const RealFourVector& e,
                       const RealFourVector& p) {
  spec.validate();
  if (spec.kind != FieldKind::MassiveClosed)
    throw std::invalid_argument(
        "uv_norm_squared: exact norm law holds for the closed-form family");

  static std::mutex mu;
  static std::map<std::pair<int, int>, double> cache;
  double k_ref;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(spec.dimension, spec.spin);
    auto it = cache.find(key);
    if (it == cache.end()) {
      ComplexFourVector ref(spec.dimension);
      ref[spec.dimension - 1] = 1.0;  // e0 = 0 reference direction
      SpinVector v = u0_closed(spec.spin, spec.dimension, ref);
      double n2 = 0.0;
      for (const auto& c : v) n2 += std::norm(c);
      it = cache.emplace(key, n2).first;
    }
    k_ref = it->second;
  }

  const double w = minkowski_dot(e, p);
  const cplx F = spec.modulator(cplx(w, 0.0));
  const int sa = std::abs(spec.spin);
  return k_ref * std::norm(F) *
         std::pow((spec.mass * spec.mass + w * w) / (spec.mass * spec.mass),
                  sa);
}

}  // namespace stringloc
