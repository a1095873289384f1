#include "stringloc/wigner.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

#include "stringloc/spherical_harmonics.hpp"

namespace stringloc {

RealFourVector base_momentum(int dim, double mass) {
  RealFourVector p(dim);
  if (mass > 0.0) {
    p[0] = mass;
  } else {
    p[0] = 1.0;
    p[dim - 1] = 1.0;
  }
  return p;
}

RealFourVector on_shell(int dim, double mass,
                        const std::array<double, 3>& spatial) {
  RealFourVector p(dim);
  double s2 = 0;
  for (int i = 1; i < dim; ++i) {
    p[i] = spatial[static_cast<size_t>(i - 1)];
    s2 += p[i] * p[i];
  }
  p[0] = std::sqrt(mass * mass + s2);
  return p;
}

double mass_shell_defect(const RealFourVector& p, double mass) {
  return std::abs(minkowski_dot(p, p) - mass * mass);
}

namespace {

// Light-cone linear maps are built column-by-column through their action.
LorentzMatrix matrix_from_action(
    int dim, const std::function<RealFourVector(const RealFourVector&)>& act) {
  LorentzMatrix A(dim);
  for (int j = 0; j < dim; ++j) {
    RealFourVector ej(dim);
    ej[j] = 1.0;
    RealFourVector col = act(ej);
    for (int i = 0; i < dim; ++i) A(i, j) = col[i];
  }
  return A;
}

// Translation-type shear N(b): in light-cone coordinates z_+ = x^0 + x^{d-1},
// z_- = x^0 - x^{d-1}, transverse z_i:
//   z_+ -> z_+ ,  z_- -> z_- + 2 b.z_perp + |b|^2 z_+ ,  z_perp -> z_perp + z_+ b.
LorentzMatrix lower_shear(int dim, const std::array<double, 2>& b) {
  return matrix_from_action(dim, [&](const RealFourVector& x) {
    const int last = dim - 1;
    double zp = x[0] + x[last];
    double zm = x[0] - x[last];
    std::array<double, 2> zt{x[1], dim == 4 ? x[2] : 0.0};
    double bz = b[0] * zt[0] + b[1] * zt[1];
    double b2 = b[0] * b[0] + b[1] * b[1];
    double zm2 = zm + 2.0 * bz + b2 * zp;
    std::array<double, 2> zt2{zt[0] + zp * b[0], zt[1] + zp * b[1]};
    RealFourVector y(dim);
    y[0] = 0.5 * (zp + zm2);
    y[last] = 0.5 * (zp - zm2);
    y[1] = zt2[0];
    if (dim == 4) y[2] = zt2[1];
    return y;
  });
}

}  // namespace

LorentzMatrix standard_boost(int dim, double mass, const RealFourVector& p) {
  if (mass > 0.0) {
    // symmetric pure boost taking (m, 0, ...) to p
    double gamma = p[0] / mass;
    std::array<double, 3> b{};
    for (int i = 1; i < dim; ++i) b[static_cast<size_t>(i - 1)] = p[i] / mass;
    LorentzMatrix A(dim);
    A(0, 0) = gamma;
    for (int i = 1; i < dim; ++i) {
      A(0, i) = b[static_cast<size_t>(i - 1)];
      A(i, 0) = b[static_cast<size_t>(i - 1)];
      for (int j = 1; j < dim; ++j)
        A(i, j) = (i == j ? 1.0 : 0.0) +
                  b[static_cast<size_t>(i - 1)] * b[static_cast<size_t>(j - 1)] / (1.0 + gamma);
    }
    return A;
  }
  // massless: shear to set the transverse components, then boost along the
  // wedge axis to set p_+ = p^0 + p^{d-1}; degenerates when p_+ -> 0.
  const int last = dim - 1;
  double pp = p[0] + p[last];
  if (pp <= 1e-12 * std::abs(p[0]))
    throw std::domain_error("standard_boost: momentum on the degenerate ray");
  std::array<double, 2> b{0.5 * p[1], dim == 4 ? 0.5 * p[2] : 0.0};
  double chi = std::log(0.5 * pp);
  LorentzMatrix boost = boost_in_axis(dim, last, chi);
  return boost * lower_shear(dim, b);
}

LorentzMatrix wigner_rotation(int dim, double mass, const LorentzMatrix& lam,
                              const RealFourVector& p) {
  RealFourVector q = apply_real(lorentz_inverse(lam), p);
  LorentzMatrix R =
      lorentz_inverse(standard_boost(dim, mass, p)) * lam *
      standard_boost(dim, mass, q);
  RealFourVector pb = base_momentum(dim, mass);
  ComplexFourVector img = apply(R, pb);
  double defect = 0;
  for (int i = 0; i < dim; ++i) defect = std::max(defect, std::abs(img[i] - cplx(pb[i])));
  if (defect > 1e-7)
    throw std::runtime_error("wigner_rotation: base momentum not stabilized");
  return R;
}

E2Element e2_decompose(const LorentzMatrix& lam) {
  const int dim = lam.dim;
  const int last = dim - 1;
  RealFourVector pb = base_momentum(dim, 0.0);
  ComplexFourVector img = apply(lam, pb);
  for (int i = 0; i < dim; ++i)
    if (std::abs(img[i] - cplx(pb[i])) > 1e-8)
      throw std::invalid_argument("e2_decompose: base momentum not stabilized");

  // E_- has light-cone components z_- = 1, z_+ = 0, transverse 0.
  RealFourVector Em(dim);
  Em[0] = 0.5;
  Em[last] = -0.5;
  RealFourVector f = apply_real(lam, Em);

  E2Element g;
  g.dim = dim;
  g.c = {f[1], dim == 4 ? f[2] : 0.0};
  if (dim == 4) {
    RealFourVector e1(dim), e2v(dim);
    e1[1] = 1.0;
    e2v[2] = 1.0;
    RealFourVector r1 = apply_real(lam, e1);
    RealFourVector r2 = apply_real(lam, e2v);
    // rotation block in our orientation convention: R(0,0)=cos, R(0,1)=sin
    double c00 = r1[1], c10 = r1[2];
    g.phi = std::atan2(-c10, c00);
    (void)r2;
  } else {
    g.phi = 0.0;
  }
  LorentzMatrix back = e2_compose(dim, g.c, g.phi);
  if (max_abs_diff(back, lam) > 1e-8)
    throw std::invalid_argument("e2_decompose: recomposition failed");
  return g;
}

LorentzMatrix e2_compose(int dim, const std::array<double, 2>& c, double phi) {
  // Upper shear (translation part), fixing the base null momentum:
  //   z_+ -> z_+ + 2 c.(R z_perp) + |c|^2 z_- ,  z_- -> z_- ,
  //   z_perp -> R z_perp + z_- c,
  // with R the (clockwise-convention) rotation by phi on the transverse plane.
  double cs = std::cos(phi), sn = std::sin(phi);
  return matrix_from_action(dim, [&](const RealFourVector& x) {
    const int last = dim - 1;
    double zp = x[0] + x[last];
    double zm = x[0] - x[last];
    std::array<double, 2> zt{x[1], dim == 4 ? x[2] : 0.0};
    std::array<double, 2> rz{zt[0], zt[1]};
    if (dim == 4) rz = {cs * zt[0] + sn * zt[1], -sn * zt[0] + cs * zt[1]};
    double cdotrz = c[0] * rz[0] + c[1] * rz[1];
    double c2 = c[0] * c[0] + c[1] * c[1];
    double zp2 = zp + 2.0 * cdotrz + c2 * zm;
    std::array<double, 2> zt2{rz[0] + zm * c[0], rz[1] + zm * c[1]};
    RealFourVector y(dim);
    y[0] = 0.5 * (zp2 + zm);
    y[last] = 0.5 * (zp2 - zm);
    y[1] = zt2[0];
    if (dim == 4) y[2] = zt2[1];
    return y;
  });
}

namespace {

struct SpinBasisCache {
  std::vector<SphereNode> grid;
  // basis[m + s][node] = conj(Y_{s,m}(n)) * w
  std::vector<std::vector<cplx>> basis;
};

const SpinBasisCache& spin_basis(int s) {
  static std::map<int, SpinBasisCache> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(s);
  if (it == cache.end()) {
    SpinBasisCache cb;
    cb.grid = sphere_grid(s + 2, 4 * s + 4);
    cb.basis.assign(static_cast<size_t>(2 * s + 1), {});
    for (int m = -s; m <= s; ++m) {
      auto& row = cb.basis[static_cast<size_t>(m + s)];
      row.reserve(cb.grid.size());
      for (const auto& node : cb.grid)
        row.push_back(std::conj(sph_harm(s, m, node.theta, node.phi)) * node.w);
    }
    it = cache.emplace(s, std::move(cb)).first;
  }
  return it->second;
}

}  // namespace

std::vector<std::vector<cplx>> spin_rep_matrix(int s,
                                               const LorentzMatrix& rot) {
  if (rot.dim != 4)
    throw std::invalid_argument("spin_rep_matrix: d = 4 only");
  if (std::abs(rot(0, 0) - cplx(1.0)) > 1e-8)
    throw std::invalid_argument("spin_rep_matrix: not a spatial rotation");
  const auto& cb = spin_basis(s);
  const size_t n = static_cast<size_t>(2 * s + 1);
  LorentzMatrix rinv = lorentz_inverse(rot);

  // Y_m(R^{-1} n) for every node
  std::vector<std::vector<cplx>> rotated(n,
                                         std::vector<cplx>(cb.grid.size()));
  for (size_t k = 0; k < cb.grid.size(); ++k) {
    const auto& node = cb.grid[k];
    RealFourVector x(4);
    x[1] = node.n[0];
    x[2] = node.n[1];
    x[3] = node.n[2];
    RealFourVector y = apply_real(rinv, x);
    std::array<double, 3> nn{y[1], y[2], y[3]};
    for (int m = -s; m <= s; ++m)
      rotated[static_cast<size_t>(m + s)][k] = sph_harm_n(s, m, nn);
  }
  std::vector<std::vector<cplx>> D(n, std::vector<cplx>(n, cplx(0)));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      cplx sum = 0;
      for (size_t k = 0; k < cb.grid.size(); ++k)
        sum += cb.basis[a][k] * rotated[b][k];
      D[a][b] = sum;
    }
  return D;
}

double rotation_angle_d3(const LorentzMatrix& rot) {
  if (rot.dim != 3)
    throw std::invalid_argument("rotation_angle_d3: d = 3 only");
  if (std::abs(rot(0, 0) - cplx(1.0)) > 1e-8)
    throw std::invalid_argument("rotation_angle_d3: not a spatial rotation");
  // the angle omega by which the rotation advances the combination
  // x1 + i x2 (so a helicity-s vector picks up exactly e^{i s omega})
  return std::atan2(rot(2, 1).real(), rot(1, 1).real());
}

SpinVector apply_D_massive(int dim, int s, const LorentzMatrix& rot,
                           const SpinVector& v) {
  if (dim == 3) {
    double omega = rotation_angle_d3(rot);
    return {std::polar(1.0, s * omega) * v.at(0)};
  }
  auto D = spin_rep_matrix(s, rot);
  const size_t n = static_cast<size_t>(2 * s + 1);
  if (v.size() != n) throw std::invalid_argument("apply_D_massive: size");
  SpinVector out(n, cplx(0));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) out[a] += D[a][b] * v[b];
  return out;
}

SpinVector apply_j0_massive(int dim, const SpinVector& v) {
  if (dim == 3) return {std::conj(v.at(0))};
  const size_t n = v.size();
  SpinVector out(n);
  for (size_t i = 0; i < n; ++i) out[i] = std::conj(v[n - 1 - i]);
  return out;
}

CircleFunction apply_D_infinite_spin(const E2Element& g,
                                     const CircleFunction& f) {
  const size_t N = f.v.size();
  CircleFunction out;
  out.kappa = f.kappa;
  out.v.assign(N, cplx(0));
  if (g.dim == 3)
    throw std::invalid_argument("apply_D_infinite_spin: d = 4 only");

  // rotation: angle shift theta -> theta + phi via exact DFT resampling
  std::vector<cplx> fhat(N, cplx(0));
  for (size_t n = 0; n < N; ++n) {
    long freq = static_cast<long>(n) - static_cast<long>(n > N / 2 ? N : 0);
    cplx acc = 0;
    for (size_t j = 0; j < N; ++j)
      acc += f.v[j] * std::polar(1.0, -2.0 * PI * double(freq) * double(j) / double(N));
    fhat[n] = acc / double(N);
    // store the shift phase directly
    fhat[n] *= std::polar(1.0, double(freq) * g.phi);
  }
  for (size_t j = 0; j < N; ++j) {
    cplx acc = 0;
    for (size_t n = 0; n < N; ++n) {
      long freq = static_cast<long>(n) - static_cast<long>(n > N / 2 ? N : 0);
      acc += fhat[n] * std::polar(1.0, 2.0 * PI * double(freq) * double(j) / double(N));
    }
    auto k = f.point(j);
    out.v[j] = std::polar(1.0, g.c[0] * k[0] + g.c[1] * k[1]) * acc;
  }
  return out;
}

CircleFunction apply_j0_infinite_spin(const CircleFunction& f) {
  CircleFunction out = f;
  for (auto& x : out.v) x = std::conj(x);
  return out;
}

}  // namespace stringloc
