#include "stringloc/spherical_harmonics.hpp"

#include <cmath>

#include "stringloc/quadrature.hpp"

namespace stringloc {

double assoc_legendre(int l, int m, double x) {
  // stable upward recurrence in l at fixed m
  double pmm = 1.0;
  if (m > 0) {
    double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    double fact = 1.0;
    for (int i = 0; i < m; ++i) {
      pmm *= fact * s;
      fact += 2.0;
    }
  }
  if (l == m) return pmm;
  double pmmp1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pmmp1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

cplx sph_harm(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  double lnnorm = 0.0;
  for (int k = l - am + 1; k <= l + am; ++k) lnnorm -= std::log(double(k));
  double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * PI) * std::exp(lnnorm));
  double p = assoc_legendre(l, am, std::cos(theta));
  cplx val = norm * p * std::polar(1.0, am * phi);
  if (am % 2 == 1) val = -val;  // Condon-Shortley phase
  if (m >= 0) return val;
  cplx conj_pos = std::conj(val);
  return (am % 2 == 0) ? conj_pos : -conj_pos;
}

cplx sph_harm_n(int l, int m, const std::array<double, 3>& n) {
  double theta = std::acos(std::clamp(n[2], -1.0, 1.0));
  double phi = std::atan2(n[1], n[0]);
  return sph_harm(l, m, theta, phi);
}

std::vector<SphereNode> sphere_grid(int n_theta, int n_phi) {
  std::vector<SphereNode> out;
  out.reserve(static_cast<size_t>(n_theta) * static_cast<size_t>(n_phi));
  const auto& gl = gauss_legendre(n_theta);
  const double dphi = 2.0 * PI / n_phi;
  for (const auto& node : gl) {
    double ct = node.x;  // cos(theta) in [-1, 1]
    double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    double theta = std::acos(std::clamp(ct, -1.0, 1.0));
    for (int j = 0; j < n_phi; ++j) {
      double phi = dphi * j;
      SphereNode sn;
      sn.n = {st * std::cos(phi), st * std::sin(phi), ct};
      sn.theta = theta;
      sn.phi = phi;
      sn.w = node.w * dphi;
      out.push_back(sn);
    }
  }
  return out;
}

}  // namespace stringloc
