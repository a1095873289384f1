#include "stringloc/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace stringloc {

namespace {

std::vector<QuadNode> compute_gl(int n) {
  // Newton iteration on P_n with the three-term recurrence.
  std::vector<QuadNode> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    out[static_cast<size_t>(n - 1 - i)] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  return out;
}

}  // namespace

const std::vector<QuadNode>& gauss_legendre(int n) {
  static std::map<int, std::vector<QuadNode>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
  return it->second;
}

std::vector<QuadNode> gauss_legendre(int n, double a, double b) {
  const auto& base = gauss_legendre(n);
  std::vector<QuadNode> out(base.size());
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (size_t i = 0; i < base.size(); ++i)
    out[i] = {mid + half * base[i].x, half * base[i].w};
  return out;
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (symmetric half listed).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct GkEval {
  cplx gk;      // 15-point value
  double err;   // |GK15 - G7| based estimate
};

GkEval gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  cplx fc = f(mid);
  cplx resk = kWgk[7] * fc;
  cplx resg = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    cplx f1 = f(mid - half * kXgk[j]);
    cplx f2 = f(mid + half * kXgk[j]);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  GkEval r;
  r.gk = resk * half;
  double diff = std::abs((resk - resg) * half);
  r.err = diff;
  return r;
}

struct Segment {
  double a, b;
  cplx val;
  double err;
  int depth;
};

}  // namespace

QuadResult adaptive_gk(const std::function<cplx(double)>& f, double a, double b,
                       double tol_abs, double tol_rel, int max_depth,
                       long max_evals) {
  QuadResult res;
  if (a == b) return res;
  std::vector<Segment> stack;
  GkEval e0 = gk15(f, a, b);
  res.evals = 15;
  stack.push_back({a, b, e0.gk, e0.err, 0});
  cplx total = 0.0;
  double toterr = 0.0;

  // Rough magnitude scale used for the relative part of the tolerance.
  double scale = std::abs(e0.gk);

  while (!stack.empty()) {
    Segment s = stack.back();
    stack.pop_back();
    double local_tol =
        std::max(tol_abs, tol_rel * scale) * (s.b - s.a) / (b - a);
    if (s.err <= local_tol || s.depth >= max_depth ||
        res.evals + 30 > max_evals) {
      if (s.err > local_tol) res.converged = false;
      total += s.val;
      toterr += s.err;
      continue;
    }
    double mid = 0.5 * (s.a + s.b);
    GkEval e1 = gk15(f, s.a, mid);
    GkEval e2 = gk15(f, mid, s.b);
    res.evals += 30;
    scale = std::max(scale, std::abs(e1.gk + e2.gk));
    stack.push_back({s.a, mid, e1.gk, e1.err, s.depth + 1});
    stack.push_back({mid, s.b, e2.gk, e2.err, s.depth + 1});
  }
  res.value = total;
  res.error = toterr;
  return res;
}

QuadResult trapezoid_periodic(const std::function<cplx(double)>& f, double a,
                              double b, int n) {
  QuadResult res;
  const double h = (b - a) / n;
  cplx s = 0.0;
  for (int i = 0; i < n; ++i) s += f(a + i * h);
  res.value = s * h;
  res.evals = n;
  res.error = 0.0;  // spectral accuracy for smooth periodic integrands
  return res;
}

}  // namespace stringloc
