#pragma once
// Minkowski linear algebra in d = 3 or 4 spacetime dimensions.
//
// Conventions used throughout the library:
//   * metric signature (+, -, ..., -), components indexed 0 .. d-1,
//   * the distinguished "wedge axis" is the last spatial axis, x_{d-1},
//   * vectors carry their dimension; slots beyond d-1 stay exactly zero,
//   * all bilinear forms extend to complex arguments WITHOUT conjugation
//     (the complex quadric e.e = -1 is the analytic continuation surface).

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace stringloc {

using cplx = std::complex<double>;
inline constexpr double PI = 3.14159265358979323846264338327950288;

struct RealFourVector {
  int dim = 4;
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  RealFourVector() = default;
  explicit RealFourVector(int d) : dim(d) {}
  RealFourVector(double t, double x, double y) : dim(3), c{t, x, y, 0.0} {}
  RealFourVector(double t, double x, double y, double z)
      : dim(4), c{t, x, y, z} {}

  double& operator[](int i) { return c[static_cast<size_t>(i)]; }
  double operator[](int i) const { return c[static_cast<size_t>(i)]; }
};

struct ComplexFourVector {
  int dim = 4;
  std::array<cplx, 4> c{};

  ComplexFourVector() = default;
  explicit ComplexFourVector(int d) : dim(d) {}
  ComplexFourVector(cplx t, cplx x, cplx y) : dim(3), c{t, x, y, cplx(0)} {}
  ComplexFourVector(cplx t, cplx x, cplx y, cplx z) : dim(4), c{t, x, y, z} {}

  static ComplexFourVector from_real(const RealFourVector& v) {
    ComplexFourVector w(v.dim);
    for (int i = 0; i < v.dim; ++i) w.c[static_cast<size_t>(i)] = v[i];
    return w;
  }

  cplx& operator[](int i) { return c[static_cast<size_t>(i)]; }
  cplx operator[](int i) const { return c[static_cast<size_t>(i)]; }

  RealFourVector real_part() const {
    RealFourVector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = c[static_cast<size_t>(i)].real();
    return v;
  }
  RealFourVector imag_part() const {
    RealFourVector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = c[static_cast<size_t>(i)].imag();
    return v;
  }
};

inline RealFourVector operator+(const RealFourVector& a,
                                const RealFourVector& b) {
  RealFourVector r(a.dim);
  for (int i = 0; i < a.dim; ++i) r[i] = a[i] + b[i];
  return r;
}
inline RealFourVector operator-(const RealFourVector& a,
                                const RealFourVector& b) {
  RealFourVector r(a.dim);
  for (int i = 0; i < a.dim; ++i) r[i] = a[i] - b[i];
  return r;
}
inline RealFourVector operator*(double s, const RealFourVector& a) {
  RealFourVector r(a.dim);
  for (int i = 0; i < a.dim; ++i) r[i] = s * a[i];
  return r;
}
inline ComplexFourVector operator+(const ComplexFourVector& a,
                                   const ComplexFourVector& b) {
  ComplexFourVector r(a.dim);
  for (int i = 0; i < a.dim; ++i) r[i] = a[i] + b[i];
  return r;
}
inline ComplexFourVector operator-(const ComplexFourVector& a,
                                   const ComplexFourVector& b) {
  ComplexFourVector r(a.dim);
  for (int i = 0; i < a.dim; ++i) r[i] = a[i] - b[i];
  return r;
}
inline ComplexFourVector operator*(cplx s, const ComplexFourVector& a) {
  ComplexFourVector r(a.dim);
  for (int i = 0; i < a.dim; ++i) r[i] = s * a[i];
  return r;
}

// Bilinear Minkowski product a.b = a0 b0 - a1 b1 - ... (no conjugation).
inline double minkowski_dot(const RealFourVector& a, const RealFourVector& b) {
  double s = a[0] * b[0];
  for (int i = 1; i < a.dim; ++i) s -= a[i] * b[i];
  return s;
}
inline cplx minkowski_dot(const ComplexFourVector& a,
                          const ComplexFourVector& b) {
  cplx s = a[0] * b[0];
  for (int i = 1; i < a.dim; ++i) s -= a[i] * b[i];
  return s;
}
inline cplx minkowski_dot(const ComplexFourVector& a, const RealFourVector& b) {
  cplx s = a[0] * b[0];
  for (int i = 1; i < a.dim; ++i) s -= a[i] * b[i];
  return s;
}
inline cplx minkowski_dot(const RealFourVector& a, const ComplexFourVector& b) {
  return minkowski_dot(b, a);
}

inline double euclid_norm(const RealFourVector& a) {
  double s = 0;
  for (int i = 0; i < a.dim; ++i) s += a[i] * a[i];
  return std::sqrt(s);
}

// Dense d x d matrix with complex entries; used for real Lorentz matrices,
// complexified boosts and reflections alike.
struct LorentzMatrix {
  int dim = 4;
  std::array<std::array<cplx, 4>, 4> m{};

  LorentzMatrix() = default;
  explicit LorentzMatrix(int d) : dim(d) {}

  static LorentzMatrix identity(int d) {
    LorentzMatrix I(d);
    for (int i = 0; i < d; ++i) I.m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
    return I;
  }

  cplx& operator()(int i, int j) { return m[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
  cplx operator()(int i, int j) const { return m[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

  bool is_real(double tol = 1e-12) const {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (std::abs((*this)(i, j).imag()) > tol) return false;
    return true;
  }
};

inline LorentzMatrix operator*(const LorentzMatrix& A, const LorentzMatrix& B) {
  LorentzMatrix C(A.dim);
  for (int i = 0; i < A.dim; ++i)
    for (int k = 0; k < A.dim; ++k) {
      cplx a = A(i, k);
      if (a == cplx(0)) continue;
      for (int j = 0; j < A.dim; ++j) C(i, j) += a * B(k, j);
    }
  return C;
}

inline ComplexFourVector apply(const LorentzMatrix& A,
                               const ComplexFourVector& v) {
  ComplexFourVector r(A.dim);
  for (int i = 0; i < A.dim; ++i) {
    cplx s = 0;
    for (int j = 0; j < A.dim; ++j) s += A(i, j) * v[j];
    r[i] = s;
  }
  return r;
}
inline ComplexFourVector apply(const LorentzMatrix& A,
                               const RealFourVector& v) {
  return apply(A, ComplexFourVector::from_real(v));
}
// Applies a real matrix to a real vector (throws if the matrix is not real).
inline RealFourVector apply_real(const LorentzMatrix& A,
                                 const RealFourVector& v) {
  RealFourVector r(A.dim);
  for (int i = 0; i < A.dim; ++i) {
    double s = 0;
    for (int j = 0; j < A.dim; ++j) {
      if (std::abs(A(i, j).imag()) > 1e-9)
        throw std::domain_error("apply_real: matrix has complex entries");
      s += A(i, j).real() * v[j];
    }
    r[i] = s;
  }
  return r;
}

// Inverse of a (complex) Lorentz matrix: A^{-1} = g A^T g.
inline LorentzMatrix lorentz_inverse(const LorentzMatrix& A) {
  LorentzMatrix B(A.dim);
  auto eta = [](int i) { return i == 0 ? 1.0 : -1.0; };
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j) B(i, j) = eta(i) * eta(j) * A(j, i);
  return B;
}

inline double max_abs_diff(const LorentzMatrix& A, const LorentzMatrix& B) {
  double d = 0;
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j) d = std::max(d, std::abs(A(i, j) - B(i, j)));
  return d;
}

// || A^T g A - g ||_max : zero iff A preserves the metric.
inline double lorentz_defect(const LorentzMatrix& A) {
  auto eta = [](int i) { return i == 0 ? 1.0 : -1.0; };
  double d = 0;
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j) {
      cplx s = 0;
      for (int k = 0; k < A.dim; ++k) s += A(k, i) * eta(k) * A(k, j);
      cplx target = (i == j) ? cplx(eta(i)) : cplx(0);
      d = std::max(d, std::abs(s - target));
    }
  return d;
}

inline bool is_proper_orthochronous(const LorentzMatrix& A, double tol = 1e-9) {
  if (!A.is_real(tol) || lorentz_defect(A) > tol) return false;
  if (A(0, 0).real() < 1.0 - tol) return false;
  // determinant via Laplace expansion (d <= 4)
  const int d = A.dim;
  double det = 0;
  if (d == 3) {
    det = A(0, 0).real() * (A(1, 1).real() * A(2, 2).real() - A(1, 2).real() * A(2, 1).real()) -
          A(0, 1).real() * (A(1, 0).real() * A(2, 2).real() - A(1, 2).real() * A(2, 0).real()) +
          A(0, 2).real() * (A(1, 0).real() * A(2, 1).real() - A(1, 1).real() * A(2, 0).real());
  } else {
    auto minor3 = [&](int r, int c) {
      double sub[3][3];
      int ii = 0;
      for (int i = 0; i < 4; ++i) {
        if (i == r) continue;
        int jj = 0;
        for (int j = 0; j < 4; ++j) {
          if (j == c) continue;
          sub[ii][jj++] = A(i, j).real();
        }
        ++ii;
      }
      return sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1]) -
             sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0]) +
             sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0]);
    };
    for (int j = 0; j < 4; ++j)
      det += ((j % 2 == 0) ? 1.0 : -1.0) * A(0, j).real() * minor3(0, j);
  }
  return std::abs(det - 1.0) <= 64 * tol;
}

// Boost with (complex) rapidity z acting in the (0, axis) plane.
inline LorentzMatrix boost_in_axis(int dim, int axis, cplx z) {
  LorentzMatrix A = LorentzMatrix::identity(dim);
  A(0, 0) = std::cosh(z);
  A(0, axis) = std::sinh(z);
  A(axis, 0) = std::sinh(z);
  A(axis, axis) = std::cosh(z);
  return A;
}

// Rotation by phi about the 3-axis (d = 4).  The spatial block is
// [[cos, sin], [-sin, cos]] on the (1,2) components, so the induced little
// group representation on spin components is diag(e^{i m phi}).
inline LorentzMatrix rotation_about_3axis(double phi) {
  LorentzMatrix A = LorentzMatrix::identity(4);
  A(1, 1) = std::cos(phi);
  A(1, 2) = std::sin(phi);
  A(2, 1) = -std::sin(phi);
  A(2, 2) = std::cos(phi);
  return A;
}

// Spatial rotation in d = 3 (plane (1,2)), same orientation convention.
inline LorentzMatrix rotation_d3(double phi) {
  LorentzMatrix A = LorentzMatrix::identity(3);
  A(1, 1) = std::cos(phi);
  A(1, 2) = std::sin(phi);
  A(2, 1) = -std::sin(phi);
  A(2, 2) = std::cos(phi);
  return A;
}

// Reflection that flips x^0 and x^{d-1}.
inline LorentzMatrix standard_reflection(int dim) {
  LorentzMatrix A = LorentzMatrix::identity(dim);
  A(0, 0) = -1.0;
  A(dim - 1, dim - 1) = -1.0;
  return A;
}

}  // namespace stringloc
