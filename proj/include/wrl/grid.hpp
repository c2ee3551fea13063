#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "wrl/multivec.hpp"

namespace wrl {

// Small value type for points/vectors of R^m, m <= 6.
struct Rm {
  int m = 0;
  std::array<double, 6> a{};

  Rm() = default;
  Rm(int dim) : m(dim) {}
  double& operator[](int i) { return a[i]; }
  double operator[](int i) const { return a[i]; }

  Rm& operator+=(const Rm& o) { for (int i = 0; i < m; ++i) a[i] += o.a[i]; return *this; }
  Rm& operator-=(const Rm& o) { for (int i = 0; i < m; ++i) a[i] -= o.a[i]; return *this; }
  Rm& operator*=(double s) { for (int i = 0; i < m; ++i) a[i] *= s; return *this; }
};

inline Rm operator+(Rm x, const Rm& y) { return x += y; }
inline Rm operator-(Rm x, const Rm& y) { return x -= y; }
inline Rm operator*(double s, Rm x) { return x *= s; }
inline Rm operator*(Rm x, double s) { return x *= s; }
inline Rm operator-(Rm x) { return x *= -1.0; }

inline double dot(const Rm& x, const Rm& y) {
  double s = 0;
  for (int i = 0; i < x.m; ++i) s += x.a[i] * y.a[i];
  return s;
}
inline double norm(const Rm& x) { return std::sqrt(dot(x, x)); }

inline Rm rm_from(const double* p, int m) {
  Rm r(m);
  for (int i = 0; i < m; ++i) r.a[i] = p[i];
  return r;
}

MultiVector to_mv(const Rm& x);
Rm from_mv(const MultiVector& v);

enum class ChartKind { rectangle, annulus, cylinder };

std::string to_string(ChartKind k);
ChartKind chart_kind_from_string(const std::string& s);

// Structured parametric chart.  The reference (domain) metric is
// du^2 + hv(u)^2 dv^2: flat for all three kinds, with hv = rho = u giving the
// polar form on the annulus and hv = 1 otherwise.  Conformality of an
// immersion is always meant with respect to this reference structure.
struct ChartDomain {
  ChartKind kind = ChartKind::rectangle;
  double u0 = 0, u1 = 1;
  double v0 = 0, v1 = 1;
  bool periodic_u = false;
  bool periodic_v = false;
  int nu = 16, nv = 16;

  void validate() const;

  double du() const { return (u1 - u0) / (periodic_u ? nu : nu - 1); }
  double dv() const { return (v1 - v0) / (periodic_v ? nv : nv - 1); }
  double u(int i) const { return u0 + i * du(); }
  double v(int j) const { return v0 + j * dv(); }

  double hv(double u) const { return kind == ChartKind::annulus ? u : 1.0; }
  double dhv() const { return kind == ChartKind::annulus ? 1.0 : 0.0; }
};

// Sampled immersion Phi : domain -> R^m, row-major with v fastest.
struct ImmersionGrid {
  ChartDomain domain;
  int m = 3;
  bool closed = false;  // all chart ends periodic or analytically capped
  std::vector<double> pts;  // [(i*nv + j)*m + c]

  // Optional closed-form coordinate derivatives, filled by the catalogue and
  // carried exactly through Moebius maps.  Conformality diagnostics use them
  // when present; everything else differentiates the sampled points.
  std::vector<double> dpts_u, dpts_v;
  bool has_analytic_derivs() const { return !dpts_u.empty(); }

  int npts() const { return domain.nu * domain.nv; }
  size_t idx(int i, int j) const { return size_t(i) * domain.nv + j; }
  double* at(int i, int j) { return &pts[idx(i, j) * m]; }
  const double* at(int i, int j) const { return &pts[idx(i, j) * m]; }
  Rm point(int i, int j) const { return rm_from(at(i, j), m); }

  void validate() const;

  std::string to_json() const;
  static ImmersionGrid from_json(const std::string& text);
};

// Composite quadrature weights on one axis: trapezoidal (all-equal) weights
// for periodic axes, composite Simpson otherwise (with a 3/8 tail when the
// interval count is odd).
std::vector<double> quad_weights(int n, double h, bool periodic);

}  // namespace wrl
