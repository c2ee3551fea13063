#pragma once

#include <array>
#include <string>
#include <vector>

namespace wrl {

// Quaternion w + x i + y j + z k; S^3 is the unit group.
struct Quat {
  double w = 0, x = 0, y = 0, z = 0;

  Quat() = default;
  Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  Quat& operator+=(const Quat& o) { w += o.w; x += o.x; y += o.y; z += o.z; return *this; }
  Quat& operator*=(double s) { w *= s; x *= s; y *= s; z *= s; return *this; }
  double norm() const;
};

Quat operator+(Quat a, const Quat& b);
Quat operator*(double s, Quat a);
Quat qmul(const Quat& a, const Quat& b);
Quat qconj(const Quat& a);

// Fixed conventions: Hopf map pi(q) = conj(q) i q read off in the (i,j,k)
// coordinates of the image sphere, fiber action q -> e^{i theta} q by left
// multiplication.  pi(1) = (1,0,0) anchors the "north pole".
std::array<double, 3> hopf_project(const Quat& q);

// Left multiplication by e^{i theta}.
Quat fiber_rotate(const Quat& q, double theta);

// Elastica on S^2 with speed |gamma'| = 2, geodesic curvature profile k,
// and its horizontal lift to S^3 through the Hopf fibration.
struct ElasticaSolution {
  double ds = 0;
  std::vector<double> s;
  std::vector<double> k, dk;
  std::vector<double> first_integral;  // (k')^2 + k^4/4 + k^2/2
  std::vector<std::array<double, 3>> gamma;
  std::vector<std::array<double, 3>> tangent;  // unit T, gamma' = 2T
  std::vector<std::array<double, 3>> binormal;
  std::vector<Quat> lift;

  int nodes() const { return int(s.size()); }
  std::string to_json() const;
};

// Fixed-step RK4 for k'' + (k^3 + k)/2 = 0; fills s, k, dk, first_integral.
ElasticaSolution solve_elastica(double k0, double dk0, double length, double ds);

// Frame transport on S^2: gamma' = 2T, T' = -2 gamma + 2 k B, B' = -2 k T,
// started at gamma = (1,0,0), T = (0,1,0).  k at RK4 half steps comes from
// cubic Hermite interpolation of (k, dk).
void frame_curve(ElasticaSolution& sol);

// Horizontal lift q' = q omega with omega = T x gamma (imaginary part),
// started at q = 1; requires frame_curve to have run.
void hopf_lift(ElasticaSolution& sol);

ElasticaSolution make_elastica(double k0, double dk0, double length, double ds);

}  // namespace wrl
