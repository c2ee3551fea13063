#include "wrl/elastica.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace wrl {

double Quat::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Quat operator+(Quat a, const Quat& b) { return a += b; }
Quat operator*(double s, Quat a) { return a *= s; }

Quat qmul(const Quat& a, const Quat& b) {
  return Quat(a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
              a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
              a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
              a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w);
}

Quat qconj(const Quat& a) { return Quat(a.w, -a.x, -a.y, -a.z); }

std::array<double, 3> hopf_project(const Quat& q) {
  if (std::abs(q.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("hopf_project: quaternion not unit");
  const Quat r = qmul(qconj(q), qmul(Quat(0, 1, 0, 0), q));
  return {r.x, r.y, r.z};
}

Quat fiber_rotate(const Quat& q, double theta) {
  return qmul(Quat(std::cos(theta), std::sin(theta), 0, 0), q);
}

namespace {

using V3 = std::array<double, 3>;

V3 add(const V3& a, const V3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
V3 mul(double s, const V3& a) { return {s * a[0], s * a[1], s * a[2]}; }
V3 cross(const V3& a, const V3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

struct TransportState {
  V3 g, t, b;
  Quat q;
};

TransportState rhs(const TransportState& y, double k) {
  TransportState d;
  d.g = mul(2.0, y.t);
  d.t = add(mul(-2.0, y.g), mul(2.0 * k, y.b));
  d.b = mul(-2.0 * k, y.t);
  const V3 om = cross(y.t, y.g);  // omega = T x gamma
  d.q = qmul(y.q, Quat(0, om[0], om[1], om[2]));
  return d;
}

TransportState axpy(const TransportState& y, double h, const TransportState& d) {
  TransportState r;
  r.g = add(y.g, mul(h, d.g));
  r.t = add(y.t, mul(h, d.t));
  r.b = add(y.b, mul(h, d.b));
  r.q = y.q + h * d.q;
  return r;
}

void transport(ElasticaSolution& sol, bool with_lift) {
  const int n = sol.nodes();
  sol.gamma.resize(n);
  sol.tangent.resize(n);
  sol.binormal.resize(n);
  if (with_lift) sol.lift.resize(n);

  TransportState y;
  y.g = {1, 0, 0};
  y.t = {0, 1, 0};
  y.b = cross(y.g, y.t);
  y.q = Quat(1, 0, 0, 0);

  const double h = sol.ds;
  for (int i = 0; i < n; ++i) {
    sol.gamma[i] = y.g;
    sol.tangent[i] = y.t;
    sol.binormal[i] = y.b;
    if (with_lift) sol.lift[i] = y.q;
    if (i == n - 1) break;

    const double k0 = sol.k[i], k1 = sol.k[i + 1];
    // cubic Hermite value of k at the half step
    const double km = 0.5 * (k0 + k1) + (h / 8.0) * (sol.dk[i] - sol.dk[i + 1]);

    const TransportState d1 = rhs(y, k0);
    const TransportState d2 = rhs(axpy(y, h / 2, d1), km);
    const TransportState d3 = rhs(axpy(y, h / 2, d2), km);
    const TransportState d4 = rhs(axpy(y, h, d3), k1);

    y.g = add(y.g, mul(h / 6, add(add(d1.g, mul(2, add(d2.g, d3.g))), d4.g)));
    y.t = add(y.t, mul(h / 6, add(add(d1.t, mul(2, add(d2.t, d3.t))), d4.t)));
    y.b = add(y.b, mul(h / 6, add(add(d1.b, mul(2, add(d2.b, d3.b))), d4.b)));
    y.q = y.q + (h / 6) * (d1.q + 2.0 * (d2.q + d3.q) + d4.q);
  }
}

}  // namespace

ElasticaSolution solve_elastica(double k0, double dk0, double length, double ds) {
  if (!(length > 0) || !(ds > 0))
    throw std::invalid_argument("elastica: need positive length and step");
  const int n = std::max(2, int(std::llround(length / ds))) + 1;
  ElasticaSolution sol;
  sol.ds = length / (n - 1);  // land exactly on [0, length]
  sol.s.resize(n);
  sol.k.resize(n);
  sol.dk.resize(n);
  sol.first_integral.resize(n);

  double k = k0, w = dk0;
  const double h = sol.ds;
  auto accel = [](double kk) { return -0.5 * (kk * kk * kk + kk); };
  for (int i = 0; i < n; ++i) {
    sol.s[i] = i * h;
    sol.k[i] = k;
    sol.dk[i] = w;
    sol.first_integral[i] = w * w + 0.25 * k * k * k * k + 0.5 * k * k;
    if (!std::isfinite(k) || !std::isfinite(w))
      throw std::runtime_error("elastica: integration blew up");
    if (i == n - 1) break;
    const double k1 = w, w1 = accel(k);
    const double k2 = w + h / 2 * w1, w2 = accel(k + h / 2 * k1);
    const double k3 = w + h / 2 * w2, w3 = accel(k + h / 2 * k2);
    const double k4 = w + h * w3, w4 = accel(k + h * k3);
    k += h / 6 * (k1 + 2 * (k2 + k3) + k4);
    w += h / 6 * (w1 + 2 * (w2 + w3) + w4);
  }
  return sol;
}

void frame_curve(ElasticaSolution& sol) {
  if (sol.nodes() < 2) throw std::invalid_argument("frame_curve: empty profile");
  transport(sol, false);
}

void hopf_lift(ElasticaSolution& sol) {
  if (sol.gamma.empty()) throw std::invalid_argument("hopf_lift: run frame_curve first");
  transport(sol, true);
}

ElasticaSolution make_elastica(double k0, double dk0, double length, double ds) {
  ElasticaSolution sol = solve_elastica(k0, dk0, length, ds);
  frame_curve(sol);
  hopf_lift(sol);
  return sol;
}

std::string ElasticaSolution::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "1";
  j["ds"] = ds;
  j["s"] = s;
  j["k"] = k;
  j["dk"] = dk;
  j["first_integral"] = first_integral;
  auto arr3 = [](const std::vector<std::array<double, 3>>& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& p : v) a.push_back({p[0], p[1], p[2]});
    return a;
  };
  j["gamma"] = arr3(gamma);
  nlohmann::ordered_json lifts = nlohmann::ordered_json::array();
  for (const auto& q : lift) lifts.push_back({q.w, q.x, q.y, q.z});
  j["gamma_tilde"] = lifts;
  return j.dump();
}

}  // namespace wrl
