#include "wrl/grid.hpp"

#include <stdexcept>

#include "json.hpp"

namespace wrl {

MultiVector to_mv(const Rm& x) {
  MultiVector v(x.m, 1);
  for (int i = 0; i < x.m; ++i) v.set_coef(1u << i, x.a[i]);
  return v;
}

Rm from_mv(const MultiVector& v) {
  if (v.grade() != 1)
    throw std::invalid_argument("from_mv expects a 1-vector");
  Rm r(v.dim());
  for (int i = 0; i < v.dim(); ++i) r.a[i] = v.coef(1u << i);
  return r;
}

std::string to_string(ChartKind k) {
  switch (k) {
    case ChartKind::rectangle: return "rectangle";
    case ChartKind::annulus: return "annulus";
    case ChartKind::cylinder: return "cylinder";
  }
  return "?";
}

ChartKind chart_kind_from_string(const std::string& s) {
  if (s == "rectangle") return ChartKind::rectangle;
  if (s == "annulus") return ChartKind::annulus;
  if (s == "cylinder") return ChartKind::cylinder;
  throw std::invalid_argument("unknown chart kind: " + s);
}

void ChartDomain::validate() const {
  if (nu < 16 || nv < 16)
    throw std::invalid_argument("chart: grid sizes must be >= 16");
  if (!(u0 < u1) || !(v0 < v1))
    throw std::invalid_argument("chart: empty coordinate range");
  if (kind == ChartKind::annulus) {
    if (!(u0 > 0))
      throw std::invalid_argument("annulus: need 0 < rho_min < rho_max");
    if (!periodic_v)
      throw std::invalid_argument("annulus: theta direction must be periodic");
    if (periodic_u)
      throw std::invalid_argument("annulus: radial direction cannot be periodic");
  }
  if (kind == ChartKind::cylinder && !periodic_v)
    throw std::invalid_argument("cylinder: v direction must be periodic");
  if (kind == ChartKind::rectangle && (periodic_u || periodic_v))
    throw std::invalid_argument("rectangle: no periodic directions");
}

void ImmersionGrid::validate() const {
  domain.validate();
  if (m < 2 || m > kMaxDim)
    throw std::invalid_argument("grid: ambient dimension out of range");
  if (pts.size() != size_t(npts()) * m)
    throw std::invalid_argument("grid: point array size mismatch");
}

std::string ImmersionGrid::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "1";
  j["kind"] = to_string(domain.kind);
  j["u0"] = domain.u0;
  j["u1"] = domain.u1;
  j["v0"] = domain.v0;
  j["v1"] = domain.v1;
  j["periodic_u"] = domain.periodic_u;
  j["periodic_v"] = domain.periodic_v;
  j["nu"] = domain.nu;
  j["nv"] = domain.nv;
  j["m"] = m;
  j["closed"] = closed;
  j["points"] = pts;
  return j.dump();
}

ImmersionGrid ImmersionGrid::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  ImmersionGrid g;
  g.domain.kind = chart_kind_from_string(j.at("kind").get<std::string>());
  g.domain.u0 = j.at("u0").get<double>();
  g.domain.u1 = j.at("u1").get<double>();
  g.domain.v0 = j.at("v0").get<double>();
  g.domain.v1 = j.at("v1").get<double>();
  g.domain.periodic_u = j.value("periodic_u", false);
  g.domain.periodic_v = j.value("periodic_v", false);
  g.domain.nu = j.at("nu").get<int>();
  g.domain.nv = j.at("nv").get<int>();
  g.m = j.at("m").get<int>();
  g.closed = j.value("closed", false);
  g.pts = j.at("points").get<std::vector<double>>();
  g.validate();
  return g;
}

std::vector<double> quad_weights(int n, double h, bool periodic) {
  std::vector<double> w(n, h);
  if (periodic) return w;  // wraparound trapezoid
  if (n < 4) throw std::invalid_argument("quadrature needs >= 4 nodes");
  const int intervals = n - 1;
  std::fill(w.begin(), w.end(), 0.0);
  int simpson_end = intervals;  // node index where plain Simpson stops
  if (intervals % 2 != 0) simpson_end = intervals - 3;
  for (int k = 0; k + 2 <= simpson_end; k += 2) {
    w[k] += h / 3.0;
    w[k + 1] += 4.0 * h / 3.0;
    w[k + 2] += h / 3.0;
  }
  if (simpson_end != intervals) {  // Simpson 3/8 on the last three intervals
    const double c = 3.0 * h / 8.0;
    w[n - 4] += c;
    w[n - 3] += 3.0 * c;
    w[n - 2] += 3.0 * c;
    w[n - 1] += c;
  }
  return w;
}

}  // namespace wrl
