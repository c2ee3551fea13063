#include "wrl/residues.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace wrl {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_polar(const ChartDomain& dom) {
  if (dom.kind == ChartKind::rectangle)
    throw std::invalid_argument("residues: chart has no polar structure");
  if (!dom.periodic_v)
    throw std::invalid_argument("residues: contour direction must be periodic");
}

int contour_index(const ImmersionGrid& g, double rho) {
  const auto& dom = g.domain;
  const double u = u_of_rho(dom, rho);
  const int i = int(std::llround((u - dom.u0) / dom.du()));
  const int lo = dom.periodic_u ? 0 : 2;
  const int hi = dom.periodic_u ? dom.nu - 1 : dom.nu - 3;
  if (u < dom.u0 - 1e-12 || u > dom.u1 + 1e-12 || i < lo || i > hi)
    throw std::invalid_argument("residues: radius outside the chart interior");
  return i;
}

struct ContourData {
  int i = 0;
  double u = 0, rho = 0, hv = 0;
  // per contour node: the flux integrand T_nu, the position, the unit-speed
  // tangent derivative of Phi, H, n
  std::vector<Rm> tnu, phi, dtau_phi, hvec;
  std::vector<MultiVector> n;
};

ContourData contour_data(const ImmersionGrid& g, const FrameField& f,
                         const CurrentField& cur, int i) {
  const auto& dom = g.domain;
  ContourData d;
  d.i = i;
  d.u = dom.u(i);
  d.rho = rho_of_u(dom, d.u);
  d.hv = dom.hv(d.u);
  const int m = g.m, nv = dom.nv;
  d.tnu.resize(nv);
  d.phi.resize(nv);
  d.dtau_phi.resize(nv);
  d.hvec.resize(nv);
  d.n.resize(nv);
  for (int j = 0; j < nv; ++j) {
    const size_t idx = g.idx(i, j);
    d.tnu[j] = rm_from(&cur.tu[idx * m], m);
    d.phi[j] = g.point(i, j);
    d.dtau_phi[j] = (1.0 / d.hv) * rm_from(&f.dphi_v[idx * m], m);
    d.hvec[j] = f.H_at(idx);
    d.n[j] = f.n_at(idx);
  }
  return d;
}

// Residues on one contour; 2 pi c = contour integral of the flux.
ResidueSet eval_residues(const ImmersionGrid& g, const ContourData& d) {
  const auto& dom = g.domain;
  const int m = g.m, nv = dom.nv;
  const double dsig = d.hv * dom.dv();

  ResidueSet r;
  r.m = m;
  r.c = Rm(m);
  r.c1 = MultiVector(m, 2);
  r.radius = d.rho;
  r.chart_u = d.u;
  r.contour = d.i;

  Rm c_half(m);
  double c0 = 0, c0_half = 0;
  MultiVector c1(m, 2), c1_half(m, 2);
  Rm c(m);

  const int sgn = ((m - 1) & 1) ? -1 : 1;  // (-1)^{m-1}
  for (int j = 0; j < nv; ++j) {
    const Rm& t = d.tnu[j];
    const double c0j = -dot(t, d.phi[j]);
    const MultiVector star_nh = hodge_star(contract(d.n[j], to_mv(d.hvec[j])));
    const MultiVector c1j =
        -wedge(to_mv(t), to_mv(d.phi[j])) -
        (2.0 * sgn) * contract(star_nh, to_mv(d.dtau_phi[j]));
    c += dsig * t;
    c0 += dsig * c0j;
    c1 += dsig * c1j;
    if (j % 2 == 0 && nv % 2 == 0) {
      c_half += (2 * dsig) * t;
      c0_half += 2 * dsig * c0j;
      c1_half += (2 * dsig) * c1j;
    }
  }
  const double s = 1.0 / (2.0 * kPi);
  r.c = s * c;
  r.c0 = s * c0;
  r.c1 = s * c1;
  if (nv % 2 == 0) {
    double e = norm(s * (c - c_half));
    e = std::max(e, std::abs(s * (c0 - c0_half)));
    e = std::max(e, (s * (c1 - c1_half)).norm());
    r.quad_error = e;
  }
  return r;
}

}  // namespace

double rho_of_u(const ChartDomain& dom, double u) {
  return dom.kind == ChartKind::annulus ? u : std::exp(-u);
}

double u_of_rho(const ChartDomain& dom, double rho) {
  if (!(rho > 0)) throw std::invalid_argument("residues: radius must be positive");
  return dom.kind == ChartKind::annulus ? rho : -std::log(rho);
}

double grad_log_rho_u(const ChartDomain& dom, double u) {
  return dom.kind == ChartKind::annulus ? 1.0 / u : -1.0;
}

ResidueSet compute_residues(const ImmersionGrid& g, const FrameField& f, double rho) {
  require_polar(g.domain);
  const CurrentField cur = willmore_current(g, f);
  return eval_residues(g, contour_data(g, f, cur, contour_index(g, rho)));
}

Rm residue_c(const ImmersionGrid& g, const FrameField& f, double rho) {
  return compute_residues(g, f, rho).c;
}

double residue_c0(const ImmersionGrid& g, const FrameField& f, double rho) {
  return compute_residues(g, f, rho).c0;
}

MultiVector residue_c1(const ImmersionGrid& g, const FrameField& f, double rho) {
  return compute_residues(g, f, rho).c1;
}

SweepResult residue_sweep(const ImmersionGrid& g, const FrameField& f,
                          const std::vector<double>& radii) {
  require_polar(g.domain);
  if (radii.size() < 3)
    throw std::invalid_argument("residue_sweep: need at least 3 radii");
  const CurrentField cur = willmore_current(g, f);
  SweepResult out;
  for (double rho : radii)
    out.rows.push_back(eval_residues(g, contour_data(g, f, cur, contour_index(g, rho))));
  for (size_t a = 0; a < out.rows.size(); ++a)
    for (size_t b = a + 1; b < out.rows.size(); ++b) {
      out.dev_c = std::max(out.dev_c, norm(out.rows[a].c - out.rows[b].c));
      out.dev_c0 = std::max(out.dev_c0, std::abs(out.rows[a].c0 - out.rows[b].c0));
      out.dev_c1 = std::max(out.dev_c1, (out.rows[a].c1 - out.rows[b].c1).norm());
    }
  return out;
}

std::string ResidueSet::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "1";
  std::vector<double> cv(c.a.begin(), c.a.begin() + m);
  j["c"] = cv;
  j["c0"] = c0;
  nlohmann::ordered_json c1j = nlohmann::ordered_json::object();
  for (unsigned mask : blade_masks(m, 2)) {
    std::string key;
    for (int b = 0; b < m; ++b)
      if (mask & (1u << b)) key += char('1' + b);
    c1j[key] = c1.coef(mask);
  }
  j["c1"] = c1j;
  j["radius"] = radius;
  j["quad_error"] = quad_error;
  return j.dump();
}

std::string SweepResult::to_csv() const {
  if (rows.empty()) return "";
  const int m = rows[0].m;
  std::ostringstream os;
  os.precision(17);
  os << "radius";
  for (int c = 0; c < m; ++c) os << ",c_" << c + 1;
  os << ",c0";
  std::vector<std::string> keys;
  for (unsigned mask : blade_masks(m, 2)) {
    std::string key;
    for (int b = 0; b < m; ++b)
      if (mask & (1u << b)) key += char('1' + b);
    keys.push_back(key);
    os << ",c1_" << key;
  }
  os << ",quad_error\n";
  for (const auto& r : rows) {
    os << r.radius;
    for (int c = 0; c < m; ++c) os << "," << r.c[c];
    os << "," << r.c0;
    for (unsigned mask : blade_masks(m, 2)) os << "," << r.c1.coef(mask);
    os << "," << r.quad_error << "\n";
  }
  os << "deviation";
  for (int c = 0; c < m; ++c) os << "," << dev_c;
  os << "," << dev_c0;
  for (size_t kk = 0; kk < keys.size(); ++kk) os << "," << dev_c1;
  os << ",\n";
  return os.str();
}

MultiVector analytic_c1_hopf(const ElasticaSolution& sol, double s) {
  if (sol.lift.empty())
    throw std::invalid_argument("analytic_c1_hopf: solution has no lift");
  const int node =
      std::max(0, std::min(sol.nodes() - 1, int(std::llround(s / sol.ds))));
  const double k = sol.k[node];
  const double dk = sol.dk[node];
  const Quat q = sol.lift[node];
  const auto& t = sol.tangent[node];
  const auto& ga = sol.gamma[node];
  // gamma_tilde'(s) = q * omega with omega = T x gamma (exact lift tangent)
  const Quat om(0, t[1] * ga[2] - t[2] * ga[1], t[2] * ga[0] - t[0] * ga[2],
                t[0] * ga[1] - t[1] * ga[0]);
  const Quat dq = qmul(q, om);

  auto vec4 = [](const Quat& p) {
    Rm r(4);
    r[0] = p.w; r[1] = p.x; r[2] = p.y; r[3] = p.z;
    return r;
  };
  const Quat qi(0, 1, 0, 0);

  // The integrand is a trig polynomial of degree <= 2 in theta, so the
  // 16-point trapezoid rule is exact.
  const int nq = 16;
  MultiVector acc(4, 2);
  for (int a = 0; a < nq; ++a) {
    const double th = 2.0 * kPi * a / nq;
    const Quat phi_q = fiber_rotate(q, th);
    const Quat ts_q = fiber_rotate(dq, th);
    const MultiVector phi = to_mv(vec4(phi_q));
    const MultiVector ts = to_mv(vec4(ts_q));
    const MultiVector tth = to_mv(vec4(qmul(qi, phi_q)));
    const MultiVector nvec = to_mv(vec4(qmul(qi, ts_q)));  // n = i d_s Phi
    const MultiVector nn = wedge(nvec, phi);               // Gauss 2-vector
    const MultiVector hmv = k * nvec - phi;
    const MultiVector ds_n = -2.0 * k * ts - tth;          // d_s n
    const MultiVector ds_h = dk * nvec + k * ds_n - ts;
    const MultiVector dth_n = -1.0 * ts;                   // d_theta n
    const MultiVector dth_nn = wedge(dth_n, phi) + wedge(nvec, tth);

    const MultiVector t_nu =
        ds_h - 3.0 * project_normal_raw(nn, ds_h) - hodge_star(wedge(dth_nn, hmv));
    const MultiVector integrand =
        -wedge(t_nu, phi) + 2.0 * contract(hodge_star(contract(nn, hmv)), tth);
    acc += integrand;
  }
  return (1.0 / nq) * acc;  // (1/2pi) * integral over theta
}

}  // namespace wrl
