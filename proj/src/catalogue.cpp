#include "wrl/catalogue.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "json.hpp"
#include "wrl/frames.hpp"

namespace wrl {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Chart with closed-form first derivatives.
struct ChartFns {
  std::function<void(double, double, double*)> phi, du, dv;
};

ImmersionGrid sample_chart(ChartDomain dom, int m, const ChartFns& f) {
  dom.validate();
  ImmersionGrid g;
  g.domain = dom;
  g.m = m;
  const size_t n = size_t(dom.nu) * dom.nv * m;
  g.pts.resize(n);
  g.dpts_u.resize(n);
  g.dpts_v.resize(n);
  for (int i = 0; i < dom.nu; ++i)
    for (int j = 0; j < dom.nv; ++j) {
      const double u = dom.u(i), v = dom.v(j);
      const size_t off = g.idx(i, j) * m;
      f.phi(u, v, &g.pts[off]);
      f.du(u, v, &g.dpts_u[off]);
      f.dv(u, v, &g.dpts_v[off]);
    }
  return g;
}

// x -> (x - p)/|x - p|^2 and its Jacobian action on tangent vectors.
void invert_point(const double* p, const double* center, int m, double* out) {
  double r2 = 0;
  for (int c = 0; c < m; ++c) {
    out[c] = p[c] - center[c];
    r2 += out[c] * out[c];
  }
  for (int c = 0; c < m; ++c) out[c] /= r2;
}

void invert_tangent(const double* p, const double* center, int m,
                    const double* v, double* out) {
  double d[6], r2 = 0, vd = 0;
  for (int c = 0; c < m; ++c) {
    d[c] = p[c] - center[c];
    r2 += d[c] * d[c];
    vd += v[c] * d[c];
  }
  for (int c = 0; c < m; ++c) out[c] = (v[c] - 2.0 * vd * d[c] / r2) / r2;
}

}  // namespace

double SurfaceSpec::param(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::string SurfaceSpec::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "1";
  j["kind"] = kind;
  j["params"] = params;
  j["nu"] = nu;
  j["nv"] = nv;
  return j.dump();
}

SurfaceSpec SurfaceSpec::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  SurfaceSpec s;
  s.kind = j.at("kind").get<std::string>();
  if (j.contains("params"))
    s.params = j["params"].get<std::map<std::string, double>>();
  s.nu = j.value("nu", 64);
  s.nv = j.value("nv", 64);
  return s;
}

ElasticaSolution hopf_elastica(const SurfaceSpec& spec) {
  const double length = spec.param("length", kPi);
  const double du = length / (spec.nu - 1);
  const double ds_req = spec.param("ds", 1e-3 * length);
  const int nsub = std::max(1, int(std::ceil(du / ds_req)));
  return make_elastica(spec.param("k0", 0.0), spec.param("dk0", 0.0), length,
                       du / nsub);
}

ImmersionGrid realize(const SurfaceSpec& spec) {
  if (spec.nu < 16 || spec.nv < 16)
    throw std::invalid_argument("realize: resolution too coarse (min 16)");
  ImmersionGrid g;

  if (spec.kind == "plane") {
    const double a = spec.param("size", 1.0);
    ChartDomain dom{ChartKind::rectangle, -a, a, -a, a, false, false, spec.nu, spec.nv};
    g = sample_chart(dom, 3,
                     {[](double u, double v, double* p) { p[0] = u; p[1] = v; p[2] = 0; },
                      [](double, double, double* p) { p[0] = 1; p[1] = 0; p[2] = 0; },
                      [](double, double, double* p) { p[0] = 0; p[1] = 1; p[2] = 0; }});
  } else if (spec.kind == "sphere") {
    const double r = spec.param("radius", 1.0);
    const double band = spec.param("band", 7.0);
    ChartDomain dom{ChartKind::cylinder, -band, band, 0, 2 * kPi, false, true,
                    spec.nu, spec.nv};
    g = sample_chart(
        dom, 3,
        {[r](double u, double v, double* p) {
           const double sech = 1.0 / std::cosh(u);
           p[0] = r * sech * std::cos(v);
           p[1] = r * sech * std::sin(v);
           p[2] = r * std::tanh(u);
         },
         [r](double u, double v, double* p) {
           const double sech = 1.0 / std::cosh(u), th = std::tanh(u);
           p[0] = -r * sech * th * std::cos(v);
           p[1] = -r * sech * th * std::sin(v);
           p[2] = r * sech * sech;
         },
         [r](double u, double v, double* p) {
           const double sech = 1.0 / std::cosh(u);
           p[0] = -r * sech * std::sin(v);
           p[1] = r * sech * std::cos(v);
           p[2] = 0;
         }});
    g.closed = true;  // polar caps carry O(e^{-2 band}) of area and energy
  } else if (spec.kind == "catenoid" || spec.kind == "inverted-catenoid") {
    const double tmax = spec.param("t_max", 2.0);
    ChartDomain dom{ChartKind::cylinder, -tmax, tmax, 0, 2 * kPi, false, true,
                    spec.nu, spec.nv};
    g = sample_chart(
        dom, 3,
        {[](double u, double v, double* p) {
           p[0] = std::cosh(u) * std::cos(v);
           p[1] = std::cosh(u) * std::sin(v);
           p[2] = u;
         },
         [](double u, double v, double* p) {
           p[0] = std::sinh(u) * std::cos(v);
           p[1] = std::sinh(u) * std::sin(v);
           p[2] = 1;
         },
         [](double u, double v, double* p) {
           p[0] = -std::cosh(u) * std::sin(v);
           p[1] = std::cosh(u) * std::cos(v);
           p[2] = 0;
         }});
    if (spec.kind == "inverted-catenoid") {
      // center of symmetry displaced along the axis by half the neck radius
      const double center[3] = {0, 0, spec.param("center_offset", 0.5)};
      for (int i = 0; i < dom.nu; ++i)
        for (int j = 0; j < dom.nv; ++j) {
          const size_t off = g.idx(i, j) * 3;
          double q[3], qu[3], qv[3];
          invert_tangent(&g.pts[off], center, 3, &g.dpts_u[off], qu);
          invert_tangent(&g.pts[off], center, 3, &g.dpts_v[off], qv);
          invert_point(&g.pts[off], center, 3, q);
          for (int c = 0; c < 3; ++c) {
            g.pts[off + c] = q[c];
            g.dpts_u[off + c] = qu[c];
            g.dpts_v[off + c] = qv[c];
          }
        }
    }
  } else if (spec.kind == "clifford-torus-r4") {
    ChartDomain dom{ChartKind::cylinder, 0, 2 * kPi, 0, 2 * kPi, true, true,
                    spec.nu, spec.nv};
    const double s = 1.0 / std::sqrt(2.0);
    g = sample_chart(dom, 4,
                     {[s](double u, double v, double* p) {
                        p[0] = s * std::cos(u); p[1] = s * std::sin(u);
                        p[2] = s * std::cos(v); p[3] = s * std::sin(v);
                      },
                      [s](double u, double, double* p) {
                        p[0] = -s * std::sin(u); p[1] = s * std::cos(u);
                        p[2] = 0; p[3] = 0;
                      },
                      [s](double, double v, double* p) {
                        p[0] = 0; p[1] = 0;
                        p[2] = -s * std::sin(v); p[3] = s * std::cos(v);
                      }});
    g.closed = true;
  } else if (spec.kind == "clifford-torus-r3") {
    ChartDomain dom{ChartKind::cylinder, 0, 2 * kPi, 0, 2 * kPi, true, true,
                    spec.nu, spec.nv};
    const double s = 1.0 / std::sqrt(2.0);
    auto q4 = [s](double u, double v, double* q) {
      q[0] = s * std::cos(u); q[1] = s * std::sin(u);
      q[2] = s * std::cos(v); q[3] = s * std::sin(v);
    };
    // stereographic projection from (0,0,0,1), which misses the torus
    auto proj = [q4](double u, double v, double* p) {
      double q[4];
      q4(u, v, q);
      const double w = 1.0 / (1.0 - q[3]);
      p[0] = q[0] * w; p[1] = q[1] * w; p[2] = q[2] * w;
    };
    auto dproj = [q4, s](double u, double v, double* p, bool along_u) {
      double q[4];
      q4(u, v, q);
      double dq[4] = {0, 0, 0, 0};
      if (along_u) {
        dq[0] = -s * std::sin(u); dq[1] = s * std::cos(u);
      } else {
        dq[2] = -s * std::sin(v); dq[3] = s * std::cos(v);
      }
      const double w = 1.0 / (1.0 - q[3]);
      for (int c = 0; c < 3; ++c) p[c] = dq[c] * w + q[c] * dq[3] * w * w;
    };
    g = sample_chart(dom, 3,
                     {proj,
                      [dproj](double u, double v, double* p) { dproj(u, v, p, true); },
                      [dproj](double u, double v, double* p) { dproj(u, v, p, false); }});
    g.closed = true;
  } else if (spec.kind == "hopf-torus") {
    const ElasticaSolution sol = hopf_elastica(spec);
    const double length = spec.param("length", kPi);
    ChartDomain dom{ChartKind::cylinder, 0, length, 0, 2 * kPi, false, true,
                    spec.nu, spec.nv};
    dom.validate();
    const int nsub = (sol.nodes() - 1) / (spec.nu - 1);
    g.domain = dom;
    g.m = 4;
    const size_t n = size_t(dom.nu) * dom.nv * 4;
    g.pts.resize(n);
    g.dpts_u.resize(n);
    g.dpts_v.resize(n);
    const Quat qi(0, 1, 0, 0);
    for (int i = 0; i < dom.nu; ++i) {
      const size_t node = size_t(i) * nsub;
      const Quat q = sol.lift[node];
      const auto& t = sol.tangent[node];
      const auto& ga = sol.gamma[node];
      const Quat om(0, t[1] * ga[2] - t[2] * ga[1], t[2] * ga[0] - t[0] * ga[2],
                    t[0] * ga[1] - t[1] * ga[0]);
      const Quat dq = qmul(q, om);  // exact lift tangent
      for (int j = 0; j < dom.nv; ++j) {
        const Quat p = fiber_rotate(q, dom.v(j));
        const Quat pu = fiber_rotate(dq, dom.v(j));
        const Quat pv = qmul(qi, p);
        const size_t off = g.idx(i, j) * 4;
        g.pts[off] = p.w; g.pts[off + 1] = p.x; g.pts[off + 2] = p.y; g.pts[off + 3] = p.z;
        g.dpts_u[off] = pu.w; g.dpts_u[off + 1] = pu.x; g.dpts_u[off + 2] = pu.y;
        g.dpts_u[off + 3] = pu.z;
        g.dpts_v[off] = pv.w; g.dpts_v[off + 1] = pv.x; g.dpts_v[off + 2] = pv.y;
        g.dpts_v[off + 3] = pv.z;
      }
    }
  } else if (spec.kind == "graph-bump") {
    const double a = spec.param("size", 2.0);
    const double amp = spec.param("amplitude", 1.0);
    ChartDomain dom{ChartKind::rectangle, -a, a, -a, a, false, false, spec.nu, spec.nv};
    g = sample_chart(
        dom, 3,
        {[amp](double u, double v, double* p) {
           p[0] = u; p[1] = v; p[2] = amp * std::exp(-(u * u + v * v));
         },
         [amp](double u, double v, double* p) {
           p[0] = 1; p[1] = 0; p[2] = -2 * u * amp * std::exp(-(u * u + v * v));
         },
         [amp](double u, double v, double* p) {
           p[0] = 0; p[1] = 1; p[2] = -2 * v * amp * std::exp(-(u * u + v * v));
         }});
    return g;  // intentionally non-conformal: no defect gate
  } else {
    throw std::invalid_argument("realize: unknown surface kind '" + spec.kind + "'");
  }

  const double defect = conformal_defect(g);
  if (!(defect < 1e-8))
    throw std::runtime_error("realize: chart failed conformality gate, defect = " +
                             std::to_string(defect));
  return g;
}

bool willmore_target(const SurfaceSpec& spec, double* value) {
  if (spec.kind == "sphere") { *value = 4 * kPi; return true; }
  if (spec.kind == "clifford-torus-r4" || spec.kind == "clifford-torus-r3") {
    *value = 2 * kPi * kPi;
    return true;
  }
  if (spec.kind == "plane" || spec.kind == "catenoid") { *value = 0; return true; }
  if (spec.kind == "hopf-torus" && spec.param("k0", 0.0) == 0.0 &&
      spec.param("dk0", 0.0) == 0.0) {
    *value = 2 * kPi * spec.param("length", kPi);  // |H| = 1 on a flat band
    return true;
  }
  return false;
}

ImmersionGrid extract_annulus(const ImmersionGrid& src, double rho_min,
                              double rho_max, int nu, int nv) {
  const auto& dom = src.domain;
  if (dom.kind == ChartKind::rectangle)
    throw std::invalid_argument("extract_annulus: source has no polar structure");
  if (!(rho_min > 0 && rho_min < rho_max))
    throw std::invalid_argument("extract_annulus: need 0 < rho_min < rho_max");
  if (nu == 0) nu = dom.nu;
  if (nv == 0) nv = dom.nv;

  // Source u coordinate of a target radius.
  auto u_of_rho = [&](double rho) {
    return dom.kind == ChartKind::annulus ? rho : -std::log(rho);
  };
  const double ua = u_of_rho(rho_min), ub = u_of_rho(rho_max);
  if (std::min(ua, ub) < dom.u0 - 1e-12 || std::max(ua, ub) > dom.u1 + 1e-12)
    throw std::invalid_argument("extract_annulus: bounds outside source chart");

  ImmersionGrid out;
  out.domain = ChartDomain{ChartKind::annulus, rho_min, rho_max, dom.v0, dom.v1,
                           false, true, nu, nv};
  out.domain.validate();
  out.m = src.m;
  out.pts.resize(size_t(nu) * nv * src.m);
  const bool derivs = src.has_analytic_derivs();
  if (derivs) {
    out.dpts_u.resize(out.pts.size());
    out.dpts_v.resize(out.pts.size());
  }

  // Quintic Lagrange interpolation along u on the uniform source grid.
  const double du = dom.du();
  for (int i = 0; i < nu; ++i) {
    const double rho = out.domain.u(i);
    const double u = u_of_rho(rho);
    // chain factor d u_src / d rho
    const double chain = dom.kind == ChartKind::annulus ? 1.0 : -1.0 / rho;
    double t = (u - dom.u0) / du;
    int base = int(std::floor(t)) - 2;
    base = std::max(0, std::min(dom.nu - 6, base));
    const double x = t - base;
    double w[6];
    for (int a = 0; a < 6; ++a) {
      w[a] = 1.0;
      for (int b = 0; b < 6; ++b)
        if (b != a) w[a] *= (x - b) / double(a - b);
    }
    for (int j = 0; j < nv; ++j) {
      // v nodes must land on source nodes (both uniform from v0)
      const double tv = (out.domain.v(j) - dom.v0) / dom.dv();
      const int jv = int(std::llround(tv));
      if (std::abs(tv - jv) > 1e-9)
        throw std::invalid_argument("extract_annulus: nv must divide the source grid");
      const size_t off = out.idx(i, j) * src.m;
      for (int c = 0; c < src.m; ++c) {
        double acc = 0, acc_u = 0, acc_v = 0;
        for (int a = 0; a < 6; ++a) {
          const size_t soff = src.idx(base + a, jv % dom.nv) * src.m + c;
          acc += w[a] * src.pts[soff];
          if (derivs) {
            acc_u += w[a] * src.dpts_u[soff];
            acc_v += w[a] * src.dpts_v[soff];
          }
        }
        out.pts[off + c] = acc;
        if (derivs) {
          out.dpts_u[off + c] = acc_u * chain;
          out.dpts_v[off + c] = acc_v;
        }
      }
    }
  }
  return out;
}

}  // namespace wrl
