#include "wrl/potentials.hpp"

#include <cmath>
#include <stdexcept>

#include "wrl/fd.hpp"

namespace wrl {

namespace {

// Two-slot field (components along the flat orthonormal chart directions).
struct PairField {
  int nc = 0;
  std::vector<double> fu, fv;  // [idx*nc + c]
};

PairField make_pair(int nc, size_t np) {
  PairField p;
  p.nc = nc;
  p.fu.assign(np * nc, 0.0);
  p.fv.assign(np * nc, 0.0);
  return p;
}

double field_scale(const PairField& f) {
  double s = 0;
  for (size_t i = 0; i + f.nc <= f.fu.size(); i += f.nc) {
    double a = 0, b = 0;
    for (int c = 0; c < f.nc; ++c) {
      a += f.fu[i + c] * f.fu[i + c];
      b += f.fv[i + c] * f.fv[i + c];
    }
    s = std::max(s, std::max(a, b));
  }
  return std::sqrt(s);
}

// Max cell circulation of the 1-form F_v du - hv F_u dv, per flat cell area;
// this is the discrete curl of the field being integrated.
double curl_defect(const ImmersionGrid& g, const PairField& f) {
  const auto& dom = g.domain;
  const int nc = f.nc;
  const double du = dom.du(), dv = dom.dv();
  const int icells = dom.periodic_u ? dom.nu : dom.nu - 1;
  const int jcells = dom.periodic_v ? dom.nv : dom.nv - 1;
  double worst = 0;
  for (int i = 0; i < icells; ++i) {
    const int i1 = (i + 1) % dom.nu;
    const double hv0 = dom.hv(dom.u(i));
    const double hv1 = dom.hv(dom.kind == ChartKind::annulus ? dom.u(i) + du
                                                             : dom.u(i1));
    const double area = du * dv * 0.5 * (hv0 + hv1);
    for (int j = 0; j < jcells; ++j) {
      const int j1 = (j + 1) % dom.nv;
      const size_t a = g.idx(i, j), b = g.idx(i1, j), c = g.idx(i1, j1),
                   d = g.idx(i, j1);
      double circ2 = 0;
      for (int k = 0; k < nc; ++k) {
        const double wu_ab = 0.5 * (f.fv[a * nc + k] + f.fv[b * nc + k]);
        const double wu_dc = 0.5 * (f.fv[d * nc + k] + f.fv[c * nc + k]);
        const double wv_bc = -hv1 * 0.5 * (f.fu[b * nc + k] + f.fu[c * nc + k]);
        const double wv_ad = -hv0 * 0.5 * (f.fu[a * nc + k] + f.fu[d * nc + k]);
        const double circ = du * (wu_ab - wu_dc) + dv * (wv_bc - wv_ad);
        circ2 += circ * circ;
      }
      worst = std::max(worst, std::sqrt(circ2) / area);
    }
  }
  return worst;
}

// Solves grad^perp P = F by cumulative trapezoid integration: around the
// innermost circle first (mean normalized to zero), then along rays.
std::vector<double> integrate_potential(const ImmersionGrid& g, const PairField& f) {
  const auto& dom = g.domain;
  const int nc = f.nc, nu = dom.nu, nv = dom.nv;
  const double du = dom.du(), dv = dom.dv();
  std::vector<double> p(size_t(nu) * nv * nc, 0.0);
  const int ia = dom.kind == ChartKind::annulus ? 0 : nu - 1;  // innermost rho

  // d_v P = -hv F_u around the anchor circle
  const double hva = dom.hv(dom.u(ia));
  for (int j = 0; j + 1 < nv; ++j) {
    const size_t q0 = g.idx(ia, j), q1 = g.idx(ia, j + 1);
    for (int c = 0; c < nc; ++c)
      p[q1 * nc + c] = p[q0 * nc + c] -
                       hva * dv * 0.5 * (f.fu[q0 * nc + c] + f.fu[q1 * nc + c]);
  }
  for (int c = 0; c < nc; ++c) {
    double mean = 0;
    for (int j = 0; j < nv; ++j) mean += p[g.idx(ia, j) * nc + c];
    mean /= nv;
    for (int j = 0; j < nv; ++j) p[g.idx(ia, j) * nc + c] -= mean;
  }

  // d_u P = F_v along rays, both directions from the anchor
  for (int i = ia + 1; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      const size_t q0 = g.idx(i - 1, j), q1 = g.idx(i, j);
      for (int c = 0; c < nc; ++c)
        p[q1 * nc + c] = p[q0 * nc + c] +
                         du * 0.5 * (f.fv[q0 * nc + c] + f.fv[q1 * nc + c]);
    }
  for (int i = ia - 1; i >= 0; --i)
    for (int j = 0; j < nv; ++j) {
      const size_t q0 = g.idx(i + 1, j), q1 = g.idx(i, j);
      for (int c = 0; c < nc; ++c)
        p[q1 * nc + c] = p[q0 * nc + c] -
                         du * 0.5 * (f.fv[q0 * nc + c] + f.fv[q1 * nc + c]);
    }
  return p;
}

}  // namespace

MultiVector PotentialFields::R_at(size_t idx) const {
  MultiVector v(m, 2);
  const auto& masks = blade_masks(m, 2);
  for (int c = 0; c < nc2; ++c) v.set_coef(masks[c], R[idx * nc2 + c]);
  return v;
}

PotentialFields solve_potentials(const ImmersionGrid& g, const FrameField& f,
                                 const ResidueSet& res) {
  const auto& dom = g.domain;
  if (dom.kind == ChartKind::rectangle || !dom.periodic_v)
    throw std::invalid_argument("potentials: need an annular chart");
  if (res.m != g.m) throw std::invalid_argument("potentials: dimension mismatch");

  const int m = g.m;
  const size_t np = g.npts();
  const auto& masks2 = blade_masks(m, 2);
  const int nc2 = int(masks2.size());
  const CurrentField cur = willmore_current(g, f);

  PotentialFields out;
  out.m = m;
  out.nc2 = nc2;

  const double du = dom.du(), dv = dom.dv();
  const double hv_max = std::max(dom.hv(dom.u0), dom.hv(dom.u1));
  const double hh2 = du * du + dv * dv * hv_max * hv_max;

  // --- L ---
  PairField fl = make_pair(m, np);
  for (int i = 0; i < dom.nu; ++i) {
    const double glr = grad_log_rho_u(dom, dom.u(i));
    for (int j = 0; j < dom.nv; ++j) {
      const size_t idx = g.idx(i, j);
      for (int c = 0; c < m; ++c) {
        fl.fu[idx * m + c] = cur.tu[idx * m + c] - glr * res.c[c];
        fl.fv[idx * m + c] = cur.tv[idx * m + c];
      }
    }
  }
  double gate = 100.0 * hh2 * field_scale(fl);
  out.curl_defect_L = curl_defect(g, fl);
  out.curl_gate = gate;
  if (out.curl_defect_L > gate && gate > 0)
    throw std::runtime_error("potentials: curl defect of L exceeds the gate "
                             "(wrong residue or non-Willmore input)");
  out.L = integrate_potential(g, fl);

  // --- S and R ---
  PairField fs = make_pair(1, np);
  PairField fr = make_pair(nc2, np);
  const int sgn = ((m - 1) & 1) ? -1 : 1;  // (-1)^{m-1}
  for (int i = 0; i < dom.nu; ++i) {
    const double hv = dom.hv(dom.u(i));
    const double glr = grad_log_rho_u(dom, dom.u(i));
    for (int j = 0; j < dom.nv; ++j) {
      const size_t idx = g.idx(i, j);
      const Rm phi = g.point(i, j);
      const Rm lvec = rm_from(&out.L[idx * m], m);
      const Rm gp_u = (-1.0 / hv) * rm_from(&f.dphi_v[idx * m], m);
      const Rm gp_v = rm_from(&f.dphi_u[idx * m], m);
      const double c0f = res.c0 + dot(res.c, phi);
      const MultiVector c1f = res.c1 + wedge(to_mv(res.c), to_mv(phi));

      fs.fu[idx] = dot(lvec, gp_u) - c0f * glr;
      fs.fv[idx] = dot(lvec, gp_v);

      const MultiVector snh = hodge_star(contract(f.n_at(idx), to_mv(f.H_at(idx))));
      const MultiVector ru = wedge(to_mv(lvec), to_mv(gp_u)) +
                             (2.0 * sgn) * contract(snh, to_mv(gp_u)) - glr * c1f;
      const MultiVector rv = wedge(to_mv(lvec), to_mv(gp_v)) +
                             (2.0 * sgn) * contract(snh, to_mv(gp_v));
      for (int c = 0; c < nc2; ++c) {
        fr.fu[idx * nc2 + c] = ru.coef(masks2[c]);
        fr.fv[idx * nc2 + c] = rv.coef(masks2[c]);
      }
    }
  }
  out.curl_defect_S = curl_defect(g, fs);
  gate = 100.0 * hh2 * field_scale(fs);
  if (out.curl_defect_S > gate && gate > 0)
    throw std::runtime_error("potentials: curl defect of S exceeds the gate");
  out.S = integrate_potential(g, fs);

  out.curl_defect_R = curl_defect(g, fr);
  gate = 100.0 * hh2 * field_scale(fr);
  if (out.curl_defect_R > gate && gate > 0)
    throw std::runtime_error("potentials: curl defect of R exceeds the gate");
  out.R = integrate_potential(g, fr);
  return out;
}

IdentityReport verify_identities(const ImmersionGrid& g, const FrameField& f,
                                 const PotentialFields& pot, const ResidueSet& res) {
  const auto& dom = g.domain;
  const int m = g.m;
  const int nc2 = pot.nc2;
  const auto& masks2 = blade_masks(m, 2);
  const int sgnm = (m & 1) ? -1 : 1;  // (-1)^m

  // star n as a flat field, then all first-derivative fields.
  const size_t np = g.npts();
  std::vector<double> starn(np * nc2);
  for (size_t idx = 0; idx < np; ++idx) {
    const MultiVector sn = hodge_star(f.n_at(idx));
    for (int c = 0; c < nc2; ++c) starn[idx * nc2 + c] = sn.coef(masks2[c]);
  }

  const auto ds_u = deriv_u(dom, pot.S, 1), ds_v = deriv_v(dom, pot.S, 1);
  const auto dr_u = deriv_u(dom, pot.R, nc2), dr_v = deriv_v(dom, pot.R, nc2);
  const auto dn_u = deriv_u(dom, f.n, f.ncn), dn_v = deriv_v(dom, f.n, f.ncn);
  const auto dsn_u = deriv_u(dom, starn, nc2), dsn_v = deriv_v(dom, starn, nc2);

  // Laplacians of S and R: (1/hv)(d_u(hv d_u P) + d_v((1/hv) d_v P)).
  auto laplacian = [&](const std::vector<double>& pu, const std::vector<double>& pv,
                       int nc) {
    std::vector<double> a(np * nc), b(np * nc);
    for (int i = 0; i < dom.nu; ++i) {
      const double hv = dom.hv(dom.u(i));
      for (int j = 0; j < dom.nv; ++j) {
        const size_t idx = g.idx(i, j);
        for (int c = 0; c < nc; ++c) {
          a[idx * nc + c] = hv * pu[idx * nc + c];
          b[idx * nc + c] = pv[idx * nc + c] / hv;
        }
      }
    }
    const auto da = deriv_u(dom, a, nc);
    const auto db = deriv_v(dom, b, nc);
    std::vector<double> lap(np * nc);
    for (int i = 0; i < dom.nu; ++i) {
      const double hv = dom.hv(dom.u(i));
      for (int j = 0; j < dom.nv; ++j) {
        const size_t idx = g.idx(i, j);
        for (int c = 0; c < nc; ++c)
          lap[idx * nc + c] = (da[idx * nc + c] + db[idx * nc + c]) / hv;
      }
    }
    return lap;
  };
  const auto lap_s = laplacian(ds_u, ds_v, 1);
  const auto lap_r = laplacian(dr_u, dr_v, nc2);

  // Pair fields entering the divergence terms of (main2).
  struct Pair2 {
    std::vector<double> fu, fv;
  };
  auto divergence = [&](const Pair2& pf, int nc) {
    std::vector<double> a(np * nc), r(np * nc);
    for (int i = 0; i < dom.nu; ++i) {
      const double hv = dom.hv(dom.u(i));
      for (int j = 0; j < dom.nv; ++j) {
        const size_t idx = g.idx(i, j);
        for (int c = 0; c < nc; ++c) a[idx * nc + c] = hv * pf.fu[idx * nc + c];
      }
    }
    const auto da = deriv_u(dom, a, nc);
    const auto db = deriv_v(dom, pf.fv, nc);
    for (int i = 0; i < dom.nu; ++i) {
      const double hv = dom.hv(dom.u(i));
      for (int j = 0; j < dom.nv; ++j) {
        const size_t idx = g.idx(i, j);
        for (int c = 0; c < nc; ++c)
          r[idx * nc + c] = (da[idx * nc + c] + db[idx * nc + c]) / hv;
      }
    }
    return r;
  };

  Pair2 p_c0sn{std::vector<double>(np * nc2, 0.0), std::vector<double>(np * nc2, 0.0)};
  Pair2 p_c1p{std::vector<double>(np * nc2, 0.0), std::vector<double>(np * nc2, 0.0)};
  Pair2 p_nc1{std::vector<double>(np * nc2, 0.0), std::vector<double>(np * nc2, 0.0)};
  Pair2 p_c0p{std::vector<double>(np, 0.0), std::vector<double>(np, 0.0)};
  Pair2 p_c1sn{std::vector<double>(np, 0.0), std::vector<double>(np, 0.0)};

  std::vector<MultiVector> c1f(np, MultiVector(m, 2));
  std::vector<double> c0f(np);
  for (int i = 0; i < dom.nu; ++i) {
    const double glr = grad_log_rho_u(dom, dom.u(i));
    for (int j = 0; j < dom.nv; ++j) {
      const size_t idx = g.idx(i, j);
      const Rm phi = g.point(i, j);
      c0f[idx] = res.c0 + dot(res.c, phi);
      c1f[idx] = res.c1 + wedge(to_mv(res.c), to_mv(phi));
      const MultiVector sn = hodge_star(f.n_at(idx));
      const MultiVector snc1 = hodge_star(bullet(f.n_at(idx), c1f[idx]));
      for (int c = 0; c < nc2; ++c) {
        // C0 grad log rho star n   (u slot only)
        p_c0sn.fu[idx * nc2 + c] = c0f[idx] * glr * sn.coef(masks2[c]);
        // C1 grad^perp log rho     (v slot only)
        p_c1p.fv[idx * nc2 + c] = glr * c1f[idx].coef(masks2[c]);
        // star(n . C1) grad log rho (u slot only)
        p_nc1.fu[idx * nc2 + c] = glr * snc1.coef(masks2[c]);
      }
      p_c0p.fv[idx] = c0f[idx] * glr;                    // C0 grad^perp log rho
      p_c1sn.fu[idx] = inner(c1f[idx], sn) * glr;        // <C1,star n> grad log rho
    }
  }
  const auto div_c0sn = divergence(p_c0sn, nc2);
  const auto div_c1p = divergence(p_c1p, nc2);
  const auto div_nc1 = divergence(p_nc1, nc2);
  const auto div_c0p = divergence(p_c0p, 1);
  const auto div_c1sn = divergence(p_c1sn, 1);

  auto mv2 = [&](const std::vector<double>& field, size_t idx) {
    MultiVector v(m, 2);
    for (int c = 0; c < nc2; ++c) v.set_coef(masks2[c], field[idx * nc2 + c]);
    return v;
  };
  auto mvn = [&](const std::vector<double>& field, size_t idx, double scale) {
    MultiVector v(m, m - 2);
    const auto& nm = blade_masks(m, m - 2);
    for (int c = 0; c < f.ncn; ++c) v.set_coef(nm[c], scale * field[idx * f.ncn + c]);
    return v;
  };

  IdentityReport rep;
  const int margin = 4;
  const int ilo = dom.periodic_u ? 0 : margin;
  const int ihi = dom.periodic_u ? dom.nu : dom.nu - margin;

  for (int i = ilo; i < ihi; ++i) {
    const double hv = dom.hv(dom.u(i));
    const double glr = grad_log_rho_u(dom, dom.u(i));
    for (int j = 0; j < dom.nv; ++j) {
      const size_t idx = g.idx(i, j);
      const Rm phi_u = rm_from(&f.dphi_u[idx * m], m);
      const Rm phi_v = (1.0 / hv) * rm_from(&f.dphi_v[idx * m], m);
      const MultiVector sn = hodge_star(f.n_at(idx));
      const MultiVector nmv = f.n_at(idx);

      // gradient slots of S and R
      const double gs_u = ds_u[idx], gs_v = ds_v[idx] / hv;
      const MultiVector gr_u = mv2(dr_u, idx);
      const MultiVector gr_v = (1.0 / hv) * mv2(dr_v, idx);
      // grad^perp slots
      const double gps_u = -gs_v, gps_v = gs_u;
      const MultiVector gpr_u = -1.0 * gr_v;
      const MultiVector& gpr_v = gr_u;

      // (Heq)
      {
        const Rm lhs = std::exp(2.0 * f.lambda[idx]) * 4.0 * f.H_at(idx);
        const Rm dlr = glr * phi_u;  // (grad log rho . grad) Phi
        Rm rhs = -1.0 * (from_mv(contract(gr_u, to_mv(-1.0 * phi_v))) +
                         from_mv(contract(gr_v, to_mv(phi_u))));
        rhs += gps_u * phi_u + gps_v * phi_v;
        rhs += c0f[idx] * dlr;
        rhs += from_mv(contract(c1f[idx], to_mv(dlr)));
        rep.heq = std::max(rep.heq, norm(lhs - rhs));
      }

      // (main1), slot by slot
      {
        const MultiVector snc1 = hodge_star(bullet(nmv, c1f[idx]));
        const MultiVector rhs_u = double(sgnm) * hodge_star(bullet(nmv, gpr_u)) +
                                  gps_u * sn + c0f[idx] * glr * sn +
                                  double(sgnm) * glr * snc1;
        const MultiVector rhs_v = double(sgnm) * hodge_star(bullet(nmv, gpr_v)) +
                                  gps_v * sn + glr * c1f[idx];
        rep.main1 = std::max(rep.main1, (gr_u - rhs_u).norm());
        rep.main1 = std::max(rep.main1, (gr_v - rhs_v).norm());
      }

      // (main11): grad log rho has only a u slot, grad^perp only a v slot
      {
        const double c1sn = inner(c1f[idx], sn);
        const double rhs_u = -inner(gpr_u, sn) - c1sn * glr;
        const double rhs_v = -inner(gpr_v, sn) + c0f[idx] * glr;
        rep.main11 = std::max(rep.main11, std::abs(gs_u - rhs_u));
        rep.main11 = std::max(rep.main11, std::abs(gs_v - rhs_v));
      }

      // (main2)
      {
        const MultiVector dn_uu = mvn(dn_u, idx, 1.0);
        const MultiVector dn_vv = mvn(dn_v, idx, 1.0 / hv);
        const MultiVector dsn_uu = mv2(dsn_u, idx);
        const MultiVector dsn_vv = (1.0 / hv) * mv2(dsn_v, idx);

        MultiVector rhs_r = double(sgnm) * (hodge_star(bullet(dn_uu, gpr_u)) +
                                            hodge_star(bullet(dn_vv, gpr_v)));
        rhs_r += gps_u * dsn_uu + gps_v * dsn_vv;
        rhs_r += mv2(div_c0sn, idx) + mv2(div_c1p, idx) +
                 double(sgnm) * mv2(div_nc1, idx);
        rep.main2 = std::max(rep.main2, (mv2(lap_r, idx) - rhs_r).norm());

        double rhs_s = -(inner(gpr_u, dsn_uu) + inner(gpr_v, dsn_vv));
        rhs_s += div_c0p[idx] - div_c1sn[idx];
        rep.main2 = std::max(rep.main2, std::abs(lap_s[idx] - rhs_s));
      }
    }
  }
  return rep;
}

}  // namespace wrl
