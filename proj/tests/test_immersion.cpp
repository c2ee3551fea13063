#include "doctest.h"

#include <cmath>

#include "wrl/catalogue.hpp"
#include "wrl/fd.hpp"
#include "wrl/frames.hpp"

using namespace wrl;

namespace {
constexpr double kPi = 3.14159265358979323846;

SurfaceSpec spec(const char* kind, int nu, int nv,
                 std::map<std::string, double> params = {}) {
  SurfaceSpec s;
  s.kind = kind;
  s.nu = nu;
  s.nv = nv;
  s.params = std::move(params);
  return s;
}

double max_interior_H_error(const ImmersionGrid& g, const FrameField& f,
                            double target, int margin = 3) {
  double worst = 0;
  const int ilo = g.domain.periodic_u ? 0 : margin;
  const int ihi = g.domain.periodic_u ? g.domain.nu : g.domain.nu - margin;
  for (int i = ilo; i < ihi; ++i)
    for (int j = 0; j < g.domain.nv; ++j)
      worst = std::max(worst, std::abs(norm(f.H_at(g.idx(i, j))) - target));
  return worst;
}

}  // namespace

TEST_CASE("frames: plane is flat") {
  const ImmersionGrid g = realize(spec("plane", 32, 32));
  const FrameField f = build_frames(g);
  for (size_t idx = 0; idx < size_t(g.npts()); ++idx) {
    CHECK(std::abs(f.lambda[idx]) < 1e-13);
    CHECK(norm(f.H_at(idx)) < 1e-12);
    CHECK(norm(rm_from(&f.II11[idx * 3], 3)) < 1e-12);
    CHECK(norm(rm_from(&f.II12[idx * 3], 3)) < 1e-12);
  }
}

TEST_CASE("frames: unit sphere has |H| = 1, catenoid is minimal") {
  const ImmersionGrid gs = realize(spec("sphere", 128, 96));
  const FrameField fs = build_frames(gs);
  CHECK(max_interior_H_error(gs, fs, 1.0) < 5e-5);

  const ImmersionGrid gc = realize(spec("catenoid", 257, 256));
  const FrameField fc = build_frames(gc);
  CHECK(max_interior_H_error(gc, fc, 0.0, 0) < 1e-6);  // includes edges
}

TEST_CASE("frames: n unit, H normal to the tangent frame") {
  const ImmersionGrid g = realize(spec("sphere", 64, 48));
  const FrameField f = build_frames(g);
  for (int i = 0; i < g.domain.nu; i += 7)
    for (int j = 0; j < g.domain.nv; j += 5) {
      const size_t idx = g.idx(i, j);
      CHECK(std::abs(f.n_at(idx).norm() - 1.0) < 1e-12);
      CHECK(std::abs(dot(f.H_at(idx), f.e1_at(idx))) < 1e-6);
      CHECK(std::abs(dot(f.H_at(idx), f.e2_at(idx))) < 1e-6);
    }
}

TEST_CASE("conformal defect: conformal charts pass, graph-bump is flagged") {
  CHECK(conformal_defect(realize(spec("sphere", 256, 128))) < 1e-10);
  CHECK(conformal_defect(realize(spec("catenoid", 128, 128))) < 1e-10);
  CHECK(conformal_defect(realize(spec("graph-bump", 64, 64))) > 0.1);
}

TEST_CASE("willmore energy: sphere 4pi at any radius, plane zero") {
  for (double r : {1.0, 2.7}) {
    const ImmersionGrid g = realize(spec("sphere", 256, 128, {{"radius", r}}));
    const double w = willmore_energy(g, build_frames(g));
    CHECK(std::abs(w - 4 * kPi) / (4 * kPi) < 1e-3);
  }
  const ImmersionGrid gp = realize(spec("plane", 32, 32));
  CHECK(std::abs(willmore_energy(gp, build_frames(gp))) < 1e-12);
}

TEST_CASE("willmore energy: clifford torus image in R3 is 2 pi^2") {
  const ImmersionGrid g = realize(spec("clifford-torus-r3", 128, 128));
  const double w = willmore_energy(g, build_frames(g));
  CHECK(std::abs(w - 2 * kPi * kPi) / (2 * kPi * kPi) < 5e-3);
}

TEST_CASE("second form energy and Gauss-Bonnet") {
  const ImmersionGrid gs = realize(spec("sphere", 192, 128));
  const FrameField fs = build_frames(gs);
  const double es = second_form_energy(gs, fs);
  CHECK(std::abs(es - 8 * kPi) / (8 * kPi) < 5e-3);
  CHECK(gauss_bonnet_residual(gs, fs, 2) < 1e-2);
  CHECK(gauss_bonnet_residual(gs, fs, 0) > 0.5);  // wrong chi detected

  const ImmersionGrid gt = realize(spec("clifford-torus-r3", 128, 128));
  const FrameField ft = build_frames(gt);
  CHECK(std::abs(second_form_energy(gt, ft) - 8 * kPi * kPi) / (8 * kPi * kPi) < 1e-2);
  CHECK(gauss_bonnet_residual(gt, ft, 0) < 1e-2);

  const ImmersionGrid gc = realize(spec("catenoid", 64, 64));
  CHECK_THROWS(gauss_bonnet_residual(gc, build_frames(gc), 0));  // open surface
}

TEST_CASE("willmore current: zero on plane, divergence refines on Willmore surfaces") {
  const ImmersionGrid gp = realize(spec("plane", 32, 32));
  const CurrentField tp = willmore_current(gp, build_frames(gp));
  double worst = 0;
  for (double x : tp.tu) worst = std::max(worst, std::abs(x));
  for (double x : tp.tv) worst = std::max(worst, std::abs(x));
  CHECK(worst < 1e-12);

  auto max_div = [](const char* kind, int n) {
    SurfaceSpec s;
    s.kind = kind;
    s.nu = n + 1;
    s.nv = n;
    const ImmersionGrid g = realize(s);
    const FrameField f = build_frames(g);
    const auto div = current_divergence(g, willmore_current(g, f));
    double m = 0;
    for (double d : div) m = std::max(m, d);
    return m;
  };
  const double dc1 = max_div("catenoid", 64), dc2 = max_div("catenoid", 128);
  CHECK(dc2 < dc1 / 3.0);
  const double ds1 = max_div("sphere", 64), ds2 = max_div("sphere", 128);
  CHECK(ds2 < ds1 / 3.0);
  const double b1 = max_div("graph-bump", 64), b2 = max_div("graph-bump", 128);
  CHECK(b2 > b1 / 2.0);  // non-Willmore control stays O(1)
}

TEST_CASE("willmore energy refinement order") {
  auto sphere_err = [](int n) {
    SurfaceSpec s;
    s.kind = "sphere";
    s.nu = n;
    s.nv = n / 2;
    const ImmersionGrid g = realize(s);
    return std::abs(willmore_energy(g, build_frames(g)) - 4 * kPi);
  };
  const double e1 = sphere_err(64), e2 = sphere_err(128);
  CHECK(e2 < e1 / 3.5);
}

TEST_CASE("monotonicity: hemisphere, square plate, catenoid band") {
  // hemisphere as the Mercator band u in [0, 7]: equator boundary plus a
  // tiny hole at the pole
  ImmersionGrid gh;
  {
    ChartDomain dom{ChartKind::cylinder, 0.0, 7.0, 0, 2 * kPi, false, true, 128, 96};
    gh.domain = dom;
    gh.m = 3;
    gh.pts.resize(size_t(dom.nu) * dom.nv * 3);
    for (int i = 0; i < dom.nu; ++i)
      for (int j = 0; j < dom.nv; ++j) {
        const double u = dom.u(i), v = dom.v(j);
        const double sech = 1.0 / std::cosh(u);
        gh.at(i, j)[0] = sech * std::cos(v);
        gh.at(i, j)[1] = sech * std::sin(v);
        gh.at(i, j)[2] = std::tanh(u);
      }
  }
  const MonotonicityReport rh = monotonicity_check(gh, build_frames(gh));
  CHECK(rh.holds);
  CHECK(rh.energy == doctest::Approx(2 * kPi).epsilon(1e-3));
  {
    // oracle: 1d scan over latitude of min(chord to equator, chord to hole)
    double d_expect = 0;
    const double uhole = gh.domain.u1;
    auto chord = [](double ua, double ub) {
      const double xa = 1 / std::cosh(ua), za = std::tanh(ua);
      const double xb = 1 / std::cosh(ub), zb = std::tanh(ub);
      return std::sqrt((xa - xb) * (xa - xb) + (za - zb) * (za - zb));
    };
    for (double u = 0; u <= uhole; u += 1e-4)
      d_expect = std::max(d_expect, std::min(chord(u, 0.0), chord(u, uhole)));
    CHECK(rh.distance == doctest::Approx(d_expect).epsilon(1e-2));
    CHECK(rh.rhs ==
          doctest::Approx(rh.energy + 2 * rh.boundary_length / d_expect).epsilon(1e-2));
  }

  // flat square plate of half-width 1: boundary 8, center at distance 1,
  // rhs = 16 > 4 pi
  SurfaceSpec ps;
  ps.kind = "plane";
  ps.nu = ps.nv = 65;
  const ImmersionGrid gp = realize(ps);
  const MonotonicityReport rp = monotonicity_check(gp, build_frames(gp));
  CHECK(rp.holds);
  CHECK(rp.distance == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(rp.rhs == doctest::Approx(16.0).epsilon(2e-2));

  // catenoid band: zero energy, wide rims nearby, holds with margin
  SurfaceSpec cs;
  cs.kind = "catenoid";
  cs.nu = cs.nv = 64;
  const ImmersionGrid gc = realize(cs);
  const MonotonicityReport rc = monotonicity_check(gc, build_frames(gc));
  CHECK(rc.holds);
  CHECK(rc.rhs > 1.5 * rc.lhs);

  SurfaceSpec ts;
  ts.kind = "clifford-torus-r3";
  ts.nu = ts.nv = 64;
  const ImmersionGrid gt = realize(ts);
  CHECK_THROWS(monotonicity_check(gt, build_frames(gt)));  // no boundary
}

TEST_CASE("grid json round trip") {
  SurfaceSpec s;
  s.kind = "catenoid";
  s.nu = s.nv = 32;
  const ImmersionGrid g = realize(s);
  const ImmersionGrid h = ImmersionGrid::from_json(g.to_json());
  CHECK(h.m == g.m);
  CHECK(h.domain.nu == g.domain.nu);
  CHECK(h.pts == g.pts);
  CHECK(to_string(h.domain.kind) == "cylinder");
}

TEST_CASE("degenerate grid point is rejected") {
  ImmersionGrid g;
  g.domain = ChartDomain{ChartKind::rectangle, 0, 1, 0, 1, false, false, 16, 16};
  g.m = 3;
  g.pts.assign(size_t(16) * 16 * 3, 0.0);  // constant map
  CHECK_THROWS(build_frames(g));
}
