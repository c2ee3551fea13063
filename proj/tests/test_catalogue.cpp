#include "doctest.h"

#include <cmath>

#include "wrl/catalogue.hpp"
#include "wrl/frames.hpp"
#include "wrl/mobius.hpp"
#include "wrl/rng.hpp"

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
}  // namespace

TEST_CASE("realize: spheres and tori sample with the promised geometry") {
  const ImmersionGrid gs = realize(spec("sphere", 64, 48, {{"radius", 2.0}}));
  const FrameField fs = build_frames(gs);
  for (int i = 8; i < 56; i += 9) {
    const size_t idx = gs.idx(i, 11);
    CHECK(norm(fs.H_at(idx)) == doctest::Approx(0.5).epsilon(1e-6));
  }

  // clifford torus in R4: |H| = 1 as an R4 immersion, checked against a
  // doubled-resolution frames oracle
  const ImmersionGrid g4 = realize(spec("clifford-torus-r4", 64, 64));
  const FrameField f4 = build_frames(g4);
  const ImmersionGrid g4f = realize(spec("clifford-torus-r4", 256, 256));
  const FrameField f4f = build_frames(g4f);
  double worst = 0, worst_f = 0;
  for (size_t idx = 0; idx < size_t(g4.npts()); ++idx)
    worst = std::max(worst, std::abs(norm(f4.H_at(idx)) - 1.0));
  for (size_t idx = 0; idx < size_t(g4f.npts()); ++idx)
    worst_f = std::max(worst_f, std::abs(norm(f4f.H_at(idx)) - 1.0));
  CHECK(worst < 1e-4);
  CHECK(worst_f < worst);  // oracle refines

  CHECK_THROWS(realize(spec("no-such-surface", 32, 32)));
  CHECK_THROWS(realize(spec("sphere", 8, 8)));
}

TEST_CASE("hopf torus with k = 0 is a clifford torus band") {
  const ImmersionGrid g = realize(spec("hopf-torus", 64, 64));
  CHECK(g.m == 4);
  CHECK(conformal_defect(g) < 1e-8);
  const FrameField f = build_frames(g);
  // isometric chart: lambda = 0
  for (size_t idx = 0; idx < size_t(g.npts()); ++idx)
    CHECK(std::abs(f.lambda[idx]) < 1e-9);
  const double w = willmore_energy(g, f);
  CHECK(std::abs(w - 2 * kPi * kPi) / (2 * kPi * kPi) < 1e-3);
}

TEST_CASE("mobius: identity and dilation") {
  const ImmersionGrid g = realize(spec("sphere", 64, 48));
  MobiusMap ident{3, {}};
  const ImmersionGrid gi = apply_mobius(ident, g);
  CHECK(gi.pts == g.pts);

  MobiusMap dil{3, {MobiusElement::dilation(3, 2.0)}};
  const ImmersionGrid gd = apply_mobius(dil, g);
  const double w0 = willmore_energy(g, build_frames(g));
  const double w1 = willmore_energy(gd, build_frames(gd));
  CHECK(std::abs(w1 - w0) / w0 < 1e-3);
}

TEST_CASE("mobius: inversion center too close is rejected") {
  const ImmersionGrid g = realize(spec("sphere", 64, 48));
  Rm p(3);
  p[0] = 1.0;  // on the unit sphere
  MobiusMap bad{3, {MobiusElement::inversion(p)}};
  CHECK_THROWS(apply_mobius(bad, g));
}

TEST_CASE("mobius: W invariance over random generic maps") {
  const ImmersionGrid gs = realize(spec("sphere", 128, 96));
  const double ws = willmore_energy(gs, build_frames(gs));
  const ImmersionGrid gt = realize(spec("clifford-torus-r3", 96, 96));
  const double wt = willmore_energy(gt, build_frames(gt));
  DetRng rng(2024);
  for (int rep = 0; rep < 5; ++rep) {
    const MobiusMap ms = random_mobius(rng, gs);
    const double w1 = willmore_energy(apply_mobius(ms, gs),
                                      build_frames(apply_mobius(ms, gs)));
    CHECK(std::abs(w1 - ws) / ws < 5e-3);
    const MobiusMap mt = random_mobius(rng, gt);
    const ImmersionGrid gt2 = apply_mobius(mt, gt);
    const double w2 = willmore_energy(gt2, build_frames(gt2));
    CHECK(std::abs(w2 - wt) / wt < 5e-3);
  }
}

TEST_CASE("inverted catenoid realizes and stays conformal") {
  const ImmersionGrid g = realize(spec("inverted-catenoid", 96, 96));
  CHECK(conformal_defect(g) < 1e-8);
  // image is bounded (the ends collapse towards the inversion center image)
  double far = 0;
  for (size_t p = 0; p < size_t(g.npts()); ++p)
    far = std::max(far, norm(g.point(int(p) / g.domain.nv, int(p) % g.domain.nv)));
  CHECK(far < 10.0);
}

TEST_CASE("extract_annulus: catenoid neck chart and bounds checks") {
  const ImmersionGrid g = realize(spec("catenoid", 129, 64));
  const ImmersionGrid a = extract_annulus(g, 0.3, 0.7);
  CHECK(a.domain.kind == ChartKind::annulus);
  CHECK(conformal_defect(a) < 1e-7);
  // the resampled points sit on the catenoid: x^2 + y^2 = cosh(z)^2
  for (int i = 0; i < a.domain.nu; i += 11)
    for (int j = 0; j < a.domain.nv; j += 7) {
      const double* p = a.at(i, j);
      const double rr = std::sqrt(p[0] * p[0] + p[1] * p[1]);
      CHECK(rr == doctest::Approx(std::cosh(p[2])).epsilon(1e-8));
      // rho = e^{-t} maps the contour radius onto the height coordinate
      CHECK(p[2] == doctest::Approx(-std::log(a.domain.u(i))).epsilon(1e-8));
    }
  CHECK_THROWS(extract_annulus(g, 1e-3, 0.5));  // outside the source chart
  const ImmersionGrid plane = realize(spec("plane", 32, 32));
  CHECK_THROWS(extract_annulus(plane, 0.1, 0.5));

  // sphere band and hopf torus admit sub-annuli too
  const ImmersionGrid gs = realize(spec("sphere", 129, 64));
  const ImmersionGrid as = extract_annulus(gs, std::exp(-1.5), std::exp(1.5));
  CHECK(as.domain.kind == ChartKind::annulus);
  const ImmersionGrid gh = realize(spec("hopf-torus", 65, 64, {{"k0", 0.5}}));
  const ImmersionGrid ah = extract_annulus(gh, std::exp(-2.0), std::exp(-1.0));
  CHECK(ah.m == 4);
}

TEST_CASE("surface spec json round trip") {
  SurfaceSpec s = spec("hopf-torus", 48, 32, {{"k0", 0.5}, {"length", 6.0}});
  const SurfaceSpec t = SurfaceSpec::from_json(s.to_json());
  CHECK(t.kind == s.kind);
  CHECK(t.nu == 48);
  CHECK(t.param("k0", 0) == doctest::Approx(0.5));
  double target = 0;
  CHECK(willmore_target(spec("sphere", 32, 32), &target));
  CHECK(target == doctest::Approx(4 * kPi));
}
