#pragma once

#include <map>
#include <string>

#include "wrl/elastica.hpp"
#include "wrl/grid.hpp"

namespace wrl {

// Analytic test surfaces in conformal charts.
//
// Kinds and their parameters (all optional, defaults in parentheses):
//   plane              size (1)                      z = 0 on [-size,size]^2
//   sphere             radius (1), band (7)          Mercator chart, u = lat in
//                                                    [-band,band], v = lon; the
//                                                    missing polar caps carry
//                                                    O(e^{-2 band}) energy and
//                                                    the grid is treated as the
//                                                    closed sphere
//   catenoid           t_max (2)                     (cosh t cos v, cosh t sin v, t)
//   inverted-catenoid  t_max (2), center_offset (0.5) catenoid inverted about
//                                                    (0,0,center_offset)
//   clifford-torus-r4  (none)                        2^{-1/2}(cos u, sin u, cos v, sin v)
//   clifford-torus-r3  (none)                        stereographic image from (0,0,0,1)
//   hopf-torus         k0 (0), dk0 (0), length (pi), e^{i v} lift(u) over an
//                      ds (1e-3 * length)            elastica s-band
//   graph-bump         size (2), amplitude (1)       z = A exp(-(u^2+v^2)),
//                                                    deliberately non-conformal
struct SurfaceSpec {
  std::string kind;
  std::map<std::string, double> params;
  int nu = 64, nv = 64;

  double param(const std::string& key, double fallback) const;

  std::string to_json() const;
  static SurfaceSpec from_json(const std::string& text);
};

// Samples the chart; verifies conformal_defect < 1e-8 for every kind except
// graph-bump.  The hopf-torus elastica is integrated with a step that divides
// the grid spacing so grid nodes land on integration nodes.
ImmersionGrid realize(const SurfaceSpec& spec);

// The elastica behind a hopf-torus spec, on the grid-aligned fine step.
ElasticaSolution hopf_elastica(const SurfaceSpec& spec);

// Known analytic target for reports: Willmore energy of the closed surface
// (4 pi sphere, 2 pi^2 Clifford tori, 0 for minimal/flat kinds).  Returns
// false when no target is known.
bool willmore_target(const SurfaceSpec& spec, double* value);

// Re-samples a polar sub-annulus [rho_min, rho_max] of an annulus chart or of
// a cylinder chart (via rho = e^{-t}) into an annulus-kind grid, with quintic
// interpolation along u.
ImmersionGrid extract_annulus(const ImmersionGrid& g, double rho_min,
                              double rho_max, int nu = 0, int nv = 0);

}  // namespace wrl
