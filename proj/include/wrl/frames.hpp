#pragma once

#include <vector>

#include "wrl/grid.hpp"

namespace wrl {

// Per-point derived geometry of a conformal immersion: orthonormal tangent
// frame, conformal factor, Gauss (m-2)-vector n = star(e1 ^ e2), second
// fundamental form in the unit chart frame, and mean curvature vector.
struct FrameField {
  int m = 0;
  int ncn = 0;  // number of grade-(m-2) components
  std::vector<double> e1, e2;              // [idx*m + c]
  std::vector<double> lambda;              // [idx]
  std::vector<double> n;                   // [idx*ncn + c], blade_masks order
  std::vector<double> H;                   // [idx*m + c]
  std::vector<double> II11, II12, II22;    // [idx*m + c]
  std::vector<double> dphi_u, dphi_v;      // raw coordinate derivatives

  Rm e1_at(size_t idx) const { return rm_from(&e1[idx * m], m); }
  Rm e2_at(size_t idx) const { return rm_from(&e2[idx * m], m); }
  Rm H_at(size_t idx) const { return rm_from(&H[idx * m], m); }
  MultiVector n_at(size_t idx) const;
};

// Derivatives by 4th-order finite differences (one-sided at open edges).
// Throws on a degenerate grid point where |dPhi_u ^ dPhi_v| vanishes.
FrameField build_frames(const ImmersionGrid& g);

// max over the grid of max(|<du,dv>|, ||du|-|dv||) / |du|^2, with the polar
// weight removed first on annulus charts.
double conformal_defect(const ImmersionGrid& g);

double willmore_energy(const ImmersionGrid& g, const FrameField& f);
double second_form_energy(const ImmersionGrid& g, const FrameField& f);

// |E - 4W + 4 pi chi| / max(E, 1); requires a closed surface.
double gauss_bonnet_residual(const ImmersionGrid& g, const FrameField& f, int chi);

// The conservation-law current T = grad H - 3 pi_n(grad H) + star(grad^perp n ^ H),
// componentwise in the flat orthonormal chart frame (e_u, e_v).
struct CurrentField {
  int m = 0;
  std::vector<double> tu, tv;  // [idx*m + c]
};

CurrentField willmore_current(const ImmersionGrid& g, const FrameField& f);

// div T = (1/hv) (d_u(hv Tu) + d_v Tv), one scalar per point per component
// collapsed to the euclidean norm.
std::vector<double> current_divergence(const ImmersionGrid& g, const CurrentField& t);

struct MonotonicityReport {
  double lhs = 0;             // 4 pi
  double rhs = 0;             // energy + 2 |boundary| / d
  double energy = 0;          // integral of |H|^2 dv_g
  double boundary_length = 0;
  double distance = 0;        // d(boundary, surface), sup-inf + sup-inf
  bool holds = false;
};

// Monotonicity formula check for charts with boundary.
MonotonicityReport monotonicity_check(const ImmersionGrid& g, const FrameField& f);

}  // namespace wrl
