#pragma once

#include "wrl/residues.hpp"

namespace wrl {

// Primitives of the Willmore conservation laws on an annular chart:
//   grad^perp L = T - c grad log(rho)
//   grad^perp S = <L, grad^perp Phi> - C0 grad log(rho)
//   grad^perp R = L ^ grad^perp Phi + (-1)^{m-1} 2 (star(n res H) res grad^perp Phi)
//                 - C1 grad log(rho)
// with the position-dependent residues C0 = c0 + <c,Phi>, C1 = c1 + c ^ Phi.
// Each field is integrated radially first (rays from the innermost circle,
// whose mean is normalized to zero); the cell circulation of the integrated
// 1-form is reported as curl_defect and quantifies path dependence.
struct PotentialFields {
  int m = 0;
  int nc2 = 0;                // grade-2 component count
  std::vector<double> L;      // [idx*m + c]
  std::vector<double> S;      // [idx]
  std::vector<double> R;      // [idx*nc2 + c]
  double curl_defect_L = 0, curl_defect_S = 0, curl_defect_R = 0;
  double curl_gate = 0;       // 100 x discretization estimate used as guard

  MultiVector R_at(size_t idx) const;
};

// Throws when any curl defect exceeds 100x the discretization estimate
// h^2 max|F| (a wrong residue or a non-Willmore surface).
PotentialFields solve_potentials(const ImmersionGrid& g, const FrameField& f,
                                 const ResidueSet& res);

// Max-norm residuals of the pointwise identities relating H, R and S over
// the centered interior of the chart.
struct IdentityReport {
  double heq = 0;     // 4 e^{2 lambda} H = -grad R res grad^perp Phi + ...
  double main1 = 0;   // grad R = (-1)^m star(n . grad^perp R) + ...
  double main11 = 0;  // grad S = -<grad^perp R, star n> + ...
  double main2 = 0;   // the divergence form of the previous two
};

IdentityReport verify_identities(const ImmersionGrid& g, const FrameField& f,
                                 const PotentialFields& pot, const ResidueSet& res);

}  // namespace wrl
