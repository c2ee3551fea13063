#pragma once

#include <string>
#include <vector>

#include "wrl/elastica.hpp"
#include "wrl/frames.hpp"
#include "wrl/grid.hpp"

namespace wrl {

// Conservation-law residues of a Willmore annulus, normalized with the 1/2pi
// prefactor.  Contours are the coordinate circles {u = const} of an annulus
// chart (u = rho) or a cylinder chart (rho = e^{-u}); requested radii snap to
// the nearest grid circle and the snapped value is reported.  The contour
// normal nu points along increasing u, tau along increasing v, so values on
// the two chart forms of the same surface differ by the orientation of the
// pair, consistently for all three residues.
struct ResidueSet {
  int m = 0;
  Rm c;
  double c0 = 0;
  MultiVector c1;     // grade 2
  double radius = 0;  // rho of the contour after snapping
  double chart_u = 0;
  int contour = 0;    // grid index of the contour
  double quad_error = 0;  // coarse/fine trapezoid difference

  std::string to_json() const;
};

double rho_of_u(const ChartDomain& dom, double u);
double u_of_rho(const ChartDomain& dom, double rho);

// Gradient of log(rho) in the flat orthonormal chart frame; zero v-slot.
double grad_log_rho_u(const ChartDomain& dom, double u);

ResidueSet compute_residues(const ImmersionGrid& g, const FrameField& f, double rho);

Rm residue_c(const ImmersionGrid& g, const FrameField& f, double rho);
double residue_c0(const ImmersionGrid& g, const FrameField& f, double rho);
MultiVector residue_c1(const ImmersionGrid& g, const FrameField& f, double rho);

struct SweepResult {
  std::vector<ResidueSet> rows;
  double dev_c = 0, dev_c0 = 0, dev_c1 = 0;  // max pairwise deviation

  std::string to_csv() const;
};

// Requires at least 3 admissible radii.
SweepResult residue_sweep(const ImmersionGrid& g, const FrameField& f,
                          const std::vector<double>& radii);

// Closed-form c1 of the Hopf torus Phi(s,theta) = e^{i theta} lift(s) on the
// circle {s = const}, assembled from k, k' and the exact rotating frame; the
// theta integral is a trig polynomial and is evaluated exactly.  Independent
// of the grid finite-difference pipeline.
MultiVector analytic_c1_hopf(const ElasticaSolution& sol, double s);

}  // namespace wrl
