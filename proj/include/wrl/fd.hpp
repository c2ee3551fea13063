#pragma once

#include <vector>

#include "wrl/grid.hpp"

namespace wrl {

// Fourth-order finite differences along the grid axes, applied to every one
// of the ncomp interleaved components of a flat field [(i*nv+j)*ncomp + c].
// Periodic axes wrap; non-periodic axes switch to one-sided stencils at the
// two nodes nearest each edge.  order is 1 or 2.
std::vector<double> deriv_u(const ChartDomain& dom, const std::vector<double>& f,
                            int ncomp, int order = 1);
std::vector<double> deriv_v(const ChartDomain& dom, const std::vector<double>& f,
                            int ncomp, int order = 1);

// Mixed second derivative d2/dudv as composition of first derivatives.
std::vector<double> deriv_uv(const ChartDomain& dom, const std::vector<double>& f,
                             int ncomp);

// Sixth-order centered first derivative, used by conformality diagnostics.
// On non-periodic axes only the centered interior is meaningful; callers
// must skip the `margin6` outermost layers there.
inline constexpr int kMargin6 = 3;
std::vector<double> deriv_u6(const ChartDomain& dom, const std::vector<double>& f,
                             int ncomp);
std::vector<double> deriv_v6(const ChartDomain& dom, const std::vector<double>& f,
                             int ncomp);

}  // namespace wrl
