#pragma once

#include <vector>

#include "wrl/grid.hpp"

namespace wrl {

// One generator of the Moebius group of R^m u {inf}.
struct MobiusElement {
  enum class Kind { translation, dilation, rotation, inversion };
  Kind kind = Kind::dilation;
  Rm vec;                                  // translation offset / inversion center
  double scale = 1.0;                      // dilation factor (> 0)
  std::array<std::array<double, 6>, 6> rot{};  // orthogonal matrix

  static MobiusElement translation(const Rm& t);
  static MobiusElement dilation(int m, double s);
  static MobiusElement rotation(int m, const std::array<std::array<double, 6>, 6>& r);
  static MobiusElement inversion(const Rm& center);
};

struct MobiusMap {
  int m = 3;
  std::vector<MobiusElement> seq;  // applied first-to-last

  Rm apply(Rm p) const;
};

// Applies the map pointwise.  Before each inversion in the sequence the
// center must keep a margin of at least margin_rel times the current surface
// diameter (the paper's genericity condition); violations throw.
ImmersionGrid apply_mobius(const MobiusMap& map, const ImmersionGrid& g,
                           double margin_rel = 1e-3);

struct DetRng;

// Random generic composition of up to max_len generators.  Inversion centers
// are drawn in a shell around the surface with a comfortable margin so the
// genericity gate always passes.
MobiusMap random_mobius(DetRng& rng, const ImmersionGrid& g, int max_len = 4);

}  // namespace wrl
