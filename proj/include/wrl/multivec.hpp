#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

namespace wrl {

// Exterior algebra of R^m for small m (1 <= m <= 6).
//
// A basis p-blade e_{i1} ^ ... ^ e_{ip} with i1 < ... < ip is encoded as the
// bitmask with bits i1-1, ..., ip-1 set.  Coefficients are stored densely
// (2^m <= 64 entries); a MultiVector is homogeneous of one grade, entries of
// other grades are identically zero.  The inner product makes the basis
// blades orthonormal, and the Hodge star is taken with respect to the
// standard ordered basis e1 < ... < em.

inline constexpr int kMaxDim = 6;
inline constexpr double kAlgebraTol = 1e-12;

// Sign of the permutation sorting the concatenation (A,B) of two disjoint
// ascending index sets, i.e. the sign in e_A ^ e_B = sign * e_{A|B}.
inline int merge_sign(unsigned a, unsigned b) {
  int swaps = 0;
  while (b) {
    unsigned lo = b & (~b + 1u);
    swaps += std::popcount(a & ~((lo << 1) - 1u));
    b ^= lo;
  }
  return (swaps & 1) ? -1 : 1;
}

// Ascending list of the bitmasks of all grade-p subsets of {1..m}.
const std::vector<unsigned>& blade_masks(int dim, int grade);

class MultiVector {
 public:
  MultiVector() = default;
  MultiVector(int dim, int grade);

  static MultiVector basis_vector(int dim, int index1);       // e_{index1}
  static MultiVector basis_blade(int dim, unsigned mask, double coef = 1.0);
  static MultiVector scalar(int dim, double value);
  static MultiVector volume(int dim);                         // *1

  int dim() const { return dim_; }
  int grade() const { return grade_; }

  double coef(unsigned mask) const { return c_[mask]; }
  void set_coef(unsigned mask, double v);

  MultiVector& operator+=(const MultiVector& o);
  MultiVector& operator-=(const MultiVector& o);
  MultiVector& operator*=(double s);

  double norm_sq() const;
  double norm() const;
  double max_abs() const;

 private:
  int dim_ = 0;
  int grade_ = 0;
  std::array<double, 64> c_{};
};

MultiVector operator+(MultiVector a, const MultiVector& b);
MultiVector operator-(MultiVector a, const MultiVector& b);
MultiVector operator*(double s, MultiVector a);
MultiVector operator*(MultiVector a, double s);
MultiVector operator-(MultiVector a);

// a ^ b ; requires grade(a)+grade(b) <= m.
MultiVector wedge(const MultiVector& a, const MultiVector& b);

// Hodge star, defined by  beta ^ star(alpha) = <beta,alpha> star(1)
// for every beta of the same grade as alpha.
MultiVector hodge_star(const MultiVector& a);

// Contraction (the "res" operator): <a res b, g> = <a, b ^ g>.
// Requires grade(b) <= grade(a); the result has grade p - q.
MultiVector contract(const MultiVector& a, const MultiVector& b);

// Bullet product: a . b = a res b for 1-vectors b, extended by
// a . (b ^ g) = (a . b) ^ g + (-1)^{qr} (a . g) ^ b.
// Requires grade(b) >= 1 and grade(a)+grade(b) >= 2.
MultiVector bullet(const MultiVector& a, const MultiVector& b);

// Induced inner product on each grade; requires equal dim and grade.
double inner(const MultiVector& a, const MultiVector& b);

// Unit simple (m-2)-vector, i.e. the Gauss map star(e1 ^ e2) of some
// orthonormal tangent pair.  Construction verifies unit norm and that the
// associated normal projector has rank m-2.
class SimpleUnitNormal {
 public:
  explicit SimpleUnitNormal(MultiVector n);
  static SimpleUnitNormal trusted(MultiVector n);  // skips validation

  const MultiVector& mv() const { return n_; }
  int dim() const { return n_.dim(); }

 private:
  SimpleUnitNormal() = default;
  MultiVector n_;
};

// Projection onto the normal plane: pi_n(w) = (-1)^{m-1} n res (n res w).
MultiVector project_normal(const SimpleUnitNormal& n, const MultiVector& w);

// Same formula without the SimpleUnitNormal wrapper; used in grid loops
// where n comes straight from star(e1 ^ e2).
MultiVector project_normal_raw(const MultiVector& n, const MultiVector& w);

}  // namespace wrl
