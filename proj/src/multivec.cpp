#include "wrl/multivec.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace wrl {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw std::invalid_argument("multivec: dimension must be in [1,6]");
}

void check_same_dim(const MultiVector& a, const MultiVector& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("multivec: dimension mismatch");
}

}  // namespace

const std::vector<unsigned>& blade_masks(int dim, int grade) {
  check_dim(dim);
  if (grade < 0 || grade > dim)
    throw std::invalid_argument("multivec: grade out of range");
  static std::array<std::array<std::vector<unsigned>, kMaxDim + 1>, kMaxDim + 1> table;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int m = 1; m <= kMaxDim; ++m)
      for (unsigned mask = 0; mask < (1u << m); ++mask)
        table[m][std::popcount(mask)].push_back(mask);
  });
  return table[dim][grade];
}

MultiVector::MultiVector(int dim, int grade) : dim_(dim), grade_(grade) {
  check_dim(dim);
  if (grade < 0 || grade > dim)
    throw std::invalid_argument("multivec: grade out of range");
}

MultiVector MultiVector::basis_vector(int dim, int index1) {
  if (index1 < 1 || index1 > dim)
    throw std::invalid_argument("multivec: basis index out of range");
  return basis_blade(dim, 1u << (index1 - 1));
}

MultiVector MultiVector::basis_blade(int dim, unsigned mask, double coef) {
  check_dim(dim);
  if (mask >= (1u << dim))
    throw std::invalid_argument("multivec: blade mask out of range");
  MultiVector r(dim, std::popcount(mask));
  r.c_[mask] = coef;
  return r;
}

MultiVector MultiVector::scalar(int dim, double value) {
  return basis_blade(dim, 0u, value);
}

MultiVector MultiVector::volume(int dim) {
  check_dim(dim);
  return basis_blade(dim, (1u << dim) - 1u);
}

void MultiVector::set_coef(unsigned mask, double v) {
  if (mask >= (1u << dim_) || std::popcount(mask) != grade_)
    throw std::invalid_argument("multivec: coefficient mask has wrong grade");
  c_[mask] = v;
}

MultiVector& MultiVector::operator+=(const MultiVector& o) {
  check_same_dim(*this, o);
  if (grade_ != o.grade_)
    throw std::invalid_argument("multivec: grade mismatch in sum");
  for (unsigned k : blade_masks(dim_, grade_)) c_[k] += o.c_[k];
  return *this;
}

MultiVector& MultiVector::operator-=(const MultiVector& o) {
  check_same_dim(*this, o);
  if (grade_ != o.grade_)
    throw std::invalid_argument("multivec: grade mismatch in difference");
  for (unsigned k : blade_masks(dim_, grade_)) c_[k] -= o.c_[k];
  return *this;
}

MultiVector& MultiVector::operator*=(double s) {
  for (unsigned k : blade_masks(dim_, grade_)) c_[k] *= s;
  return *this;
}

double MultiVector::norm_sq() const {
  double s = 0;
  for (unsigned k : blade_masks(dim_, grade_)) s += c_[k] * c_[k];
  return s;
}

double MultiVector::norm() const { return std::sqrt(norm_sq()); }

double MultiVector::max_abs() const {
  double s = 0;
  for (unsigned k : blade_masks(dim_, grade_)) s = std::max(s, std::abs(c_[k]));
  return s;
}

MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
MultiVector operator*(double s, MultiVector a) { return a *= s; }
MultiVector operator*(MultiVector a, double s) { return a *= s; }
MultiVector operator-(MultiVector a) { return a *= -1.0; }

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
  check_same_dim(a, b);
  const int m = a.dim();
  if (a.grade() + b.grade() > m)
    throw std::invalid_argument("multivec: wedge grade overflow");
  MultiVector r(m, a.grade() + b.grade());
  for (unsigned ka : blade_masks(m, a.grade())) {
    const double ca = a.coef(ka);
    if (ca == 0.0) continue;
    for (unsigned kb : blade_masks(m, b.grade())) {
      if (ka & kb) continue;
      const double cb = b.coef(kb);
      if (cb == 0.0) continue;
      r.set_coef(ka | kb, r.coef(ka | kb) + merge_sign(ka, kb) * ca * cb);
    }
  }
  return r;
}

MultiVector hodge_star(const MultiVector& a) {
  const int m = a.dim();
  const unsigned full = (1u << m) - 1u;
  MultiVector r(m, m - a.grade());
  for (unsigned k : blade_masks(m, a.grade())) {
    const double c = a.coef(k);
    if (c == 0.0) continue;
    r.set_coef(full ^ k, merge_sign(k, full ^ k) * c);
  }
  return r;
}

MultiVector contract(const MultiVector& a, const MultiVector& b) {
  check_same_dim(a, b);
  const int m = a.dim();
  if (b.grade() > a.grade())
    throw std::invalid_argument("multivec: contraction grade underflow");
  MultiVector r(m, a.grade() - b.grade());
  for (unsigned ka : blade_masks(m, a.grade())) {
    const double ca = a.coef(ka);
    if (ca == 0.0) continue;
    for (unsigned kb : blade_masks(m, b.grade())) {
      if ((ka & kb) != kb) continue;  // e_A res e_B = 0 unless B subset A
      const double cb = b.coef(kb);
      if (cb == 0.0) continue;
      const unsigned rest = ka ^ kb;
      r.set_coef(rest, r.coef(rest) + merge_sign(kb, rest) * ca * cb);
    }
  }
  return r;
}

namespace {

// a . e_B with e_B split as e_lo ^ e_rest per the defining recursion.
MultiVector bullet_blade(const MultiVector& a, unsigned mask_b) {
  const int m = a.dim();
  const int q = std::popcount(mask_b);
  if (q == 1) return contract(a, MultiVector::basis_blade(m, mask_b));
  const unsigned lo = mask_b & (~mask_b + 1u);
  const unsigned rest = mask_b ^ lo;
  const MultiVector e_lo = MultiVector::basis_blade(m, lo);
  const MultiVector e_rest = MultiVector::basis_blade(m, rest);
  MultiVector term1 = wedge(bullet_blade(a, lo), e_rest);
  MultiVector term2 = wedge(bullet_blade(a, rest), e_lo);
  const int sign = ((q - 1) & 1) ? -1 : 1;  // (-1)^{qr} with q=1, r=|B|-1
  return term1 + sign * term2;
}

}  // namespace

MultiVector bullet(const MultiVector& a, const MultiVector& b) {
  check_same_dim(a, b);
  const int m = a.dim();
  if (b.grade() < 1)
    throw std::invalid_argument("multivec: bullet needs grade(b) >= 1");
  if (a.grade() + b.grade() - 2 < 0)
    throw std::invalid_argument("multivec: bullet grade underflow");
  MultiVector r(m, a.grade() + b.grade() - 2);
  for (unsigned kb : blade_masks(m, b.grade())) {
    const double cb = b.coef(kb);
    if (cb == 0.0) continue;
    r += cb * bullet_blade(a, kb);
  }
  return r;
}

double inner(const MultiVector& a, const MultiVector& b) {
  check_same_dim(a, b);
  if (a.grade() != b.grade())
    throw std::invalid_argument("multivec: inner product grade mismatch");
  double s = 0;
  for (unsigned k : blade_masks(a.dim(), a.grade())) s += a.coef(k) * b.coef(k);
  return s;
}

MultiVector project_normal_raw(const MultiVector& n, const MultiVector& w) {
  const int m = n.dim();
  const int sign = ((m - 1) & 1) ? -1 : 1;
  return sign * contract(n, contract(n, w));
}

SimpleUnitNormal::SimpleUnitNormal(MultiVector n) : n_(std::move(n)) {
  const int m = n_.dim();
  if (n_.grade() != m - 2)
    throw std::invalid_argument("normal: grade must be m-2");
  if (std::abs(n_.norm() - 1.0) > kAlgebraTol)
    throw std::invalid_argument("normal: not unit");
  // Simplicity check: pi_n must be a projector of rank m-2.
  std::array<std::array<double, kMaxDim>, kMaxDim> p{};
  for (int j = 0; j < m; ++j) {
    MultiVector col = project_normal_raw(n_, MultiVector::basis_vector(m, j + 1));
    for (int i = 0; i < m; ++i) p[i][j] = col.coef(1u << i);
  }
  double trace = 0, idem = 0;
  for (int i = 0; i < m; ++i) {
    trace += p[i][i];
    for (int j = 0; j < m; ++j) {
      double pij = 0;
      for (int k = 0; k < m; ++k) pij += p[i][k] * p[k][j];
      idem = std::max(idem, std::abs(pij - p[i][j]));
    }
  }
  if (idem > 1e-10 || std::abs(trace - (m - 2)) > 1e-10)
    throw std::invalid_argument("normal: not a simple (m-2)-vector");
}

SimpleUnitNormal SimpleUnitNormal::trusted(MultiVector n) {
  SimpleUnitNormal s;
  s.n_ = std::move(n);
  return s;
}

MultiVector project_normal(const SimpleUnitNormal& n, const MultiVector& w) {
  if (w.grade() != 1)
    throw std::invalid_argument("normal projection expects a 1-vector");
  return project_normal_raw(n.mv(), w);
}

}  // namespace wrl
