#include "wrl/fd.hpp"

#include <stdexcept>

#include "wrl/parallel.hpp"

namespace wrl {

namespace {

// 4th-order stencils.  Edge rows are the forward-biased formulas for the
// node on the edge and the node one in; the interior row is centered.
constexpr double kD1Interior[5] = {1, -8, 0, 8, -1};            // /12h, offsets -2..2
constexpr double kD1Edge0[5] = {-25, 48, -36, 16, -3};          // /12h, offsets 0..4
constexpr double kD1Edge1[5] = {-3, -10, 18, -6, 1};            // /12h, offsets -1..3
constexpr double kD2Interior[5] = {-1, 16, -30, 16, -1};        // /12h^2, offsets -2..2
constexpr double kD2Edge0[6] = {45, -154, 214, -156, 61, -10};  // /12h^2, offsets 0..5
constexpr double kD2Edge1[6] = {10, -15, -4, 14, -6, 1};        // /12h^2, offsets -1..4

// Differentiates one strided line of n samples.
void diff_line(const double* f, double* out, int n, long stride, double h,
               bool periodic, int order) {
  const double s1 = 1.0 / (12.0 * h);
  const double s2 = 1.0 / (12.0 * h * h);
  auto val = [&](int i) { return f[long(i) * stride]; };

  if (periodic) {
    for (int i = 0; i < n; ++i) {
      double acc = 0;
      for (int k = -2; k <= 2; ++k) {
        int j = i + k;
        if (j < 0) j += n;
        if (j >= n) j -= n;
        acc += (order == 1 ? kD1Interior[k + 2] : kD2Interior[k + 2]) * val(j);
      }
      out[long(i) * stride] = acc * (order == 1 ? s1 : s2);
    }
    return;
  }

  if (n < 6) throw std::invalid_argument("fd: line too short for 4th order");
  for (int i = 2; i < n - 2; ++i) {
    double acc = 0;
    for (int k = -2; k <= 2; ++k)
      acc += (order == 1 ? kD1Interior[k + 2] : kD2Interior[k + 2]) * val(i + k);
    out[long(i) * stride] = acc * (order == 1 ? s1 : s2);
  }
  if (order == 1) {
    double a0 = 0, a1 = 0, b0 = 0, b1 = 0;
    for (int k = 0; k < 5; ++k) {
      a0 += kD1Edge0[k] * val(k);
      a1 += kD1Edge1[k] * val(k);
      b0 += kD1Edge0[k] * val(n - 1 - k);
      b1 += kD1Edge1[k] * val(n - 1 - k);
    }
    out[0] = a0 * s1;
    out[stride] = a1 * s1;
    out[long(n - 1) * stride] = -b0 * s1;
    out[long(n - 2) * stride] = -b1 * s1;
  } else {
    double a0 = 0, a1 = 0, b0 = 0, b1 = 0;
    for (int k = 0; k < 6; ++k) {
      a0 += kD2Edge0[k] * val(k);
      a1 += kD2Edge1[k] * val(k);
      b0 += kD2Edge0[k] * val(n - 1 - k);
      b1 += kD2Edge1[k] * val(n - 1 - k);
    }
    out[0] = a0 * s2;
    out[stride] = a1 * s2;
    out[long(n - 1) * stride] = b0 * s2;
    out[long(n - 2) * stride] = b1 * s2;
  }
}

}  // namespace

std::vector<double> deriv_u(const ChartDomain& dom, const std::vector<double>& f,
                            int ncomp, int order) {
  const int nu = dom.nu, nv = dom.nv;
  if (f.size() != size_t(nu) * nv * ncomp)
    throw std::invalid_argument("fd: field size mismatch");
  std::vector<double> out(f.size());
  const long stride = long(nv) * ncomp;
  parallel_for(0, nv * ncomp, [&](int jc) {
    diff_line(f.data() + jc, out.data() + jc, nu, stride, dom.du(),
              dom.periodic_u, order);
  });
  return out;
}

std::vector<double> deriv_v(const ChartDomain& dom, const std::vector<double>& f,
                            int ncomp, int order) {
  const int nu = dom.nu, nv = dom.nv;
  if (f.size() != size_t(nu) * nv * ncomp)
    throw std::invalid_argument("fd: field size mismatch");
  std::vector<double> out(f.size());
  parallel_for(0, nu, [&](int i) {
    for (int c = 0; c < ncomp; ++c) {
      const long base = (long(i) * nv) * ncomp + c;
      diff_line(f.data() + base, out.data() + base, nv, ncomp, dom.dv(),
                dom.periodic_v, order);
    }
  });
  return out;
}

std::vector<double> deriv_uv(const ChartDomain& dom, const std::vector<double>& f,
                             int ncomp) {
  return deriv_v(dom, deriv_u(dom, f, ncomp, 1), ncomp, 1);
}

namespace {

// Centered 6th-order first derivative; near open edges falls back to the
// 4th-order one-sided rows (callers skip those layers).
void diff_line6(const double* f, double* out, int n, long stride, double h,
                bool periodic) {
  constexpr double c6[7] = {-1, 9, -45, 0, 45, -9, 1};  // /60h
  const double s = 1.0 / (60.0 * h);
  auto val = [&](int i) {
    if (periodic) {
      i %= n;
      if (i < 0) i += n;
    }
    return f[long(i) * stride];
  };
  const int lo = periodic ? 0 : 3;
  const int hi = periodic ? n : n - 3;
  for (int i = lo; i < hi; ++i) {
    double acc = 0;
    for (int k = -3; k <= 3; ++k) acc += c6[k + 3] * val(i + k);
    out[long(i) * stride] = acc * s;
  }
  if (!periodic) {
    diff_line(f, out, n, stride, h, false, 1);  // refresh edges at 4th order
    for (int i = 3; i < n - 3; ++i) {
      double acc = 0;
      for (int k = -3; k <= 3; ++k) acc += c6[k + 3] * val(i + k);
      out[long(i) * stride] = acc * s;
    }
  }
}

}  // namespace

std::vector<double> deriv_u6(const ChartDomain& dom, const std::vector<double>& f,
                             int ncomp) {
  const int nu = dom.nu, nv = dom.nv;
  std::vector<double> out(f.size());
  const long stride = long(nv) * ncomp;
  parallel_for(0, nv * ncomp, [&](int jc) {
    diff_line6(f.data() + jc, out.data() + jc, nu, stride, dom.du(), dom.periodic_u);
  });
  return out;
}

std::vector<double> deriv_v6(const ChartDomain& dom, const std::vector<double>& f,
                             int ncomp) {
  const int nu = dom.nu, nv = dom.nv;
  std::vector<double> out(f.size());
  parallel_for(0, nu, [&](int i) {
    for (int c = 0; c < ncomp; ++c) {
      const long base = (long(i) * nv) * ncomp + c;
      diff_line6(f.data() + base, out.data() + base, nv, ncomp, dom.dv(),
                 dom.periodic_v);
    }
  });
  return out;
}

}  // namespace wrl
