#include "wrl/mobius.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wrl/frames.hpp"
#include "wrl/rng.hpp"

namespace wrl {

MobiusElement MobiusElement::translation(const Rm& t) {
  MobiusElement e;
  e.kind = Kind::translation;
  e.vec = t;
  return e;
}

MobiusElement MobiusElement::dilation(int m, double s) {
  if (!(s > 0)) throw std::invalid_argument("mobius: dilation factor must be > 0");
  MobiusElement e;
  e.kind = Kind::dilation;
  e.vec = Rm(m);
  e.scale = s;
  return e;
}

MobiusElement MobiusElement::rotation(int m, const std::array<std::array<double, 6>, 6>& r) {
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double s = 0;
      for (int k = 0; k < m; ++k) s += r[k][i] * r[k][j];
      if (std::abs(s - (i == j ? 1.0 : 0.0)) > 1e-10)
        throw std::invalid_argument("mobius: rotation matrix not orthogonal");
    }
  MobiusElement e;
  e.kind = Kind::rotation;
  e.vec = Rm(m);
  e.rot = r;
  return e;
}

MobiusElement MobiusElement::inversion(const Rm& center) {
  MobiusElement e;
  e.kind = Kind::inversion;
  e.vec = center;
  return e;
}

Rm MobiusMap::apply(Rm p) const {
  for (const auto& e : seq) {
    switch (e.kind) {
      case MobiusElement::Kind::translation:
        p += e.vec;
        break;
      case MobiusElement::Kind::dilation:
        p *= e.scale;
        break;
      case MobiusElement::Kind::rotation: {
        Rm q(m);
        for (int i = 0; i < m; ++i) {
          double s = 0;
          for (int j = 0; j < m; ++j) s += e.rot[i][j] * p[j];
          q[i] = s;
        }
        p = q;
        break;
      }
      case MobiusElement::Kind::inversion: {
        Rm d = p - e.vec;
        const double r2 = dot(d, d);
        p = (1.0 / r2) * d;
        break;
      }
    }
  }
  return p;
}

ImmersionGrid apply_mobius(const MobiusMap& map, const ImmersionGrid& g,
                           double margin_rel) {
  if (map.m != g.m) throw std::invalid_argument("mobius: dimension mismatch");
  ImmersionGrid out = g;
  const size_t np = g.npts();
  const int m = g.m;

  for (const auto& e : map.seq) {
    if (e.kind == MobiusElement::Kind::inversion) {
      // Genericity gate against the surface as transformed so far.
      Rm lo(m), hi(m);
      for (int c = 0; c < m; ++c) {
        lo[c] = std::numeric_limits<double>::max();
        hi[c] = -std::numeric_limits<double>::max();
      }
      double min_d2 = std::numeric_limits<double>::max();
      for (size_t p = 0; p < np; ++p) {
        double d2 = 0;
        for (int c = 0; c < m; ++c) {
          const double x = out.pts[p * m + c];
          lo[c] = std::min(lo[c], x);
          hi[c] = std::max(hi[c], x);
          const double d = x - e.vec[c];
          d2 += d * d;
        }
        min_d2 = std::min(min_d2, d2);
      }
      const double diam = norm(hi - lo);
      if (std::sqrt(min_d2) < margin_rel * diam)
        throw std::runtime_error("mobius: inversion center too close to the surface");
    }
    MobiusMap one{map.m, {e}};
    for (size_t p = 0; p < np; ++p) {
      Rm q = one.apply(rm_from(&out.pts[p * m], m));
      for (int c = 0; c < m; ++c) out.pts[p * m + c] = q[c];
    }
  }

  const double defect = conformal_defect(out);
  if (!(defect < 1e-6))
    throw std::runtime_error("mobius: transformed chart lost conformality, defect = " +
                             std::to_string(defect));
  return out;
}

MobiusMap random_mobius(DetRng& rng, const ImmersionGrid& g, int max_len) {
  const int m = g.m;
  const size_t np = g.npts();

  MobiusMap map;
  map.m = m;
  const int len = 1 + int(rng.u01() * max_len);

  // Track the transformed cloud so inversion centers stay generic.
  std::vector<double> pts = g.pts;
  auto cloud_frame = [&](Rm* center, double* diam) {
    Rm lo(m), hi(m);
    for (int c = 0; c < m; ++c) {
      lo[c] = std::numeric_limits<double>::max();
      hi[c] = -lo[c];
    }
    for (size_t p = 0; p < np; ++p)
      for (int c = 0; c < m; ++c) {
        lo[c] = std::min(lo[c], pts[p * m + c]);
        hi[c] = std::max(hi[c], pts[p * m + c]);
      }
    *center = 0.5 * (lo + hi);
    *diam = norm(hi - lo);
  };

  for (int step = 0; step < len; ++step) {
    const double pick = rng.u01();
    MobiusElement e;
    if (pick < 0.25) {
      Rm t(m);
      for (int c = 0; c < m; ++c) t[c] = rng.uniform(-1.0, 1.0);
      e = MobiusElement::translation(t);
    } else if (pick < 0.5) {
      e = MobiusElement::dilation(m, std::exp(rng.uniform(-1.0, 1.0)));
    } else if (pick < 0.75) {
      // orthogonalized gaussian matrix
      std::array<std::array<double, 6>, 6> r{};
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) r[i][j] = rng.normal();
      }
      for (int col = 0; col < m; ++col) {
        for (int prev = 0; prev < col; ++prev) {
          double d = 0;
          for (int i = 0; i < m; ++i) d += r[i][col] * r[i][prev];
          for (int i = 0; i < m; ++i) r[i][col] -= d * r[i][prev];
        }
        double n2 = 0;
        for (int i = 0; i < m; ++i) n2 += r[i][col] * r[i][col];
        const double inv = 1.0 / std::sqrt(n2);
        for (int i = 0; i < m; ++i) r[i][col] *= inv;
      }
      e = MobiusElement::rotation(m, r);
    } else {
      Rm center(m);
      double diam = 0;
      cloud_frame(&center, &diam);
      Rm dir(m);
      double n2 = 0;
      for (int c = 0; c < m; ++c) {
        dir[c] = rng.normal();
        n2 += dir[c] * dir[c];
      }
      dir *= 1.0 / std::sqrt(n2);
      const Rm p = center + rng.uniform(0.8, 1.6) * diam * dir;
      e = MobiusElement::inversion(p);
    }
    map.seq.push_back(e);
    MobiusMap one{m, {e}};
    for (size_t p = 0; p < np; ++p) {
      Rm q = one.apply(rm_from(&pts[p * m], m));
      for (int c = 0; c < m; ++c) pts[p * m + c] = q[c];
    }
  }
  return map;
}

}  // namespace wrl
