#include "rkhs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rkhs {

namespace {

void require_dim(const Point& z, int d, const char* who) {
  if (static_cast<int>(z.size()) != d) {
    throw ShapeError(std::string(who) + ": point dimension " +
                     std::to_string(z.size()) + " does not match " +
                     std::to_string(d));
  }
}

// both roots of t^2 - s*t + p, stable via Vieta
std::pair<Cplx, Cplx> quadratic_roots(Cplx s, Cplx p) {
  Cplx half = 0.5 * s;
  Cplx disc = half * half - p;
  Cplx sq = std::sqrt(disc);
  // pick the sign that avoids cancellation in half + sq
  if ((std::conj(half) * sq).real() < 0.0) sq = -sq;
  Cplx t1 = half + sq;
  Cplx t2 = (std::abs(t1) > 0.0) ? p / t1 : -sq + half;
  return {t1, t2};
}

}  // namespace

DomainId DomainId::polydisc(int d) {
  if (d < 1) throw ShapeError("polydisc: dimension must be >= 1");
  return {DomainTag::polydisc, d};
}
DomainId DomainId::hartogs_triangle(int d) {
  if (d < 2) throw ShapeError("hartogs_triangle: dimension must be >= 2");
  return {DomainTag::hartogs_triangle, d};
}
DomainId DomainId::ball(int d) {
  if (d < 1) throw ShapeError("ball: dimension must be >= 1");
  return {DomainTag::ball, d};
}
DomainId DomainId::cartan_ii() { return {DomainTag::cartan_ii, 3}; }
DomainId DomainId::whole_space(int d) {
  if (d < 1) throw ShapeError("whole_space: dimension must be >= 1");
  return {DomainTag::whole_space, d};
}
DomainId DomainId::sym_bidisc() { return {DomainTag::sym_bidisc, 2}; }
DomainId DomainId::tetrablock() { return {DomainTag::tetrablock, 3}; }
DomainId DomainId::fat_hartogs(int d) {
  if (d < 2) throw ShapeError("fat_hartogs: dimension must be >= 2");
  return {DomainTag::fat_hartogs, d};
}
DomainId DomainId::egg(int d) {
  if (d < 2) throw ShapeError("egg: dimension must be >= 2");
  return {DomainTag::egg, d};
}
DomainId DomainId::omega_tetra() { return {DomainTag::omega_tetra, 3}; }

std::string DomainId::str() const {
  switch (tag) {
    case DomainTag::polydisc: return "polydisc:" + std::to_string(dim);
    case DomainTag::hartogs_triangle: return "hartogs_triangle:" + std::to_string(dim);
    case DomainTag::ball: return "ball:" + std::to_string(dim);
    case DomainTag::cartan_ii: return "cartan_ii";
    case DomainTag::whole_space: return "whole_space:" + std::to_string(dim);
    case DomainTag::sym_bidisc: return "sym_bidisc";
    case DomainTag::tetrablock: return "tetrablock";
    case DomainTag::fat_hartogs: return "fat_hartogs:" + std::to_string(dim);
    case DomainTag::egg: return "egg:" + std::to_string(dim);
    case DomainTag::omega_tetra: return "omega_tetra";
  }
  return "?";
}

ProperMap ProperMap::sym2() { return {MapTag::sym2, 2}; }
ProperMap ProperMap::tetra() { return {MapTag::tetra, 3}; }
ProperMap ProperMap::hartogs(int d) {
  if (d < 2) throw ShapeError("hartogs map: dimension must be >= 2");
  return {MapTag::hartogs, d};
}
ProperMap ProperMap::egg(int d) {
  if (d < 2) throw ShapeError("egg map: dimension must be >= 2");
  return {MapTag::egg, d};
}
ProperMap ProperMap::segal(int d) {
  if (d < 2) throw ShapeError("segal map: dimension must be >= 2");
  return {MapTag::segal, d};
}
ProperMap ProperMap::square_bidisc() { return {MapTag::square_bidisc, 2}; }

DomainId ProperMap::source() const {
  switch (tag) {
    case MapTag::sym2: return DomainId::polydisc(2);
    case MapTag::tetra: return DomainId::cartan_ii();
    case MapTag::hartogs: return DomainId::hartogs_triangle(dim);
    case MapTag::egg: return DomainId::ball(dim);
    case MapTag::segal: return DomainId::whole_space(dim);
    case MapTag::square_bidisc: return DomainId::polydisc(2);
  }
  throw ShapeError("ProperMap::source: bad tag");
}

DomainId ProperMap::target() const {
  switch (tag) {
    case MapTag::sym2: return DomainId::sym_bidisc();
    case MapTag::tetra: return DomainId::tetrablock();
    case MapTag::hartogs: return DomainId::fat_hartogs(dim);
    case MapTag::egg: return DomainId::egg(dim);
    case MapTag::segal: return DomainId::whole_space(dim);
    case MapTag::square_bidisc: return DomainId::polydisc(2);
  }
  throw ShapeError("ProperMap::target: bad tag");
}

std::string ProperMap::str() const {
  switch (tag) {
    case MapTag::sym2: return "sym2";
    case MapTag::tetra: return "tetra";
    case MapTag::hartogs: return "hartogs:" + std::to_string(dim);
    case MapTag::egg: return "egg:" + std::to_string(dim);
    case MapTag::segal: return "segal:" + std::to_string(dim);
    case MapTag::square_bidisc: return "square_bidisc";
  }
  return "?";
}

double cartan_ii_opnorm(const Point& z) {
  require_dim(z, 3, "cartan_ii_opnorm");
  double a = std::norm(z[0]) + std::norm(z[2]);
  double c = std::norm(z[2]) + std::norm(z[1]);
  Cplx b = std::conj(z[0]) * z[2] + std::conj(z[2]) * z[1];
  double disc = std::sqrt((a - c) * (a - c) + 4.0 * std::norm(b));
  return std::sqrt(0.5 * ((a + c) + disc));
}

bool contains(const DomainId& dom, const Point& z) {
  require_dim(z, dom.dim, "contains");
  const int d = dom.dim;
  switch (dom.tag) {
    case DomainTag::polydisc: {
      for (const Cplx& c : z)
        if (!(std::abs(c) < 1.0)) return false;
      return true;
    }
    case DomainTag::hartogs_triangle: {
      double prev = std::abs(z[0]);
      for (int j = 1; j < d; ++j) {
        double cur = std::abs(z[j]);
        if (!(prev < cur)) return false;
        prev = cur;
      }
      return prev < 1.0;
    }
    case DomainTag::ball: {
      double s = 0.0;
      for (const Cplx& c : z) s += std::norm(c);
      return s < 1.0;
    }
    case DomainTag::cartan_ii:
      return cartan_ii_opnorm(z) < 1.0;
    case DomainTag::whole_space:
      return true;
    case DomainTag::sym_bidisc: {
      auto [t1, t2] = quadratic_roots(z[0], z[1]);
      return std::abs(t1) < 1.0 && std::abs(t2) < 1.0;
    }
    case DomainTag::tetrablock: {
      Cplx t = std::sqrt(z[0] * z[1] - z[2]);
      return contains(DomainId::cartan_ii(), {z[0], z[1], t});
    }
    case DomainTag::fat_hartogs: {
      // |z1|^2 < ... < |z_{d-1}|^2 < |z_d| < 1
      for (int j = 1; j + 1 < d; ++j) {
        if (!(std::norm(z[j - 1]) < std::norm(z[j]))) return false;
      }
      double last = std::abs(z[d - 1]);
      return std::norm(z[d - 2]) < last && last < 1.0;
    }
    case DomainTag::egg: {
      double s = 0.0;
      for (int j = 0; j + 1 < d; ++j) s += std::norm(z[j]);
      return s + std::abs(z[d - 1]) < 1.0;
    }
    case DomainTag::omega_tetra: {
      double lhs = 2.0 * std::norm(z[2]);
      double rhs = 1.0 - std::norm(z[0]) - std::norm(z[1]) +
                   std::norm(z[0] * z[1] - z[2] * z[2]);
      return lhs < rhs;
    }
  }
  throw ShapeError("contains: bad tag");
}

namespace {

const int kRejectBudget = 1000000;

Point sample_direct(const DomainId& dom, Rng& rng, double margin) {
  const int d = dom.dim;
  const double r = 1.0 - margin;
  switch (dom.tag) {
    case DomainTag::polydisc: {
      Point z(d);
      for (int j = 0; j < d; ++j) z[j] = rng.next_disc(r);
      return z;
    }
    case DomainTag::hartogs_triangle: {
      for (int att = 0; att < kRejectBudget; ++att) {
        Point z(d);
        for (int j = 0; j < d; ++j) z[j] = rng.next_disc(r);
        bool ok = true;
        for (int j = 1; j < d; ++j)
          if (!(std::abs(z[j - 1]) < std::abs(z[j]))) { ok = false; break; }
        if (ok) return z;
      }
      throw SamplerExhausted("hartogs_triangle sampler exceeded attempt budget");
    }
    case DomainTag::ball: {
      for (int att = 0; att < kRejectBudget; ++att) {
        Point z(d);
        double s = 0.0;
        for (int j = 0; j < d; ++j) { z[j] = rng.next_disc(r); s += std::norm(z[j]); }
        if (s < r * r) return z;
      }
      throw SamplerExhausted("ball sampler exceeded attempt budget");
    }
    case DomainTag::cartan_ii: {
      for (int att = 0; att < kRejectBudget; ++att) {
        Point z(3);
        for (int j = 0; j < 3; ++j) z[j] = rng.next_disc(1.0);
        if (cartan_ii_opnorm(z) < r) return z;
      }
      throw SamplerExhausted("cartan_ii sampler exceeded attempt budget");
    }
    case DomainTag::whole_space: {
      Point z(d);
      for (int j = 0; j < d; ++j) z[j] = rng.next_gaussian();
      return z;
    }
    default:
      throw ShapeError("sample_direct: not a source domain");
  }
}

// quotient-side domains are sampled through their canonical map
bool pushforward_map(const DomainId& dom, ProperMap& m) {
  switch (dom.tag) {
    case DomainTag::sym_bidisc: m = ProperMap::sym2(); return true;
    case DomainTag::tetrablock: m = ProperMap::tetra(); return true;
    case DomainTag::fat_hartogs: m = ProperMap::hartogs(dom.dim); return true;
    case DomainTag::egg: m = ProperMap::egg(dom.dim); return true;
    default: return false;
  }
}

}  // namespace

Point sample_one(const DomainId& dom, Rng& rng, double margin) {
  if (!(margin >= 0.0 && margin < 1.0)) {
    throw DomainError("sample_one: margin must lie in [0, 1)");
  }
  ProperMap m{};
  if (pushforward_map(dom, m)) {
    return apply_map(m, sample_one(m.source(), rng, margin));
  }
  if (dom.tag == DomainTag::omega_tetra) {
    ProperMap t = ProperMap::tetra();
    for (int att = 0; att < kRejectBudget; ++att) {
      Point v = apply_map(t, sample_one(t.source(), rng, margin));
      if (contains(dom, v)) return v;
    }
    throw SamplerExhausted("omega_tetra sampler exceeded attempt budget");
  }
  return sample_direct(dom, rng, margin);
}

std::vector<Point> sample(const DomainId& dom, const SampleConfig& cfg) {
  if (cfg.count < 0) throw DomainError("sample: negative count");
  std::vector<Point> pts;
  pts.reserve(cfg.count);
  Rng root(cfg.seed);
  for (int i = 0; i < cfg.count; ++i) {
    Rng stream = root.substream(static_cast<std::uint64_t>(i));
    pts.push_back(sample_one(dom, stream, cfg.margin));
  }
  return pts;
}

Point apply_map(const ProperMap& m, const Point& z) {
  require_dim(z, m.dim, "apply_map");
  switch (m.tag) {
    case MapTag::sym2:
      return {z[0] + z[1], z[0] * z[1]};
    case MapTag::tetra:
      return {z[0], z[1], z[0] * z[1] - z[2] * z[2]};
    case MapTag::hartogs:
    case MapTag::egg:
    case MapTag::segal: {
      Point v = z;
      v[m.dim - 1] = z[m.dim - 1] * z[m.dim - 1];
      return v;
    }
    case MapTag::square_bidisc:
      return {z[0] * z[0], z[1]};
  }
  throw ShapeError("apply_map: bad tag");
}

Cplx jacobian(const ProperMap& m, const Point& z) {
  require_dim(z, m.dim, "jacobian");
  switch (m.tag) {
    case MapTag::sym2: return z[0] - z[1];
    case MapTag::tetra: return -2.0 * z[2];
    case MapTag::hartogs:
    case MapTag::egg:
    case MapTag::segal: return 2.0 * z[m.dim - 1];
    case MapTag::square_bidisc: return 2.0 * z[0];
  }
  throw ShapeError("jacobian: bad tag");
}

Point involution(const ProperMap& m, const Point& z) {
  require_dim(z, m.dim, "involution");
  Point s = z;
  switch (m.tag) {
    case MapTag::sym2: std::swap(s[0], s[1]); return s;
    case MapTag::tetra: s[2] = -s[2]; return s;
    case MapTag::hartogs:
    case MapTag::egg:
    case MapTag::segal: s[m.dim - 1] = -s[m.dim - 1]; return s;
    case MapTag::square_bidisc: s[0] = -s[0]; return s;
  }
  throw ShapeError("involution: bad tag");
}

std::vector<Point> preimages(const ProperMap& m, const Point& v) {
  require_dim(v, m.dim, "preimages");
  if (!contains(m.target(), v)) {
    throw DomainError("preimages: point outside the target domain");
  }
  const double eps = std::numeric_limits<double>::epsilon();
  switch (m.tag) {
    case MapTag::sym2: {
      Cplx disc = v[0] * v[0] - 4.0 * v[1];
      double scale = std::max(1.0, std::abs(v[0] * v[0]) + 4.0 * std::abs(v[1]));
      if (std::abs(disc) <= 32.0 * eps * scale) {
        Cplx r = 0.5 * v[0];
        return {{r, r}};
      }
      auto [t1, t2] = quadratic_roots(v[0], v[1]);
      return {{t1, t2}, {t2, t1}};
    }
    case MapTag::tetra: {
      Cplx t2 = v[0] * v[1] - v[2];
      double scale = std::max(1.0, std::abs(v[0] * v[1]) + std::abs(v[2]));
      if (std::abs(t2) <= 32.0 * eps * scale) {
        return {{v[0], v[1], Cplx(0.0, 0.0)}};
      }
      Cplx t = std::sqrt(t2);
      return {{v[0], v[1], t}, {v[0], v[1], -t}};
    }
    case MapTag::hartogs:
    case MapTag::egg:
    case MapTag::segal: {
      const int d = m.dim;
      Cplx last = v[d - 1];
      double scale = std::max(1.0, std::abs(last));
      Point a = v;
      if (std::abs(last) <= 32.0 * eps * scale) {
        a[d - 1] = Cplx(0.0, 0.0);
        return {a};
      }
      Cplx t = std::sqrt(last);
      Point b = v;
      a[d - 1] = t;
      b[d - 1] = -t;
      return {a, b};
    }
    case MapTag::square_bidisc: {
      Cplx first = v[0];
      double scale = std::max(1.0, std::abs(first));
      if (std::abs(first) <= 32.0 * eps * scale) {
        return {{Cplx(0.0, 0.0), v[1]}};
      }
      Cplx t = std::sqrt(first);
      return {{t, v[1]}, {-t, v[1]}};
    }
  }
  throw ShapeError("preimages: bad tag");
}

}  // namespace rkhs
