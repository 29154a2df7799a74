#include "rkhs/norms.hpp"

#include <cmath>

namespace rkhs {

SpaceId SpaceId::h2_polydisc(int d) {
  if (d < 1) throw ShapeError("h2_polydisc: dimension must be >= 1");
  return {SpaceTag::h2_polydisc, d};
}
SpaceId SpaceId::h2_triangle(int d) {
  if (d != 2) throw UnsupportedSpace("h2_triangle: monomial norms implemented for d = 2");
  return {SpaceTag::h2_triangle, 2};
}
SpaceId SpaceId::h2_ball(int d) {
  if (d < 1) throw ShapeError("h2_ball: dimension must be >= 1");
  return {SpaceTag::h2_ball, d};
}

std::string SpaceId::str() const {
  switch (tag) {
    case SpaceTag::h2_polydisc: return "h2_polydisc:" + std::to_string(dim);
    case SpaceTag::h2_triangle: return "h2_triangle:" + std::to_string(dim);
    case SpaceTag::h2_ball: return "h2_ball:" + std::to_string(dim);
  }
  return "?";
}

double monomial_norm_sq(const SpaceId& s, const std::vector<int>& alpha) {
  if (static_cast<int>(alpha.size()) != s.dim) {
    throw ShapeError("monomial_norm_sq: multi-index length mismatch");
  }
  for (int a : alpha) {
    if (a < 0) throw DomainError("monomial_norm_sq: negative exponent");
  }
  switch (s.tag) {
    case SpaceTag::h2_polydisc:
    case SpaceTag::h2_triangle:
      return 1.0;
    case SpaceTag::h2_ball: {
      // 1 / multinomial(|alpha|+d-1; alpha_1, ..., alpha_d, d-1), assembled as
      // a product of integer-valued binomial steps so small cases stay exact
      double mult = 1.0;
      int n = 0;
      auto take = [&](int k) {
        for (int i = 1; i <= k; ++i) {
          ++n;
          mult = (mult * n) / i;
        }
      };
      for (int a : alpha) take(a);
      take(s.dim - 1);
      return 1.0 / mult;
    }
  }
  throw UnsupportedSpace("monomial_norm_sq: bad tag");
}

Cplx space_pairing(const SpaceId& s, const Poly& p, const Poly& q) {
  if (p.dim() != s.dim || q.dim() != s.dim) {
    throw ShapeError("space_pairing: polynomial dimension mismatch");
  }
  Cplx acc(0.0, 0.0);
  for (const auto& [expo, c] : p.terms()) {
    Cplx qc = q.coeff(expo);
    if (qc == Cplx(0.0, 0.0)) continue;
    acc += c * std::conj(qc) * monomial_norm_sq(s, expo);
  }
  return acc;
}

double poly_norm_sq(const SpaceId& s, const Poly& p) {
  return space_pairing(s, p, p).real();
}

SpaceId base_space(const ProperMap& m) {
  switch (m.tag) {
    case MapTag::sym2:
    case MapTag::square_bidisc:
      return SpaceId::h2_polydisc(2);
    case MapTag::hartogs:
      return SpaceId::h2_triangle(m.dim);
    case MapTag::egg:
      return SpaceId::h2_ball(m.dim);
    case MapTag::tetra:
      throw UnsupportedSpace("base_space: no monomial system on the Cartan domain");
    case MapTag::segal:
      throw UnsupportedSpace("base_space: Gaussian norms not implemented");
  }
  throw UnsupportedSpace("base_space: bad tag");
}

double phi_norm_sq(const ProperMap& m, const SpaceId& base, const Poly& f) {
  SpaceId expected = base_space(m);
  if (expected.tag != base.tag || expected.dim != base.dim) {
    throw UnsupportedSpace("phi_norm_sq: " + base.str() +
                           " is not the source space of " + m.str());
  }
  return poly_norm_sq(base, gamma_phi(f, m));
}

double hartogs_torus_norm_sq(const Poly& f, double t1, double t2) {
  if (f.dim() != 2) throw ShapeError("hartogs_torus_norm_sq: expect 2 variables");
  if (!(t1 > 0.0 && t1 < 1.0 && t2 > 0.0 && t2 < 1.0)) {
    throw DomainError("hartogs_torus_norm_sq: radii must lie in (0,1)");
  }
  // |f|^2 = sum over term pairs; the theta integral kills every pair whose
  // rotation exponents (a, 2b) differ
  double acc = 0.0;
  for (const auto& [ea, ca] : f.terms()) {
    for (const auto& [eb, cb] : f.terms()) {
      if (ea[0] != eb[0] || 2 * ea[1] != 2 * eb[1]) continue;
      double radial = std::pow(t1, 2 * ea[0] + 1) * std::pow(t2, 2 * ea[0] + 4 * ea[1] + 5);
      acc += 4.0 * (ca * std::conj(cb)).real() * radial;
    }
  }
  return acc;
}

}  // namespace rkhs
