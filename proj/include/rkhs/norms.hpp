// Coefficient norms for the base Hardy spaces, the pulled-back quotient norm
// through gamma_phi, and the exact torus quadrature for the fat Hartogs
// triangle in dimension 2.
#pragma once

#include <string>
#include <vector>

#include "rkhs/geometry.hpp"
#include "rkhs/polyalg.hpp"

namespace rkhs {

enum class SpaceTag { h2_polydisc, h2_triangle, h2_ball };

struct SpaceId {
  SpaceTag tag;
  int dim;

  static SpaceId h2_polydisc(int d);
  static SpaceId h2_triangle(int d);  // monomial orthogonality known for d = 2 only
  static SpaceId h2_ball(int d);

  std::string str() const;
};

struct NormReport {
  double value;
  std::string method;  // "coefficient" or "quadrature"
  std::string detail;
};

// squared norm of the monomial z^alpha:
//   h2_polydisc -> 1,  h2_triangle -> 1,  h2_ball -> alpha! (d-1)! / (|alpha|+d-1)!
double monomial_norm_sq(const SpaceId& s, const std::vector<int>& alpha);

// <p, q> = sum_alpha p_alpha conj(q_alpha) ||z^alpha||^2
Cplx space_pairing(const SpaceId& s, const Poly& p, const Poly& q);

double poly_norm_sq(const SpaceId& s, const Poly& p);

// ||f||_phi^2 = ||J_phi (f o phi)||^2 in the base space of the map
double phi_norm_sq(const ProperMap& m, const SpaceId& base, const Poly& f);

// the base space phi_norm_sq expects for a given map; UnsupportedSpace when
// the source has no implemented monomial system (tetra, segal)
SpaceId base_space(const ProperMap& m);

// Exact torus integral of |f(t1 t2 e^{i th1}, t2^2 e^{2 i th2})|^2 against
// t1 t2^5 dth / pi^2, reduced by monomial matching to a finite sum in (t1, t2).
double hartogs_torus_norm_sq(const Poly& f, double t1, double t2);

}  // namespace rkhs
