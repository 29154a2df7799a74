// Domains, invariant proper maps between them, seeded samplers and fibers.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rkhs/numerics.hpp"
#include "rkhs/rng.hpp"

namespace rkhs {

using Point = std::vector<Cplx>;

enum class DomainTag {
  polydisc,
  hartogs_triangle,
  ball,
  cartan_ii,
  whole_space,
  sym_bidisc,
  tetrablock,
  fat_hartogs,
  egg,
  omega_tetra,
};

struct DomainId {
  DomainTag tag;
  int dim;

  static DomainId polydisc(int d);
  static DomainId hartogs_triangle(int d);
  static DomainId ball(int d);
  static DomainId cartan_ii();    // dim 3
  static DomainId whole_space(int d);
  static DomainId sym_bidisc();   // dim 2
  static DomainId tetrablock();   // dim 3
  static DomainId fat_hartogs(int d);
  static DomainId egg(int d);
  static DomainId omega_tetra();  // dim 3

  std::string str() const;
  bool operator==(const DomainId& o) const { return tag == o.tag && dim == o.dim; }
};

enum class MapTag {
  sym2,           // bidisc -> symmetrized bidisc, (z1+z2, z1 z2)
  tetra,          // Cartan domain of type II -> tetrablock, (z1, z2, z1 z2 - z3^2)
  hartogs,        // Hartogs triangle -> fat Hartogs triangle, square the last coordinate
  egg,            // ball -> egg domain, square the last coordinate
  segal,          // C^d -> C^d, square the last coordinate
  square_bidisc,  // bidisc -> bidisc, square the first coordinate
};

struct ProperMap {
  MapTag tag;
  int dim;  // source dimension

  static ProperMap sym2();
  static ProperMap tetra();
  static ProperMap hartogs(int d);
  static ProperMap egg(int d);
  static ProperMap segal(int d);
  static ProperMap square_bidisc();

  DomainId source() const;
  DomainId target() const;
  std::string str() const;
};

struct SampleConfig {
  int count = 32;
  std::uint64_t seed = 42;
  double margin = 0.05;  // shrinks the domain radially; ignored for whole_space
};

// Strict-inequality membership test; ShapeError on dimension mismatch.
bool contains(const DomainId& dom, const Point& z);

// Deterministic: the returned points are a pure function of (dom, cfg).
// Point i is drawn from substream i of Rng(cfg.seed). Quotient-side domains
// are sampled by pushing source samples (same config) through their map.
std::vector<Point> sample(const DomainId& dom, const SampleConfig& cfg);

// One draw from an already-positioned stream; used by campaigns that need
// resampling loops without re-deriving substreams.
Point sample_one(const DomainId& dom, Rng& rng, double margin);

Point apply_map(const ProperMap& m, const Point& z);
Cplx jacobian(const ProperMap& m, const Point& z);
Point involution(const ProperMap& m, const Point& z);

// Fiber of the map over v (v must lie in the target domain): two points
// swapped by the involution generically, one point on the branch locus.
// A collapsed fiber is returned as a single point with jacobian exactly zero.
std::vector<Point> preimages(const ProperMap& m, const Point& v);

// ||[[z1, z3], [z3, z2]]|| via the closed-form largest eigenvalue of W*W.
double cartan_ii_opnorm(const Point& z);

}  // namespace rkhs
