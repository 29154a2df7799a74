// Sparse multivariate polynomials over C, the invariant/anti-invariant
// calculus for the registered maps, and the weighted composition transform
// that carries target-side functions to anti-invariant source-side ones.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rkhs/geometry.hpp"
#include "rkhs/numerics.hpp"

namespace rkhs {

enum class SignedPart { plus, minus };

class Poly {
 public:
  using Expo = std::vector<int>;
  using TermMap = std::map<Expo, Cplx>;

  explicit Poly(int dim);
  static Poly constant(int dim, Cplx c);
  static Poly monomial(int dim, const Expo& expo, Cplx c = Cplx(1.0, 0.0));

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // 0 for the zero polynomial
  int degree_in(int var) const;
  double max_coeff_mod() const;
  Cplx coeff(const Expo& expo) const;

  // merges into the term map; coefficients below the prune threshold drop out
  void add_term(const Expo& expo, Cplx c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(Cplx c) const;
  Poly pow(int k) const;
  bool operator==(const Poly& o) const {
    return dim_ == o.dim_ && terms_ == o.terms_;
  }

  Cplx eval(const Point& z) const;

  // coefficients below 1e-15 in modulus are dropped after every operation
  static constexpr double kPruneThreshold = 1e-15;

 private:
  int dim_;
  TermMap terms_;
};

// max |p_a - q_a| over the union of supports <= tol * max(1, coefficient scale)
bool approx_equal(const Poly& p, const Poly& q, double tol_rel = 1e-12);

// Grammar:
//   expr     := ['+'|'-'] term (('+'|'-') term)*
//   term     := coeff ('*' monomial)? | monomial
//   monomial := var ('^' int)? ('*' var ('^' int)?)*
//   var      := ('z'|'v') int          (1-based index)
//   coeff    := real | '(' real ('+'|'-') real 'i' ')'
// Whitespace is insignificant. Throws ParseError with a byte position.
Poly parse_poly(const std::string& text, int dim);

// Canonical form: graded-lexicographic term order (total degree descending,
// then exponent vector descending), shortest-roundtrip number formatting.
// parse_poly(print_poly(p)) reproduces p coefficient-exactly.
std::string print_poly(const Poly& p, char var_prefix = 'z');

// components of the map as source-side polynomials
Poly phi_poly(const ProperMap& m, int component);
// the affine-linear factor whose square is the Jacobian determinant class
Poly jphi_poly(const ProperMap& m);

Poly compose_with_map(const Poly& f_on_target, const ProperMap& m);  // f o phi
Poly apply_involution(const Poly& p, const ProperMap& m);            // p o sigma
Poly symmetrize(const Poly& p, const ProperMap& m, SignedPart part);

// Exact division of p by an affine-linear factor (univariate reduction in the
// leading variable of the divisor). NotDivisible if a remainder survives.
Poly divide_by_affine(const Poly& p, const Poly& linear);

// Rewrites an invariant source-side polynomial in target coordinates.
// NotInvariant if g != g o sigma up to the relative coefficient tolerance.
Poly descend(const Poly& g, const ProperMap& m);

// f on the target -> J_phi * (f o phi) on the source
Poly gamma_phi(const Poly& f_on_target, const ProperMap& m);
// inverse transform; NotAntiInvariant if g != -g o sigma
Poly gamma_phi_inverse(const Poly& g_on_source, const ProperMap& m);

// max over seeded source points of |G(v_i f)(z) - phi_i(z) G(f)(z)|; the two
// sides agree as polynomials, so this measures only pipeline roundoff
double check_intertwining(const ProperMap& m, const Poly& f_on_target,
                          int component, int n_points, std::uint64_t seed);

}  // namespace rkhs
