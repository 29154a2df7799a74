// Reproducing kernels on the source domains, their signed halves under the
// involution, pushforwards to the quotient domains, and the closed-form or
// series kernels on the quotient side.
#pragma once

#include <functional>
#include <string>

#include "rkhs/geometry.hpp"
#include "rkhs/numerics.hpp"
#include "rkhs/polyalg.hpp"

namespace rkhs {

enum class KernelTag {
  hardy_polydisc,
  hardy_triangle,
  szego_ball,
  cartan_ii_kernel,
  segal_bargmann,
  g2_closed,
  tetra_series,
  fat_hartogs_closed,
  egg_closed,
  segal_pushforward_closed,
};

struct KernelId {
  KernelTag tag;
  int dim;
  int truncation;  // series order, tetra_series only

  static KernelId hardy_polydisc(int d);
  static KernelId hardy_triangle(int d);
  static KernelId szego_ball(int d);
  static KernelId cartan_ii_kernel();  // dim 3
  static KernelId segal_bargmann(int d);
  static KernelId g2_closed();  // dim 2
  static KernelId tetra_series(int truncation);
  static KernelId fat_hartogs_closed(int d);
  static KernelId egg_closed();  // validated closed form exists for dim 2 only
  static KernelId segal_pushforward_closed(int d);

  bool is_base() const;  // lives on a source domain (vs quotient side)
  std::string str() const;
};

// natural evaluation domain of the kernel
DomainId kernel_domain(const KernelId& k);

// denominators below this modulus raise SingularError
inline constexpr double kPoleGuard = 1e-14;
// preimage Jacobian values below this modulus raise NearSingularError
inline constexpr double kEpsJac = 1e-6;
// series guard |B| <= (1 - delta) |A|
inline constexpr double kSeriesGuardDelta = 0.05;

// source-domain kernels (is_base() tags only)
Cplx eval_base(const KernelId& k, const Point& z, const Point& w);

// quotient-side kernels (closed forms and the guarded series)
Cplx eval_closed(const KernelId& k, const Point& v, const Point& u);

// (kappa(z, w) +/- kappa(sigma z, w)) / 2
Cplx eval_signed(const KernelId& k, const ProperMap& m, SignedPart part,
                 const Point& z, const Point& w);

// kernel the quotient domain inherits through the map:
// lift both points, evaluate the minus part, divide by J(z) conj(J(w))
Cplx eval_pushforward(const KernelId& base, const ProperMap& m, const Point& v,
                      const Point& u);

struct SeriesValue {
  Cplx value;
  double tail;  // geometric bound on the dropped remainder
};

// Tetrablock kernel as a truncated binomial series in
// A = 1 - <sigma z, w>, B^2 = 4 (z1 z2 - z3) conj(w1 w2 - w3).
// Guards: |B| <= (1 - delta)|A| (ConvergenceError), Re A > 0 and
// Re(A^2 - B^2) > 0 (BranchError).
SeriesValue eval_tetra_series(const Point& z, const Point& w, int truncation);

using KernelFn = std::function<Cplx(const Point&, const Point&)>;

// dense Gram matrix, Hermitian-symmetrized at construction
HermitianMatrix build_gram(const KernelFn& k, const std::vector<Point>& pts);

}  // namespace rkhs
