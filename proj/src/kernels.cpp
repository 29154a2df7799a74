#include "rkhs/kernels.hpp"

#include <cmath>

namespace rkhs {

namespace {

void require_dim(const Point& z, int d, const char* who) {
  if (static_cast<int>(z.size()) != d) {
    throw ShapeError(std::string(who) + ": point dimension mismatch");
  }
}

Cplx guarded_inverse(Cplx den, const char* who) {
  if (std::abs(den) < kPoleGuard) {
    throw SingularError(std::string(who) + ": denominator at pole guard");
  }
  return 1.0 / den;
}

Cplx ipow(Cplx b, int k) {
  Cplx r(1.0, 0.0);
  for (int i = 0; i < k; ++i) r *= b;
  return r;
}

Cplx herm(const Cplx& a, const Cplx& b) { return a * std::conj(b); }

}  // namespace

KernelId KernelId::hardy_polydisc(int d) {
  if (d < 1) throw ShapeError("hardy_polydisc: dimension must be >= 1");
  return {KernelTag::hardy_polydisc, d, 0};
}
KernelId KernelId::hardy_triangle(int d) {
  if (d < 2) throw ShapeError("hardy_triangle: dimension must be >= 2");
  return {KernelTag::hardy_triangle, d, 0};
}
KernelId KernelId::szego_ball(int d) {
  if (d < 1) throw ShapeError("szego_ball: dimension must be >= 1");
  return {KernelTag::szego_ball, d, 0};
}
KernelId KernelId::cartan_ii_kernel() { return {KernelTag::cartan_ii_kernel, 3, 0}; }
KernelId KernelId::segal_bargmann(int d) {
  if (d < 1) throw ShapeError("segal_bargmann: dimension must be >= 1");
  return {KernelTag::segal_bargmann, d, 0};
}
KernelId KernelId::g2_closed() { return {KernelTag::g2_closed, 2, 0}; }
KernelId KernelId::tetra_series(int truncation) {
  if (truncation < 1) throw DomainError("tetra_series: truncation must be >= 1");
  return {KernelTag::tetra_series, 3, truncation};
}
KernelId KernelId::fat_hartogs_closed(int d) {
  if (d < 2) throw ShapeError("fat_hartogs_closed: dimension must be >= 2");
  return {KernelTag::fat_hartogs_closed, d, 0};
}
KernelId KernelId::egg_closed() { return {KernelTag::egg_closed, 2, 0}; }
KernelId KernelId::segal_pushforward_closed(int d) {
  if (d < 2) throw ShapeError("segal_pushforward_closed: dimension must be >= 2");
  return {KernelTag::segal_pushforward_closed, d, 0};
}

bool KernelId::is_base() const {
  switch (tag) {
    case KernelTag::hardy_polydisc:
    case KernelTag::hardy_triangle:
    case KernelTag::szego_ball:
    case KernelTag::cartan_ii_kernel:
    case KernelTag::segal_bargmann:
      return true;
    default:
      return false;
  }
}

std::string KernelId::str() const {
  switch (tag) {
    case KernelTag::hardy_polydisc: return "hardy_polydisc:" + std::to_string(dim);
    case KernelTag::hardy_triangle: return "hardy_triangle:" + std::to_string(dim);
    case KernelTag::szego_ball: return "szego_ball:" + std::to_string(dim);
    case KernelTag::cartan_ii_kernel: return "cartan_ii_kernel";
    case KernelTag::segal_bargmann: return "segal_bargmann:" + std::to_string(dim);
    case KernelTag::g2_closed: return "g2_closed";
    case KernelTag::tetra_series: return "tetra_series:" + std::to_string(truncation);
    case KernelTag::fat_hartogs_closed: return "fat_hartogs_closed:" + std::to_string(dim);
    case KernelTag::egg_closed: return "egg_closed:2";
    case KernelTag::segal_pushforward_closed:
      return "segal_pushforward_closed:" + std::to_string(dim);
  }
  return "?";
}

DomainId kernel_domain(const KernelId& k) {
  switch (k.tag) {
    case KernelTag::hardy_polydisc: return DomainId::polydisc(k.dim);
    case KernelTag::hardy_triangle: return DomainId::hartogs_triangle(k.dim);
    case KernelTag::szego_ball: return DomainId::ball(k.dim);
    case KernelTag::cartan_ii_kernel: return DomainId::cartan_ii();
    case KernelTag::segal_bargmann: return DomainId::whole_space(k.dim);
    case KernelTag::g2_closed: return DomainId::sym_bidisc();
    case KernelTag::tetra_series: return DomainId::omega_tetra();
    case KernelTag::fat_hartogs_closed: return DomainId::fat_hartogs(k.dim);
    case KernelTag::egg_closed: return DomainId::egg(2);
    case KernelTag::segal_pushforward_closed: return DomainId::whole_space(k.dim);
  }
  throw ShapeError("kernel_domain: bad tag");
}

Cplx eval_base(const KernelId& k, const Point& z, const Point& w) {
  if (!k.is_base()) {
    throw DomainError("eval_base: " + k.str() + " is not a source-domain kernel");
  }
  const int d = k.dim;
  require_dim(z, d, "eval_base");
  require_dim(w, d, "eval_base");
  switch (k.tag) {
    case KernelTag::hardy_polydisc: {
      Cplx r(1.0, 0.0);
      for (int j = 0; j < d; ++j) {
        r *= guarded_inverse(1.0 - herm(z[j], w[j]), "hardy_polydisc");
      }
      return r;
    }
    case KernelTag::hardy_triangle: {
      Cplx r = guarded_inverse(1.0 - herm(z[d - 1], w[d - 1]), "hardy_triangle");
      for (int j = 1; j < d; ++j) {
        r *= guarded_inverse(herm(z[j], w[j]) - herm(z[j - 1], w[j - 1]),
                             "hardy_triangle");
      }
      return r;
    }
    case KernelTag::szego_ball: {
      Cplx q(1.0, 0.0);
      for (int j = 0; j < d; ++j) q -= herm(z[j], w[j]);
      if (std::abs(q) < kPoleGuard) {
        throw SingularError("szego_ball: denominator at pole guard");
      }
      return ipow(1.0 / q, d);
    }
    case KernelTag::cartan_ii_kernel: {
      Cplx det = 1.0 - herm(z[0], w[0]) - herm(z[1], w[1]) -
                 2.0 * herm(z[2], w[2]) +
                 herm(z[0] * z[1] - z[2] * z[2], w[0] * w[1] - w[2] * w[2]);
      if (std::abs(det) < kPoleGuard) {
        throw SingularError("cartan_ii_kernel: determinant at pole guard");
      }
      if (!(det.real() > 0.0)) {
        throw BranchError("cartan_ii_kernel: determinant left the right half plane");
      }
      return cpow_principal(det, -1.5);
    }
    case KernelTag::segal_bargmann: {
      Cplx s(0.0, 0.0);
      for (int j = 0; j < d; ++j) s += herm(z[j], w[j]);
      return std::exp(s);
    }
    default:
      throw DomainError("eval_base: unreachable");
  }
}

Cplx eval_closed(const KernelId& k, const Point& v, const Point& u) {
  const int d = k.dim;
  switch (k.tag) {
    case KernelTag::g2_closed: {
      require_dim(v, 2, "g2_closed");
      require_dim(u, 2, "g2_closed");
      Cplx s2 = herm(v[1], u[1]);
      Cplx den = (1.0 - s2) * (1.0 - s2) -
                 (v[0] - v[1] * std::conj(u[0])) *
                     (std::conj(u[0]) - v[0] * std::conj(u[1]));
      return 0.5 * guarded_inverse(den, "g2_closed");
    }
    case KernelTag::tetra_series:
      return eval_tetra_series(v, u, k.truncation).value;
    case KernelTag::fat_hartogs_closed: {
      require_dim(v, d, "fat_hartogs_closed");
      require_dim(u, d, "fat_hartogs_closed");
      Cplx eta(1.0, 0.0);
      for (int j = 1; j + 1 < d; ++j) {
        eta *= guarded_inverse(herm(v[j], u[j]) - herm(v[j - 1], u[j - 1]),
                               "fat_hartogs_closed");
      }
      Cplx sprev = herm(v[d - 2], u[d - 2]);
      Cplx slast = herm(v[d - 1], u[d - 1]);
      Cplx den = (slast - sprev * sprev) * (1.0 - slast);
      return 0.25 * eta * (1.0 + sprev) * guarded_inverse(den, "fat_hartogs_closed");
    }
    case KernelTag::egg_closed: {
      // validated for dimension 2 only; see ledger on the general-d display
      require_dim(v, 2, "egg_closed");
      require_dim(u, 2, "egg_closed");
      Cplx a = 1.0 - herm(v[0], u[0]);
      Cplx den = a * a - herm(v[1], u[1]);
      return 0.5 * a * guarded_inverse(den * den, "egg_closed");
    }
    case KernelTag::segal_pushforward_closed: {
      require_dim(v, d, "segal_pushforward_closed");
      require_dim(u, d, "segal_pushforward_closed");
      Cplx s(0.0, 0.0);
      for (int j = 0; j + 1 < d; ++j) s += herm(v[j], u[j]);
      Cplx t = herm(v[d - 1], u[d - 1]);
      // sum_n t^n / (2n+1)!
      Cplx sum(0.0, 0.0);
      Cplx term(1.0, 0.0);
      for (int n = 0; n < 300; ++n) {
        sum += term;
        term *= t / static_cast<double>((2 * n + 2) * (2 * n + 3));
        if (std::abs(term) <= 1e-18 * (1.0 + std::abs(sum))) break;
      }
      return 0.25 * std::exp(s) * sum;
    }
    default:
      throw DomainError("eval_closed: " + k.str() + " is not a quotient-side kernel");
  }
}

Cplx eval_signed(const KernelId& k, const ProperMap& m, SignedPart part,
                 const Point& z, const Point& w) {
  if (k.dim != m.dim) throw ShapeError("eval_signed: kernel/map dimension mismatch");
  Cplx a = eval_base(k, z, w);
  Cplx b = eval_base(k, involution(m, z), w);
  return 0.5 * (part == SignedPart::plus ? a + b : a - b);
}

Cplx eval_pushforward(const KernelId& base, const ProperMap& m, const Point& v,
                      const Point& u) {
  std::vector<Point> zf = preimages(m, v);
  std::vector<Point> wf = preimages(m, u);
  const Point& z = zf.front();
  const Point& w = wf.front();
  Cplx jz = jacobian(m, z);
  Cplx jw = jacobian(m, w);
  if (std::abs(jz) <= kEpsJac || std::abs(jw) <= kEpsJac) {
    throw NearSingularError("eval_pushforward: lifted point too close to the branch locus");
  }
  Cplx minus = eval_signed(base, m, SignedPart::minus, z, w);
  return minus / (jz * std::conj(jw));
}

SeriesValue eval_tetra_series(const Point& z, const Point& w, int truncation) {
  require_dim(z, 3, "eval_tetra_series");
  require_dim(w, 3, "eval_tetra_series");
  if (truncation < 1) throw DomainError("eval_tetra_series: truncation must be >= 1");
  Cplx A = 1.0 - (herm(z[0], w[0]) + herm(z[1], w[1]) - herm(z[2], w[2]));
  Cplx B2 = 4.0 * (z[0] * z[1] - z[2]) * std::conj(w[0] * w[1] - w[2]);
  double bmod = std::sqrt(std::abs(B2));
  double amod = std::abs(A);
  if (!(bmod <= (1.0 - kSeriesGuardDelta) * amod)) {
    throw ConvergenceError("eval_tetra_series: outside the convergence guard");
  }
  if (!(A.real() > 0.0)) {
    throw BranchError("eval_tetra_series: A left the right half plane");
  }
  Cplx D = A * A - B2;
  if (!(D.real() > 0.0)) {
    throw BranchError("eval_tetra_series: A^2 - B^2 left the right half plane");
  }
  Cplx dpow = cpow_principal(D, 1.5);
  Cplx sum(0.0, 0.0);
  Cplx term(0.0, 0.0);
  Cplx b2k(1.0, 0.0);
  // walk C(3/2, n) along n = 0..2K+1, using the odd indices
  double c = 1.0;  // C(3/2, 0)
  int n = 0;
  for (int k = 0; k <= truncation; ++k) {
    while (n < 2 * k + 1) {
      ++n;
      c *= (1.5 - n + 1) / n;
    }
    term = c * cpow_principal(A, 0.5 - 2.0 * k) * b2k / dpow;
    sum += term;
    b2k *= B2;
  }
  double ratio = (bmod * bmod) / (amod * amod);
  double tail = std::abs(term) * ratio / (1.0 - ratio);
  return {sum, tail};
}

HermitianMatrix build_gram(const KernelFn& k, const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n == 0) throw ShapeError("build_gram: empty point set");
  std::vector<Cplx> entries(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      entries[static_cast<std::size_t>(i) * n + j] = k(pts[i], pts[j]);
    }
  }
  return HermitianMatrix(n, entries);
}

}  // namespace rkhs
