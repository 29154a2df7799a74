#include "rkhs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace rkhs {

Cplx cpow_principal(Cplx base, double expo) {
  if (base == Cplx(0.0, 0.0)) {
    throw DomainError("cpow_principal: zero base");
  }
  Cplx r = std::exp(expo * std::log(base));
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) {
    throw NumericalError("cpow_principal: non-finite result");
  }
  return r;
}

double binom_half(int n) {
  if (n < 0) throw DomainError("binom_half: negative index");
  double c = 1.0;
  for (int k = 1; k <= n; ++k) {
    c *= (1.5 - k + 1) / k;
  }
  return c;
}

HermitianMatrix::HermitianMatrix(int n) : n_(n) {
  if (n <= 0) throw ShapeError("HermitianMatrix: size must be positive");
  a_.assign(static_cast<std::size_t>(n) * n, Cplx(0.0, 0.0));
}

HermitianMatrix::HermitianMatrix(int n, const std::vector<Cplx>& entries) : n_(n) {
  if (n <= 0) throw ShapeError("HermitianMatrix: size must be positive");
  if (entries.size() != static_cast<std::size_t>(n) * n) {
    throw ShapeError("HermitianMatrix: entry count does not match size");
  }
  a_.resize(entries.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Cplx m = entries[static_cast<std::size_t>(i) * n + j];
      Cplx mt = std::conj(entries[static_cast<std::size_t>(j) * n + i]);
      a_[static_cast<std::size_t>(i) * n + j] = 0.5 * (m + mt);
    }
  }
}

namespace {

// cyclic Jacobi on a dense symmetric matrix, eigenvalues only
std::vector<double> jacobi_sym_eigs(std::vector<double>& a, int n) {
  auto at = [&](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * n + j];
  };
  double frob2 = 0.0;
  for (double v : a) frob2 += v * v;
  const double stop = 1e-28 * std::max(1.0, frob2);
  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    if (off <= stop) {
      std::vector<double> eigs(n);
      for (int i = 0; i < n; ++i) eigs[i] = at(i, i);
      std::sort(eigs.begin(), eigs.end());
      return eigs;
    }
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (apq == 0.0) continue;
        double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        double tau = s / (1.0 + c);
        double app = at(p, p), aqq = at(q, q);
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          double akp = at(k, p), akq = at(k, q);
          at(k, p) = akp - s * (akq + tau * akp);
          at(p, k) = at(k, p);
          at(k, q) = akq + s * (akp - tau * akq);
          at(q, k) = at(k, q);
        }
      }
    }
  }
  throw NumericalError("hermitian_eigs: Jacobi sweeps did not converge");
}

}  // namespace

std::vector<double> hermitian_eigs(const HermitianMatrix& m) {
  const int n = m.size();
  const int nn = 2 * n;
  // H = A + iB embeds as the symmetric [[A, -B], [B, A]]
  std::vector<double> s(static_cast<std::size_t>(nn) * nn, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double re = m.at(i, j).real();
      double im = m.at(i, j).imag();
      s[static_cast<std::size_t>(i) * nn + j] = re;
      s[static_cast<std::size_t>(i + n) * nn + (j + n)] = re;
      s[static_cast<std::size_t>(i) * nn + (j + n)] = -im;
      s[static_cast<std::size_t>(i + n) * nn + j] = im;
    }
  }
  std::vector<double> doubled = jacobi_sym_eigs(s, nn);
  std::vector<double> eigs(n);
  for (int i = 0; i < n; ++i) {
    eigs[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
  }
  return eigs;
}

PsdVerdict psd_verdict(const HermitianMatrix& m, double tol) {
  std::vector<double> eigs = hermitian_eigs(m);
  double lo = eigs.front();
  double hi = eigs.back();
  return {lo >= -tol * std::max(1.0, hi), lo, hi};
}

double operator_norm(int n, const std::vector<Cplx>& a) {
  if (n <= 0 || a.size() != static_cast<std::size_t>(n) * n) {
    throw ShapeError("operator_norm: entry count does not match size");
  }
  std::vector<Cplx> g(static_cast<std::size_t>(n) * n, Cplx(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Cplx acc(0.0, 0.0);
      for (int k = 0; k < n; ++k) {
        acc += std::conj(a[static_cast<std::size_t>(k) * n + i]) *
               a[static_cast<std::size_t>(k) * n + j];
      }
      g[static_cast<std::size_t>(i) * n + j] = acc;
    }
  }
  HermitianMatrix h(n, g);
  std::vector<double> eigs = hermitian_eigs(h);
  return std::sqrt(std::max(0.0, eigs.back()));
}

}  // namespace rkhs
