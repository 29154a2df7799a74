// Scalar and small-matrix numerics: principal-branch powers, half-integer
// binomial coefficients, Hermitian eigenvalues and PSD verdicts.
#pragma once

#include <complex>
#include <vector>

#include "rkhs/errors.hpp"

namespace rkhs {

using Cplx = std::complex<double>;

// exp(e * Log z) with Log the principal logarithm, arg in (-pi, pi].
// Throws DomainError for z = 0 and NumericalError if the result is not finite.
Cplx cpow_principal(Cplx base, double expo);

// Generalized binomial coefficient C(3/2, n) by the downward recurrence
// C(3/2, 0) = 1, C(3/2, n) = C(3/2, n-1) * (3/2 - n + 1) / n.
double binom_half(int n);

// Hermitian matrix stored dense row-major. Construction from raw entries
// symmetrizes via (M + M*)/2 so last-bit asymmetry from independent entry
// evaluation cannot leak into the spectrum.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(int n);
  HermitianMatrix(int n, const std::vector<Cplx>& entries);

  int size() const { return n_; }
  Cplx at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<Cplx>& entries() const { return a_; }

 private:
  int n_;
  std::vector<Cplx> a_;
};

// All eigenvalues, ascending. Uses the real symmetric embedding
// [[A, -B], [B, A]] of H = A + iB, which doubles the spectrum; cyclic Jacobi
// sweeps diagonalize the embedding and adjacent sorted pairs are averaged to
// undo the doubling. Throws NumericalError if the sweeps fail to converge.
std::vector<double> hermitian_eigs(const HermitianMatrix& m);

struct PsdVerdict {
  bool psd;
  double min_eig;
  double max_eig;
};

// psd is true iff min_eig >= -tol * max(1, max_eig).
PsdVerdict psd_verdict(const HermitianMatrix& m, double tol);

// Largest singular value of a general complex n x n matrix (row-major),
// computed as sqrt(max eig of A*A).
double operator_norm(int n, const std::vector<Cplx>& a);

}  // namespace rkhs
