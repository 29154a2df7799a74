// Truncated hereditary calculus for 1/kappa on commuting upper-triangular
// matrix tuples, and the von Neumann inequality check built on it.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rkhs/geometry.hpp"
#include "rkhs/numerics.hpp"
#include "rkhs/polyalg.hpp"

namespace rkhs {

// d square matrices of common size n <= 16, row-major. Construction enforces
// upper-triangular storage and pairwise commutators below 1e-10.
struct MatrixTuple {
  int d;
  int n;
  std::vector<std::vector<Cplx>> matrices;

  MatrixTuple(int d, int n, std::vector<std::vector<Cplx>> mats);
};

// {"d": int, "n": int, "matrices": [[[re, im], ...] ...]} row-major
MatrixTuple load_tuple_json(const std::string& text);

// finite hereditary series sum a_{alpha beta} z^alpha conj(w)^beta
struct DiagSeries {
  int d;
  int degree_cap;
  std::map<std::pair<std::vector<int>, std::vector<int>>, Cplx> terms;
};

// Taylor coefficients of 1/kappa for fat_hartogs(2) or egg(2), truncated at
// |alpha| <= degree_cap; all terms are diagonal (alpha = beta). CapError
// beyond 24; other domains UnsupportedSpace.
DiagSeries inv_kernel_series(const DomainId& dom, int degree_cap);

// sum a_{alpha beta} (T^beta)* T^alpha, symmetrized into a HermitianMatrix
HermitianMatrix hereditary_eval(const DiagSeries& s, const MatrixTuple& T);

// f(T) = sum c_alpha T^alpha as a dense row-major matrix
std::vector<Cplx> apply_poly(const MatrixTuple& T, const Poly& f);

// joint diagonal entries with exact duplicates removed; the Taylor-spectrum
// surrogate for commuting upper-triangular tuples
std::vector<Point> joint_spectrum(const MatrixTuple& T);

struct VnResult {
  double lhs;          // operator norm of f(T)
  double rhs;          // sampled sup of |f| over the domain (lower bound)
  bool pass;           // lhs <= rhs * (1 + 1e-6)
  double hyp_min_eig;  // min eigenvalue of the hereditary positivity witness
};

// Checks joint_spectrum(T) in dom (SpectrumOutsideDomain), the hereditary
// PSD hypothesis at degree_cap (HypothesisFailed), then compares the norm of
// f(T) against a seeded sup-norm sample (a quarter of the points pushed to a
// boundary shell at gauge 0.95..0.99).
VnResult vn_check(const MatrixTuple& T, const DomainId& dom, const Poly& f,
                  int samples, std::uint64_t seed, int degree_cap = 16);

}  // namespace rkhs
