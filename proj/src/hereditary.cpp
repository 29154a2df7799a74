#include "rkhs/hereditary.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace rkhs {

namespace {

std::vector<Cplx> mat_mul(int n, const std::vector<Cplx>& a,
                          const std::vector<Cplx>& b) {
  std::vector<Cplx> c(static_cast<std::size_t>(n) * n, Cplx(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      Cplx aik = a[static_cast<std::size_t>(i) * n + k];
      if (aik == Cplx(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) {
        c[static_cast<std::size_t>(i) * n + j] +=
            aik * b[static_cast<std::size_t>(k) * n + j];
      }
    }
  }
  return c;
}

std::vector<Cplx> mat_adjoint(int n, const std::vector<Cplx>& a) {
  std::vector<Cplx> c(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      c[static_cast<std::size_t>(j) * n + i] =
          std::conj(a[static_cast<std::size_t>(i) * n + j]);
    }
  }
  return c;
}

std::vector<Cplx> mat_identity(int n) {
  std::vector<Cplx> c(static_cast<std::size_t>(n) * n, Cplx(0.0, 0.0));
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i) * n + i] = 1.0;
  return c;
}

// powers[j][k] = T_j^k, built lazily up to the requested exponent
class PowerCache {
 public:
  explicit PowerCache(const MatrixTuple& T) : T_(T) {
    pows_.resize(T.d);
    for (auto& p : pows_) p.push_back(mat_identity(T.n));
  }

  const std::vector<Cplx>& get(int var, int k) {
    auto& p = pows_[var];
    while (static_cast<int>(p.size()) <= k) {
      p.push_back(mat_mul(T_.n, p.back(), T_.matrices[var]));
    }
    return p[k];
  }

  std::vector<Cplx> monomial(const std::vector<int>& alpha) {
    std::vector<Cplx> m = get(0, alpha[0]);
    for (int j = 1; j < T_.d; ++j) m = mat_mul(T_.n, m, get(j, alpha[j]));
    return m;
  }

 private:
  const MatrixTuple& T_;
  std::vector<std::vector<std::vector<Cplx>>> pows_;
};

void gauge_to_shell(const DomainId& dom, Point& p, double g) {
  if (dom.tag == DomainTag::fat_hartogs) {
    double r = std::abs(p[1]);
    double t = g / r;
    p[0] *= std::sqrt(t);
    p[1] *= t;
  } else {  // egg
    double rho = std::norm(p[0]) + std::abs(p[1]);
    double s = std::sqrt(g / rho);
    p[0] *= s;
    p[1] *= s * s;
  }
}

}  // namespace

MatrixTuple::MatrixTuple(int d_, int n_, std::vector<std::vector<Cplx>> mats)
    : d(d_), n(n_), matrices(std::move(mats)) {
  if (d < 1) throw ShapeError("MatrixTuple: need at least one matrix");
  if (n < 1 || n > 16) throw ShapeError("MatrixTuple: size must be in 1..16");
  if (static_cast<int>(matrices.size()) != d) {
    throw ShapeError("MatrixTuple: matrix count does not match d");
  }
  for (const auto& m : matrices) {
    if (static_cast<int>(m.size()) != n * n) {
      throw ShapeError("MatrixTuple: matrix is not n x n");
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        if (m[static_cast<std::size_t>(i) * n + j] != Cplx(0.0, 0.0)) {
          throw DomainError("MatrixTuple: matrices must be upper triangular");
        }
      }
    }
  }
  for (int p = 0; p < d; ++p) {
    for (int q = p + 1; q < d; ++q) {
      std::vector<Cplx> pq = mat_mul(n, matrices[p], matrices[q]);
      std::vector<Cplx> qp = mat_mul(n, matrices[q], matrices[p]);
      for (std::size_t k = 0; k < pq.size(); ++k) {
        if (std::abs(pq[k] - qp[k]) > 1e-10) {
          throw DomainError("MatrixTuple: matrices do not commute");
        }
      }
    }
  }
}

MatrixTuple load_tuple_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("tuple json: ") + e.what(), 0);
  }
  try {
    int d = j.at("d").get<int>();
    int n = j.at("n").get<int>();
    std::vector<std::vector<Cplx>> mats;
    for (const auto& jm : j.at("matrices")) {
      std::vector<Cplx> m;
      for (const auto& row : jm) {
        for (const auto& entry : row) {
          m.emplace_back(entry.at(0).get<double>(), entry.at(1).get<double>());
        }
      }
      mats.push_back(std::move(m));
    }
    return MatrixTuple(d, n, std::move(mats));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("tuple json: ") + e.what(), 0);
  }
}

DiagSeries inv_kernel_series(const DomainId& dom, int degree_cap) {
  if (degree_cap < 0) throw DomainError("inv_kernel_series: negative cap");
  if (degree_cap > 24) throw CapError("inv_kernel_series: degree cap limited to 24");
  // polynomial part of 1/kappa in u = z1 conj(w1), s = z2 conj(w2), followed
  // by the geometric expansion of the single reciprocal factor
  std::map<std::pair<int, int>, double> part;
  double ratio_sign;
  if (dom == DomainId::fat_hartogs(2)) {
    // 1/kappa = 4 (s - u^2)(1 - s) / (1 + u)
    part = {{{0, 1}, 4.0}, {{0, 2}, -4.0}, {{2, 0}, -4.0}, {{2, 1}, 4.0}};
    ratio_sign = -1.0;
  } else if (dom == DomainId::egg(2)) {
    // 1/kappa = 2 ((1-u)^2 - s)^2 / (1 - u)
    part = {{{0, 0}, 2.0},  {{1, 0}, -8.0}, {{2, 0}, 12.0},
            {{3, 0}, -8.0}, {{4, 0}, 2.0},  {{0, 1}, -4.0},
            {{1, 1}, 8.0},  {{2, 1}, -4.0}, {{0, 2}, 2.0}};
    ratio_sign = 1.0;
  } else {
    throw UnsupportedSpace("inv_kernel_series: " + dom.str() +
                           " has no implemented expansion");
  }
  DiagSeries s{2, degree_cap, {}};
  for (const auto& [pe, pc] : part) {
    double sign = 1.0;
    for (int nn = 0; pe.first + nn + pe.second <= degree_cap; ++nn) {
      std::vector<int> alpha = {pe.first + nn, pe.second};
      s.terms[{alpha, alpha}] += pc * sign;
      sign *= ratio_sign;
    }
  }
  for (auto it = s.terms.begin(); it != s.terms.end();) {
    it = (it->second == Cplx(0.0, 0.0)) ? s.terms.erase(it) : std::next(it);
  }
  return s;
}

HermitianMatrix hereditary_eval(const DiagSeries& s, const MatrixTuple& T) {
  if (s.d != T.d) throw ShapeError("hereditary_eval: variable count mismatch");
  PowerCache cache(T);
  std::vector<Cplx> acc(static_cast<std::size_t>(T.n) * T.n, Cplx(0.0, 0.0));
  for (const auto& [key, a] : s.terms) {
    std::vector<Cplx> ta = cache.monomial(key.first);
    std::vector<Cplx> tb = key.second == key.first ? ta : cache.monomial(key.second);
    std::vector<Cplx> prod = mat_mul(T.n, mat_adjoint(T.n, tb), ta);
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += a * prod[k];
  }
  return HermitianMatrix(T.n, acc);
}

std::vector<Cplx> apply_poly(const MatrixTuple& T, const Poly& f) {
  if (f.dim() != T.d) throw ShapeError("apply_poly: variable count mismatch");
  PowerCache cache(T);
  std::vector<Cplx> acc(static_cast<std::size_t>(T.n) * T.n, Cplx(0.0, 0.0));
  for (const auto& [expo, c] : f.terms()) {
    std::vector<Cplx> m = cache.monomial(expo);
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += c * m[k];
  }
  return acc;
}

std::vector<Point> joint_spectrum(const MatrixTuple& T) {
  std::vector<Point> out;
  for (int i = 0; i < T.n; ++i) {
    Point lam(T.d);
    for (int j = 0; j < T.d; ++j) {
      lam[j] = T.matrices[j][static_cast<std::size_t>(i) * T.n + i];
    }
    if (std::find(out.begin(), out.end(), lam) == out.end()) out.push_back(lam);
  }
  return out;
}

VnResult vn_check(const MatrixTuple& T, const DomainId& dom, const Poly& f,
                  int samples, std::uint64_t seed, int degree_cap) {
  if (samples < 1) throw DomainError("vn_check: need at least one sample");
  for (const Point& lam : joint_spectrum(T)) {
    if (!contains(dom, lam)) {
      throw SpectrumOutsideDomain("vn_check: joint spectrum leaves " + dom.str());
    }
  }
  DiagSeries series = inv_kernel_series(dom, degree_cap);
  PsdVerdict hyp = psd_verdict(hereditary_eval(series, T), 1e-8);
  if (!hyp.psd) {
    throw HypothesisFailed("vn_check: hereditary positivity fails at cap " +
                           std::to_string(degree_cap));
  }
  double lhs = operator_norm(T.n, apply_poly(T, f));

  Rng rng(seed);
  double rhs = 0.0;
  const double kShellMargin = 0.01;
  for (int i = 0; i < samples; ++i) {
    Rng sub = rng.substream(static_cast<std::uint64_t>(i));
    Point p = sample_one(dom, sub, kShellMargin);
    if (i % 4 == 0) {
      // push a quarter of the points onto a boundary shell; resample the rare
      // draws too close to the gauge singularity to rescale
      double g = 0.95 + 0.04 * sub.next_double();
      auto degenerate = [&](const Point& q) {
        if (dom.tag == DomainTag::fat_hartogs) return std::abs(q[1]) < 1e-9;
        return std::norm(q[0]) + std::abs(q[1]) < 1e-9;
      };
      int guard = 0;
      while (degenerate(p)) {
        p = sample_one(dom, sub, kShellMargin);
        if (++guard > 64) throw SamplerExhausted("vn_check: shell resampling stalled");
      }
      gauge_to_shell(dom, p, g);
    }
    rhs = std::max(rhs, std::abs(f.eval(p)));
  }
  bool pass = lhs <= rhs * (1.0 + 1e-6);
  return {lhs, rhs, pass, hyp.min_eig};
}

}  // namespace rkhs
