#include "rkhs/polyalg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace rkhs {

Poly::Poly(int dim) : dim_(dim) {
  if (dim < 1) throw ShapeError("Poly: dimension must be >= 1");
}

Poly Poly::constant(int dim, Cplx c) {
  Poly p(dim);
  p.add_term(Expo(dim, 0), c);
  return p;
}

Poly Poly::monomial(int dim, const Expo& expo, Cplx c) {
  Poly p(dim);
  p.add_term(expo, c);
  return p;
}

int Poly::total_degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms_) {
    deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  }
  return deg;
}

int Poly::degree_in(int var) const {
  int deg = 0;
  for (const auto& [e, c] : terms_) deg = std::max(deg, e[var]);
  return deg;
}

double Poly::max_coeff_mod() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

Cplx Poly::coeff(const Expo& expo) const {
  auto it = terms_.find(expo);
  return it == terms_.end() ? Cplx(0.0, 0.0) : it->second;
}

void Poly::add_term(const Expo& expo, Cplx c) {
  if (static_cast<int>(expo.size()) != dim_) {
    throw ShapeError("Poly::add_term: exponent dimension mismatch");
  }
  for (int e : expo) {
    if (e < 0) throw DomainError("Poly::add_term: negative exponent");
  }
  auto it = terms_.find(expo);
  if (it == terms_.end()) {
    if (std::abs(c) >= kPruneThreshold) terms_.emplace(expo, c);
    return;
  }
  it->second += c;
  if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

Poly Poly::operator+(const Poly& o) const {
  if (dim_ != o.dim_) throw ShapeError("Poly: dimension mismatch in +");
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  if (dim_ != o.dim_) throw ShapeError("Poly: dimension mismatch in -");
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (dim_ != o.dim_) throw ShapeError("Poly: dimension mismatch in *");
  Poly r(dim_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Expo e(dim_);
      for (int j = 0; j < dim_; ++j) e[j] = ea[j] + eb[j];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly Poly::scaled(Cplx c) const {
  Poly r(dim_);
  for (const auto& [e, co] : terms_) r.add_term(e, co * c);
  return r;
}

Poly Poly::pow(int k) const {
  if (k < 0) throw DomainError("Poly::pow: negative power");
  Poly r = Poly::constant(dim_, 1.0);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

Cplx Poly::eval(const Point& z) const {
  if (static_cast<int>(z.size()) != dim_) {
    throw ShapeError("Poly::eval: point dimension mismatch");
  }
  Cplx acc(0.0, 0.0);
  for (const auto& [e, c] : terms_) {
    Cplx t = c;
    for (int j = 0; j < dim_; ++j) {
      for (int k = 0; k < e[j]; ++k) t *= z[j];
    }
    acc += t;
  }
  return acc;
}

bool approx_equal(const Poly& p, const Poly& q, double tol_rel) {
  if (p.dim() != q.dim()) return false;
  double scale = std::max({1.0, p.max_coeff_mod(), q.max_coeff_mod()});
  Poly d = p - q;
  return d.max_coeff_mod() <= tol_rel * scale;
}

// ---------------------------------------------------------------------------
// parsing / printing

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;
  int dim;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }

  bool eat(char c) {
    if (peek(c)) { ++pos; return true; }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  double parse_real(bool allow_sign) {
    skip_ws();
    if (!allow_sign && pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      fail("unexpected sign");
    }
    const char* begin = s.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    if (!std::isfinite(v)) fail("number out of range");
    pos += static_cast<std::size_t>(end - begin);
    return v;
  }

  int parse_int() {
    skip_ws();
    std::size_t start = pos;
    long v = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      v = v * 10 + (s[pos] - '0');
      if (v > 1000000) fail("integer too large");
      ++pos;
    }
    if (pos == start) fail("expected an integer");
    return static_cast<int>(v);
  }

  bool at_var() {
    skip_ws();
    return pos < s.size() && (s[pos] == 'z' || s[pos] == 'v');
  }

  int parse_var() {
    skip_ws();
    std::size_t at = pos;
    ++pos;  // consume prefix letter
    int idx = parse_int();
    if (idx < 1 || idx > dim) {
      pos = at;
      fail("variable index out of range 1.." + std::to_string(dim));
    }
    return idx - 1;
  }

  Cplx parse_coeff() {
    skip_ws();
    if (eat('(')) {
      double re = parse_real(true);
      skip_ws();
      if (pos >= s.size() || (s[pos] != '+' && s[pos] != '-')) {
        fail("expected '+' or '-' in complex coefficient");
      }
      double sign = (s[pos] == '-') ? -1.0 : 1.0;
      ++pos;
      double im = parse_real(false);
      if (!eat('i')) fail("expected 'i' in complex coefficient");
      if (!eat(')')) fail("expected ')'");
      return Cplx(re, sign * im);
    }
    return Cplx(parse_real(false), 0.0);
  }

  // monomial := var ('^' int)? ('*' var ('^' int)?)*
  Poly::Expo parse_monomial_tail(Poly::Expo e) {
    int v = parse_var();
    int k = eat('^') ? parse_int() : 1;
    e[v] += k;
    while (true) {
      std::size_t save = pos;
      if (!eat('*')) break;
      if (!at_var()) { pos = save; break; }
      v = parse_var();
      k = eat('^') ? parse_int() : 1;
      e[v] += k;
    }
    return e;
  }

  void parse_term(Poly& out, double sign) {
    skip_ws();
    if (pos >= s.size()) fail("expected a term");
    Poly::Expo e(dim, 0);
    Cplx c(sign, 0.0);
    if (at_var()) {
      e = parse_monomial_tail(std::move(e));
    } else {
      c *= parse_coeff();
      std::size_t save = pos;
      if (eat('*')) {
        if (!at_var()) { pos = save; fail("expected a variable after '*'"); }
        e = parse_monomial_tail(std::move(e));
      }
    }
    out.add_term(e, c);
  }

  Poly parse_expr() {
    Poly out(dim);
    double sign = 1.0;
    skip_ws();
    if (eat('+')) sign = 1.0;
    else if (eat('-')) sign = -1.0;
    parse_term(out, sign);
    while (true) {
      skip_ws();
      if (pos >= s.size()) break;
      if (eat('+')) sign = 1.0;
      else if (eat('-')) sign = -1.0;
      else fail("expected '+' or '-'");
      parse_term(out, sign);
    }
    return out;
  }
};

std::string num_str(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

std::string mono_str(const Poly::Expo& e, char prefix) {
  std::string out;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) continue;
    if (!out.empty()) out += '*';
    out += prefix;
    out += std::to_string(j + 1);
    if (e[j] >= 2) {
      out += '^';
      out += std::to_string(e[j]);
    }
  }
  return out;
}

}  // namespace

Poly parse_poly(const std::string& text, int dim) {
  Parser p{text, 0, dim};
  Poly out = p.parse_expr();
  return out;
}

std::string print_poly(const Poly& p, char var_prefix) {
  if (p.is_zero()) return "0";
  // graded order: total degree descending, then exponent vector descending
  std::vector<const std::pair<const Poly::Expo, Cplx>*> terms;
  for (const auto& t : p.terms()) terms.push_back(&t);
  auto deg = [](const Poly::Expo& e) {
    return std::accumulate(e.begin(), e.end(), 0);
  };
  std::sort(terms.begin(), terms.end(), [&](const auto* a, const auto* b) {
    int da = deg(a->first), db = deg(b->first);
    if (da != db) return da > db;
    return a->first > b->first;
  });
  std::string out;
  for (const auto* t : terms) {
    const Cplx c = t->second;
    const std::string mono = mono_str(t->first, var_prefix);
    const bool is_real = (c.imag() == 0.0);
    std::string body;
    bool negative = false;
    if (is_real) {
      double v = c.real();
      negative = v < 0.0;
      double av = std::abs(v);
      if (mono.empty()) {
        body = num_str(av);
      } else if (av == 1.0) {
        body = mono;
      } else {
        body = num_str(av) + "*" + mono;
      }
    } else {
      std::string coeff = "(" + num_str(c.real()) +
                          (c.imag() < 0.0 ? "-" : "+") +
                          num_str(std::abs(c.imag())) + "i)";
      body = mono.empty() ? coeff : coeff + "*" + mono;
    }
    if (out.empty()) {
      out = negative ? "-" + body : body;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// map calculus

Poly phi_poly(const ProperMap& m, int component) {
  const int d = m.dim;
  if (component < 0 || component >= d) {
    throw ShapeError("phi_poly: component out of range");
  }
  auto unit = [&](int j, int k) {
    Poly::Expo e(d, 0);
    e[j] = k;
    return e;
  };
  switch (m.tag) {
    case MapTag::sym2: {
      Poly p(2);
      if (component == 0) {
        p.add_term(unit(0, 1), 1.0);
        p.add_term(unit(1, 1), 1.0);
      } else {
        p.add_term({1, 1}, 1.0);
      }
      return p;
    }
    case MapTag::tetra: {
      Poly p(3);
      if (component < 2) {
        p.add_term(unit(component, 1), 1.0);
      } else {
        p.add_term({1, 1, 0}, 1.0);
        p.add_term({0, 0, 2}, -1.0);
      }
      return p;
    }
    case MapTag::hartogs:
    case MapTag::egg:
    case MapTag::segal: {
      Poly p(d);
      p.add_term(unit(component, component == d - 1 ? 2 : 1), 1.0);
      return p;
    }
    case MapTag::square_bidisc: {
      Poly p(2);
      p.add_term(unit(component, component == 0 ? 2 : 1), 1.0);
      return p;
    }
  }
  throw ShapeError("phi_poly: bad tag");
}

Poly jphi_poly(const ProperMap& m) {
  const int d = m.dim;
  Poly p(d);
  Poly::Expo e(d, 0);
  switch (m.tag) {
    case MapTag::sym2: {
      e[0] = 1;
      p.add_term(e, 1.0);
      e[0] = 0;
      e[1] = 1;
      p.add_term(e, -1.0);
      return p;
    }
    case MapTag::tetra:
      e[2] = 1;
      p.add_term(e, -2.0);
      return p;
    case MapTag::hartogs:
    case MapTag::egg:
    case MapTag::segal:
      e[d - 1] = 1;
      p.add_term(e, 2.0);
      return p;
    case MapTag::square_bidisc:
      e[0] = 1;
      p.add_term(e, 2.0);
      return p;
  }
  throw ShapeError("jphi_poly: bad tag");
}

Poly compose_with_map(const Poly& f_on_target, const ProperMap& m) {
  const int d = m.dim;
  if (f_on_target.dim() != d) {
    throw ShapeError("compose_with_map: polynomial dimension mismatch");
  }
  std::vector<Poly> phi;
  phi.reserve(d);
  for (int j = 0; j < d; ++j) phi.push_back(phi_poly(m, j));
  // cache phi_j^k
  std::vector<std::vector<Poly>> pw(d);
  for (int j = 0; j < d; ++j) pw[j].push_back(Poly::constant(d, 1.0));
  auto power = [&](int j, int k) -> const Poly& {
    while (static_cast<int>(pw[j].size()) <= k) {
      pw[j].push_back(pw[j].back() * phi[j]);
    }
    return pw[j][k];
  };
  Poly out(d);
  for (const auto& [e, c] : f_on_target.terms()) {
    Poly t = Poly::constant(d, c);
    for (int j = 0; j < d; ++j) {
      if (e[j] > 0) t = t * power(j, e[j]);
    }
    out = out + t;
  }
  return out;
}

Poly apply_involution(const Poly& p, const ProperMap& m) {
  const int d = m.dim;
  if (p.dim() != d) throw ShapeError("apply_involution: dimension mismatch");
  Poly out(d);
  for (const auto& [e, c] : p.terms()) {
    Poly::Expo en = e;
    Cplx cn = c;
    switch (m.tag) {
      case MapTag::sym2:
        std::swap(en[0], en[1]);
        break;
      case MapTag::tetra:
        if (e[2] % 2 == 1) cn = -cn;
        break;
      case MapTag::hartogs:
      case MapTag::egg:
      case MapTag::segal:
        if (e[d - 1] % 2 == 1) cn = -cn;
        break;
      case MapTag::square_bidisc:
        if (e[0] % 2 == 1) cn = -cn;
        break;
    }
    out.add_term(en, cn);
  }
  return out;
}

Poly symmetrize(const Poly& p, const ProperMap& m, SignedPart part) {
  Poly s = apply_involution(p, m);
  Poly combined = (part == SignedPart::plus) ? (p + s) : (p - s);
  return combined.scaled(0.5);
}

Poly divide_by_affine(const Poly& p, const Poly& linear) {
  const int d = p.dim();
  if (linear.dim() != d) {
    throw ShapeError("divide_by_affine: dimension mismatch");
  }
  if (linear.total_degree() != 1) {
    throw DomainError("divide_by_affine: divisor must have total degree 1");
  }
  // leading variable: first with a nonzero linear coefficient
  int lead = -1;
  Cplx a(0.0, 0.0);
  for (int j = 0; j < d; ++j) {
    Poly::Expo e(d, 0);
    e[j] = 1;
    Cplx c = linear.coeff(e);
    if (std::abs(c) > 0.0) {
      lead = j;
      a = c;
      break;
    }
  }
  if (lead < 0) {
    throw DomainError("divide_by_affine: divisor has no linear part");
  }
  // linear = a * x_lead + s, with s free of x_lead
  Poly s(d);
  for (const auto& [e, c] : linear.terms()) {
    if (e[lead] == 0) s.add_term(e, c);
  }
  // view p as sum p_k x_lead^k with coefficients free of x_lead
  const int kmax = p.degree_in(lead);
  std::vector<Poly> pk(kmax + 1, Poly(d));
  for (const auto& [e, c] : p.terms()) {
    Poly::Expo er = e;
    int k = er[lead];
    er[lead] = 0;
    pk[k].add_term(er, c);
  }
  // synthetic division top-down: q_{k-1} = (p_k - q_k * s) / a
  std::vector<Poly> qk(std::max(kmax, 1), Poly(d));
  Poly carry(d);
  for (int k = kmax; k >= 1; --k) {
    Poly num = pk[k] - carry;
    qk[k - 1] = num.scaled(1.0 / a);
    carry = qk[k - 1] * s;
  }
  Poly rem = pk[0] - carry;
  double scale = std::max(1.0, p.max_coeff_mod());
  if (rem.max_coeff_mod() > 1e-12 * scale) {
    throw NotDivisible("divide_by_affine: nonzero remainder");
  }
  Poly out(d);
  for (int k = 0; k < std::max(kmax, 1); ++k) {
    for (const auto& [e, c] : qk[k].terms()) {
      Poly::Expo en = e;
      en[lead] = k;
      out.add_term(en, c);
    }
  }
  return out;
}

namespace {

// sym2 elimination: substitute z2 = e1 - z1, then reduce powers of z1 with
// z1^2 = e1 z1 - e2; an invariant input leaves no z1-linear part.
Poly descend_sym2(const Poly& g) {
  // work in three variables (z1, e1, e2)
  Poly work(3);
  Poly z1 = Poly::monomial(3, {1, 0, 0});
  Poly e1_minus_z1(3);
  e1_minus_z1.add_term({0, 1, 0}, 1.0);
  e1_minus_z1.add_term({1, 0, 0}, -1.0);
  std::vector<Poly> pw_z1{Poly::constant(3, 1.0)};
  std::vector<Poly> pw_sub{Poly::constant(3, 1.0)};
  auto power = [](std::vector<Poly>& cache, const Poly& base, int k) -> const Poly& {
    while (static_cast<int>(cache.size()) <= k) {
      cache.push_back(cache.back() * base);
    }
    return cache[k];
  };
  for (const auto& [e, c] : g.terms()) {
    Poly t = power(pw_z1, z1, e[0]) * power(pw_sub, e1_minus_z1, e[1]);
    work = work + t.scaled(c);
  }
  // reduction: z1^k (k >= 2) -> z1^{k-1} e1 - z1^{k-2} e2
  while (work.degree_in(0) >= 2) {
    Poly next(3);
    for (const auto& [e, c] : work.terms()) {
      if (e[0] >= 2) {
        Poly::Expo ea = e;
        ea[0] -= 1;
        ea[1] += 1;
        next.add_term(ea, c);
        Poly::Expo eb = e;
        eb[0] -= 2;
        eb[2] += 1;
        next.add_term(eb, -c);
      } else {
        next.add_term(e, c);
      }
    }
    work = next;
  }
  double scale = std::max(1.0, g.max_coeff_mod());
  Poly out(2);
  for (const auto& [e, c] : work.terms()) {
    if (e[0] != 0) {
      if (std::abs(c) > 1e-12 * scale) {
        throw NotInvariant("descend: z1-linear residue after elimination");
      }
      continue;
    }
    out.add_term({e[1], e[2]}, c);
  }
  return out;
}

Poly descend_tetra(const Poly& g) {
  // g = sum_k g_k(z1, z2) z3^{2k}; substitute z3^2 = v1 v2 - v3
  Poly sub(3);
  sub.add_term({1, 1, 0}, 1.0);
  sub.add_term({0, 0, 1}, -1.0);
  std::vector<Poly> pw{Poly::constant(3, 1.0)};
  Poly out(3);
  for (const auto& [e, c] : g.terms()) {
    if (e[2] % 2 == 1) continue;  // tiny residue certified by the invariance check
    int k = e[2] / 2;
    while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * sub);
    Poly t = pw[k].scaled(c);
    Poly shift(3);
    for (const auto& [es, cs] : t.terms()) {
      shift.add_term({es[0] + e[0], es[1] + e[1], es[2]}, cs);
    }
    out = out + shift;
  }
  return out;
}

Poly descend_even_last(const Poly& g, int var) {
  Poly out(g.dim());
  for (const auto& [e, c] : g.terms()) {
    if (e[var] % 2 == 1) continue;  // tiny residue certified by the invariance check
    Poly::Expo en = e;
    en[var] = e[var] / 2;
    out.add_term(en, c);
  }
  return out;
}

}  // namespace

Poly descend(const Poly& g, const ProperMap& m) {
  if (g.dim() != m.dim) throw ShapeError("descend: dimension mismatch");
  if (!approx_equal(g, apply_involution(g, m))) {
    throw NotInvariant("descend: input is not invariant under the involution");
  }
  switch (m.tag) {
    case MapTag::sym2:
      return descend_sym2(g);
    case MapTag::tetra:
      return descend_tetra(g);
    case MapTag::hartogs:
    case MapTag::egg:
    case MapTag::segal:
      return descend_even_last(g, m.dim - 1);
    case MapTag::square_bidisc:
      return descend_even_last(g, 0);
  }
  throw ShapeError("descend: bad tag");
}

Poly gamma_phi(const Poly& f_on_target, const ProperMap& m) {
  return jphi_poly(m) * compose_with_map(f_on_target, m);
}

Poly gamma_phi_inverse(const Poly& g_on_source, const ProperMap& m) {
  if (g_on_source.dim() != m.dim) {
    throw ShapeError("gamma_phi_inverse: dimension mismatch");
  }
  Poly minus_sig = apply_involution(g_on_source, m).scaled(-1.0);
  if (!approx_equal(g_on_source, minus_sig)) {
    throw NotAntiInvariant(
        "gamma_phi_inverse: input is not anti-invariant under the involution");
  }
  Poly h = divide_by_affine(g_on_source, jphi_poly(m));
  return descend(h, m);
}

double check_intertwining(const ProperMap& m, const Poly& f_on_target,
                          int component, int n_points, std::uint64_t seed) {
  const int d = m.dim;
  if (f_on_target.dim() != d) {
    throw ShapeError("check_intertwining: dimension mismatch");
  }
  if (component < 0 || component >= d) {
    throw ShapeError("check_intertwining: component out of range");
  }
  Poly::Expo e(d, 0);
  e[component] = 1;
  Poly vif = f_on_target * Poly::monomial(d, e);
  Poly lhs = gamma_phi(vif, m);
  Poly gf = gamma_phi(f_on_target, m);
  Poly phic = phi_poly(m, component);
  // Both sides agree as polynomials, so the residual is pure evaluation
  // roundoff and any open set of points is equally generic.  Keep the
  // evaluation points at unit scale so the absolute residual stays
  // meaningful: an unbounded source would otherwise contribute roundoff
  // proportional to the sampled point magnitudes.
  DomainId eval_dom = m.source();
  if (eval_dom.tag == DomainTag::whole_space) {
    eval_dom = DomainId::polydisc(d);
  }
  std::vector<Point> pts = sample(eval_dom, {n_points, seed, 0.05});
  double worst = 0.0;
  for (const Point& z : pts) {
    Cplx a = lhs.eval(z);
    Cplx b = phic.eval(z) * gf.eval(z);
    worst = std::max(worst, std::abs(a - b));
  }
  return worst;
}

}  // namespace rkhs
