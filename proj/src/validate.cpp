#include "rkhs/validate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <json.hpp>

#include "rkhs/version.hpp"

namespace rkhs {

namespace {

std::string num_str(double x) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, p);
}

void check_cfg(const CampaignConfig& cfg) {
  if (cfg.n_points < 1 || cfg.n_points > 256) {
    throw DomainError("campaign: n_points must lie in 1..256");
  }
  if (cfg.n_pairs < 1) throw DomainError("campaign: n_pairs must be positive");
  if (!(cfg.tol > 0.0)) throw DomainError("campaign: tol must be positive");
}

std::map<std::string, std::string> cfg_echo(const CampaignConfig& cfg) {
  return {{"n_points", std::to_string(cfg.n_points)},
          {"n_pairs", std::to_string(cfg.n_pairs)},
          {"seed", std::to_string(cfg.seed)},
          {"tol", num_str(cfg.tol)},
          {"margin", num_str(cfg.margin)},
          {"truncation", std::to_string(cfg.truncation)}};
}

// the series convergence guard in target coordinates, with an adjustable
// fraction so Gram campaigns can stay strictly inside the evaluable region
bool tetra_pair_ok(const Point& v, const Point& u, double frac) {
  Cplx a = 1.0 - (v[0] * std::conj(u[0]) + v[1] * std::conj(u[1]) -
                  v[2] * std::conj(u[2]));
  Cplx b2 = 4.0 * (v[0] * v[1] - v[2]) * std::conj(u[0] * u[1] - u[2]);
  return std::sqrt(std::abs(b2)) <= frac * std::abs(a);
}

constexpr double kTetraGramGuard = 0.8;

Report psd_campaign(const KernelFn& fn, const std::string& kernel_tag,
                    const DomainId& dom, const CampaignConfig& cfg,
                    bool tetra_filter) {
  check_cfg(cfg);
  Rng root(cfg.seed);
  std::vector<Point> pts;
  std::uint64_t stream = 0;
  int attempts = 0;
  int skips = 0;
  while (static_cast<int>(pts.size()) < cfg.n_points) {
    if (attempts >= 50 * cfg.n_points) {
      throw SamplerExhausted("run_psd: attempt budget exhausted for " + kernel_tag);
    }
    ++attempts;
    Rng sub = root.substream(stream++);
    Point p = sample_one(dom, sub, cfg.margin);
    bool ok = true;
    if (tetra_filter && !tetra_pair_ok(p, p, kTetraGramGuard)) ok = false;
    for (std::size_t j = 0; ok && j < pts.size(); ++j) {
      if (tetra_filter && !(tetra_pair_ok(p, pts[j], kTetraGramGuard) &&
                            tetra_pair_ok(pts[j], p, kTetraGramGuard))) {
        ok = false;
        break;
      }
      try {
        fn(p, pts[j]);
        fn(pts[j], p);
      } catch (const Error&) {
        ok = false;
      }
    }
    if (ok) {
      try {
        fn(p, p);
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok) {
      ++skips;
      continue;
    }
    pts.push_back(std::move(p));
  }
  if (skips > 0.2 * attempts) {
    throw CampaignDegenerate("run_psd: " + std::to_string(skips) + " of " +
                             std::to_string(attempts) + " attempts skipped");
  }
  PsdVerdict v = psd_verdict(build_gram(fn, pts), cfg.tol);
  Report r;
  r.campaign = "psd";
  r.pass = v.psd;
  r.metrics = {{"min_eig", v.min_eig},
               {"max_eig", v.max_eig},
               {"points", static_cast<double>(pts.size())},
               {"attempts", static_cast<double>(attempts)},
               {"skips", static_cast<double>(skips)}};
  r.config = cfg_echo(cfg);
  r.config["kernel"] = kernel_tag;
  r.config["domain"] = dom.str();
  r.version = kVersion;
  return r;
}

Report identity_campaign(const ProperMap& m, const KernelId& base,
                         const KernelFn& closed, const std::string& closed_tag,
                         const CampaignConfig& cfg) {
  check_cfg(cfg);
  DomainId src = m.source();
  Rng root(cfg.seed);
  std::uint64_t stream = 0;
  int attempts = 0;
  int skips = 0;
  int tested = 0;
  double max_residual = 0.0;
  while (tested < cfg.n_pairs) {
    if (attempts >= 50 * cfg.n_pairs) {
      throw SamplerExhausted("run_identity: attempt budget exhausted");
    }
    ++attempts;
    Rng sub = root.substream(stream++);
    Point z = sample_one(src, sub, cfg.margin);
    Point w = sample_one(src, sub, cfg.margin);
    Cplx jz = jacobian(m, z);
    Cplx jw = jacobian(m, w);
    if (std::abs(jz) <= cfg.margin || std::abs(jw) <= cfg.margin) {
      ++skips;
      continue;
    }
    Cplx lhs;
    Cplx rhs;
    Cplx cval;
    try {
      cval = closed(apply_map(m, z), apply_map(m, w));
      lhs = jz * cval * std::conj(jw);
      rhs = eval_signed(base, m, SignedPart::minus, z, w);
    } catch (const Error&) {
      ++skips;
      continue;
    }
    max_residual = std::max(max_residual, std::abs(lhs - rhs) / (1.0 + std::abs(cval)));
    ++tested;
  }
  if (skips > 0.2 * attempts) {
    throw CampaignDegenerate("run_identity: " + std::to_string(skips) + " of " +
                             std::to_string(attempts) + " attempts skipped");
  }
  Report r;
  r.campaign = "identity";
  r.pass = max_residual <= cfg.tol;
  r.metrics = {{"max_residual", max_residual},
               {"pairs_tested", static_cast<double>(tested)},
               {"pairs_skipped", static_cast<double>(skips)}};
  r.config = cfg_echo(cfg);
  r.config["map"] = m.str();
  r.config["base"] = base.str();
  r.config["closed"] = closed_tag;
  r.version = kVersion;
  return r;
}

}  // namespace

std::string Report::to_json() const {
  nlohmann::json j;
  j["campaign"] = campaign;
  j["pass"] = pass;
  j["metrics"] = metrics;
  j["config"] = config;
  j["version"] = version;
  return j.dump();
}

std::string Report::to_csv() const {
  std::string header = "campaign,pass";
  std::string row = campaign + "," + (pass ? "true" : "false");
  for (const auto& [k, v] : metrics) {
    header += "," + k;
    row += "," + num_str(v);
  }
  header += ",version";
  row += "," + version;
  return header + "\n" + row + "\n";
}

KernelFn quarter_polydisc_fn(int d) {
  KernelId k = KernelId::hardy_polydisc(d);
  return [k](const Point& v, const Point& u) { return 0.25 * eval_base(k, v, u); };
}

Report run_psd(const KernelId& k, const CampaignConfig& cfg) {
  DomainId dom = kernel_domain(k);
  KernelFn fn;
  if (k.is_base()) {
    fn = [k](const Point& z, const Point& w) { return eval_base(k, z, w); };
  } else {
    fn = [k](const Point& z, const Point& w) { return eval_closed(k, z, w); };
  }
  return psd_campaign(fn, k.str(), dom, cfg, k.tag == KernelTag::tetra_series);
}

Report run_psd(const KernelFn& fn, const std::string& kernel_tag,
               const DomainId& dom, const CampaignConfig& cfg) {
  return psd_campaign(fn, kernel_tag, dom, cfg, false);
}

Report run_psd_pushforward(const KernelId& base, const ProperMap& m,
                           const CampaignConfig& cfg) {
  if (base.dim != m.dim || !base.is_base()) {
    throw ShapeError("run_psd_pushforward: kernel does not live on the source of " +
                     m.str());
  }
  KernelFn fn = [base, m](const Point& v, const Point& u) {
    return eval_pushforward(base, m, v, u);
  };
  // the tetrablock route inherits the series guard region so the lifted
  // branch arguments stay in the right half plane
  DomainId dom = m.tag == MapTag::tetra ? DomainId::omega_tetra() : m.target();
  Report r = psd_campaign(fn, "pushforward(" + base.str() + "," + m.str() + ")",
                          dom, cfg, m.tag == MapTag::tetra);
  r.config["map"] = m.str();
  return r;
}

Report run_identity(const ProperMap& m, const KernelId& base,
                    const KernelId& closed, const CampaignConfig& cfg) {
  KernelFn fn = [closed](const Point& v, const Point& u) {
    return eval_closed(closed, v, u);
  };
  return identity_campaign(m, base, fn, closed.str(), cfg);
}

Report run_identity(const ProperMap& m, const KernelId& base,
                    const KernelFn& closed, const std::string& closed_tag,
                    const CampaignConfig& cfg) {
  return identity_campaign(m, base, closed, closed_tag, cfg);
}

Report run_series_compare(const CampaignConfig& cfg) {
  check_cfg(cfg);
  if (cfg.truncation < 1) throw DomainError("run_series_compare: truncation must be >= 1");
  DomainId dom = DomainId::omega_tetra();
  KernelId base = KernelId::cartan_ii_kernel();
  ProperMap m = ProperMap::tetra();
  Rng root(cfg.seed);
  std::uint64_t stream = 0;
  int attempts = 0;
  int skips = 0;
  int tested = 0;
  double alignment = 0.0;
  double max_dev = 0.0;
  double max_tail = 0.0;
  while (tested < cfg.n_pairs) {
    if (attempts >= 50 * cfg.n_pairs) {
      throw SamplerExhausted("run_series_compare: attempt budget exhausted");
    }
    ++attempts;
    Rng sub = root.substream(stream++);
    Point v = sample_one(dom, sub, cfg.margin);
    Point u = sample_one(dom, sub, cfg.margin);
    Cplx series;
    Cplx quotient;
    double tail;
    try {
      SeriesValue sv = eval_tetra_series(v, u, cfg.truncation);
      series = sv.value;
      tail = sv.tail;
      quotient = eval_pushforward(base, m, v, u);
    } catch (const Error&) {
      ++skips;
      continue;
    }
    if (tested == 0) alignment = (quotient / series).real();
    max_dev = std::max(max_dev,
                       std::abs(alignment * series - quotient) / std::abs(quotient));
    max_tail = std::max(max_tail, tail);
    ++tested;
  }
  if (skips > 0.2 * attempts) {
    throw CampaignDegenerate("run_series_compare: " + std::to_string(skips) +
                             " of " + std::to_string(attempts) + " attempts skipped");
  }
  Report r;
  r.campaign = "series";
  r.pass = max_dev <= cfg.tol;
  r.metrics = {{"alignment", alignment},
               {"max_deviation", max_dev},
               {"max_tail", max_tail},
               {"pairs_tested", static_cast<double>(tested)},
               {"pairs_skipped", static_cast<double>(skips)}};
  r.config = cfg_echo(cfg);
  r.version = kVersion;
  return r;
}

Report run_isometry(const ProperMap& m, const SpaceId& base, int max_degree) {
  if (max_degree < 0) throw DomainError("run_isometry: negative degree");
  SpaceId expected = base_space(m);
  if (expected.tag != base.tag || expected.dim != base.dim) {
    throw UnsupportedSpace("run_isometry: " + base.str() +
                           " is not the source space of " + m.str());
  }
  int tdim = m.target().dim;
  std::vector<Poly> mons;
  // all target monomials of total degree <= max_degree, graded order
  std::vector<int> expo(tdim, 0);
  for (int deg = 0; deg <= max_degree; ++deg) {
    std::fill(expo.begin(), expo.end(), 0);
    expo[0] = deg;
    while (true) {
      mons.push_back(Poly::monomial(tdim, expo));
      int i = tdim - 2;
      while (i >= 0 && expo[i] == 0) --i;
      if (i < 0) break;
      --expo[i];
      int rest = deg;
      for (int j = 0; j <= i; ++j) rest -= expo[j];
      for (int j = i + 1; j < tdim; ++j) expo[j] = 0;
      expo[i + 1] = rest;
    }
  }
  const int n = static_cast<int>(mons.size());
  double max_anti = 0.0;
  std::vector<Poly> images;
  images.reserve(n);
  for (const Poly& f : mons) {
    Poly g = gamma_phi(f, m);
    Poly odd = symmetrize(g, m, SignedPart::minus);
    double gap = 0.0;
    Poly diff = g - odd;
    for (const auto& [e, c] : diff.terms()) gap = std::max(gap, std::abs(c));
    max_anti = std::max(max_anti, gap);
    images.push_back(std::move(g));
  }
  std::vector<Cplx> gram(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      gram[static_cast<std::size_t>(i) * n + j] =
          space_pairing(base, images[i], images[j]);
    }
  }
  PsdVerdict v = psd_verdict(HermitianMatrix(n, gram), 1e-10);
  double max_diag_gap = 0.0;
  for (int i = 0; i < n; ++i) {
    double diag = gram[static_cast<std::size_t>(i) * n + i].real();
    double direct = phi_norm_sq(m, base, mons[i]);
    max_diag_gap = std::max(max_diag_gap, std::abs(diag - direct));
  }
  double one_norm = phi_norm_sq(m, base, Poly::constant(tdim, 1.0));
  Report r;
  r.campaign = "isometry";
  r.pass = v.psd && max_anti <= 1e-13 && max_diag_gap == 0.0;
  r.metrics = {{"monomials", static_cast<double>(n)},
               {"min_eig", v.min_eig},
               {"max_eig", v.max_eig},
               {"max_anti_residual", max_anti},
               {"max_diag_gap", max_diag_gap},
               {"one_norm_sq", one_norm}};
  r.config = {{"map", m.str()},
              {"space", base.str()},
              {"max_degree", std::to_string(max_degree)}};
  r.version = kVersion;
  return r;
}

Report run_reproducing(const ProperMap& m, const CampaignConfig& cfg) {
  check_cfg(cfg);
  if (m.tag != MapTag::sym2) {
    throw UnsupportedSpace("run_reproducing: implemented for the symmetrizing map");
  }
  DomainId src = m.source();
  const int kMaxTrunc = 64;
  // fixed low-degree probes plus seeded random polynomials on the target
  std::vector<Poly> fs;
  fs.push_back(Poly::constant(2, 1.0));
  fs.push_back(Poly::monomial(2, {1, 1}));
  Rng root(cfg.seed);
  Rng coeff = root.substream(1000000);
  for (int k = 0; k < 3; ++k) {
    Poly f(2);
    for (int a = 0; a <= 3; ++a) {
      for (int b = 0; a + b <= 3; ++b) {
        f.add_term({a, b}, coeff.next_gaussian());
      }
    }
    fs.push_back(std::move(f));
  }
  std::uint64_t stream = 0;
  int attempts = 0;
  int skips = 0;
  std::vector<Point> pts;
  while (static_cast<int>(pts.size()) < cfg.n_points) {
    if (attempts >= 50 * cfg.n_points) {
      throw SamplerExhausted("run_reproducing: attempt budget exhausted");
    }
    ++attempts;
    Rng sub = root.substream(stream++);
    Point w = sample_one(src, sub, cfg.margin);
    if (std::abs(jacobian(m, w)) <= cfg.margin) {
      ++skips;
      continue;
    }
    pts.push_back(std::move(w));
  }
  if (skips > 0.2 * attempts) {
    throw CampaignDegenerate("run_reproducing: " + std::to_string(skips) + " of " +
                             std::to_string(attempts) + " attempts skipped");
  }

  // pairing of gamma f against the truncated antisymmetrized bidisc kernel:
  // terms z1^a z2^b with max(a, b) <= N pair against (w1^a w2^b - w1^b w2^a)/2
  auto paired = [&](const Poly& gf, const Point& w, int trunc) {
    Cplx acc(0.0, 0.0);
    for (const auto& [e, c] : gf.terms()) {
      if (e[0] > trunc || e[1] > trunc) continue;
      Cplx direct = std::pow(w[0], e[0]) * std::pow(w[1], e[1]);
      Cplx swapped = std::pow(w[0], e[1]) * std::pow(w[1], e[0]);
      acc += c * 0.5 * (direct - swapped);
    }
    return acc;
  };

  double final_dev = 0.0;
  int achieved = -1;
  std::vector<Poly> gammas;
  gammas.reserve(fs.size());
  for (const Poly& f : fs) gammas.push_back(gamma_phi(f, m));
  for (int trunc = 0; trunc <= kMaxTrunc; ++trunc) {
    double dev = 0.0;
    for (std::size_t fi = 0; fi < fs.size(); ++fi) {
      for (const Point& w : pts) {
        Cplx expectv = fs[fi].eval(apply_map(m, w));
        Cplx got = paired(gammas[fi], w, trunc) / jacobian(m, w);
        dev = std::max(dev, std::abs(got - expectv) / (1.0 + std::abs(expectv)));
      }
    }
    if (dev <= cfg.tol) {
      achieved = trunc;
      final_dev = dev;
      break;
    }
    final_dev = dev;
  }
  Report r;
  r.campaign = "reproducing";
  r.pass = achieved >= 0;
  r.metrics = {{"max_deviation", final_dev},
               {"truncation_achieved",
                static_cast<double>(achieved >= 0 ? achieved : kMaxTrunc + 1)},
               {"points", static_cast<double>(pts.size())},
               {"polynomials", static_cast<double>(fs.size())}};
  r.config = cfg_echo(cfg);
  r.config["map"] = m.str();
  r.version = kVersion;
  return r;
}

}  // namespace rkhs
