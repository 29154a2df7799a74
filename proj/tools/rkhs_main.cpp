// Command-line front end: validation campaigns, polynomial tools, and the
// von Neumann tester. JSON reports on stdout, human summaries on stderr.
// Exit codes: 0 pass, 1 campaign failure, 2 usage, 3 internal error.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rkhs/geometry.hpp"
#include "rkhs/hereditary.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/norms.hpp"
#include "rkhs/polyalg.hpp"
#include "rkhs/validate.hpp"
#include "rkhs/version.hpp"

namespace {

using rkhs::DomainId;
using rkhs::KernelId;
using rkhs::ProperMap;
using rkhs::SpaceId;

std::pair<std::string, int> split_tag(const std::string& tag, int default_dim) {
  auto pos = tag.find(':');
  if (pos == std::string::npos) return {tag, default_dim};
  const std::string num = tag.substr(pos + 1);
  try {
    std::size_t used = 0;
    int d = std::stoi(num, &used);
    if (used != num.size()) throw std::invalid_argument(num);
    return {tag.substr(0, pos), d};
  } catch (const std::exception&) {
    throw rkhs::ParseError("bad dimension suffix in tag '" + tag + "'", pos + 1);
  }
}

ProperMap parse_map(const std::string& tag, int default_dim) {
  auto [name, d] = split_tag(tag, default_dim);
  if (name == "sym2") return ProperMap::sym2();
  if (name == "tetra") return ProperMap::tetra();
  if (name == "hartogs") return ProperMap::hartogs(d);
  if (name == "egg") return ProperMap::egg(d);
  if (name == "segal") return ProperMap::segal(d);
  if (name == "square_bidisc") return ProperMap::square_bidisc();
  throw rkhs::ParseError("unknown map tag '" + tag + "'", 0);
}

KernelId parse_kernel(const std::string& tag, int default_dim, int truncation) {
  auto [name, d] = split_tag(tag, default_dim);
  if (name == "hardy_polydisc") return KernelId::hardy_polydisc(d);
  if (name == "hardy_triangle") return KernelId::hardy_triangle(d);
  if (name == "szego_ball") return KernelId::szego_ball(d);
  if (name == "cartan_ii_kernel") return KernelId::cartan_ii_kernel();
  if (name == "segal_bargmann") return KernelId::segal_bargmann(d);
  if (name == "g2_closed") return KernelId::g2_closed();
  if (name == "tetra_series") return KernelId::tetra_series(truncation);
  if (name == "fat_hartogs_closed") return KernelId::fat_hartogs_closed(d);
  if (name == "egg_closed") {
    if (tag.find(':') != std::string::npos && d != 2) {
      throw rkhs::UnsupportedSpace("closed egg kernel is validated for dimension 2");
    }
    return KernelId::egg_closed();
  }
  if (name == "segal_pushforward_closed") return KernelId::segal_pushforward_closed(d);
  throw rkhs::ParseError("unknown kernel tag '" + tag + "'", 0);
}

DomainId parse_domain(const std::string& tag, int default_dim) {
  auto [name, d] = split_tag(tag, default_dim);
  if (name == "polydisc") return DomainId::polydisc(d);
  if (name == "hartogs_triangle") return DomainId::hartogs_triangle(d);
  if (name == "ball") return DomainId::ball(d);
  if (name == "cartan_ii") return DomainId::cartan_ii();
  if (name == "whole_space") return DomainId::whole_space(d);
  if (name == "sym_bidisc") return DomainId::sym_bidisc();
  if (name == "tetrablock") return DomainId::tetrablock();
  if (name == "fat_hartogs") return DomainId::fat_hartogs(d);
  if (name == "egg") return DomainId::egg(d);
  if (name == "omega_tetra") return DomainId::omega_tetra();
  throw rkhs::ParseError("unknown domain tag '" + tag + "'", 0);
}

SpaceId parse_space(const std::string& tag, int default_dim) {
  auto [name, d] = split_tag(tag, default_dim);
  if (name == "h2_polydisc") return SpaceId::h2_polydisc(d);
  if (name == "h2_triangle") return SpaceId::h2_triangle(d);
  if (name == "h2_ball") return SpaceId::h2_ball(d);
  throw rkhs::ParseError("unknown space tag '" + tag + "'", 0);
}

KernelId natural_base(const ProperMap& m) {
  switch (m.tag) {
    case rkhs::MapTag::sym2:
    case rkhs::MapTag::square_bidisc:
      return KernelId::hardy_polydisc(2);
    case rkhs::MapTag::tetra:
      return KernelId::cartan_ii_kernel();
    case rkhs::MapTag::hartogs:
      return KernelId::hardy_triangle(m.dim);
    case rkhs::MapTag::egg:
      return KernelId::szego_ball(m.dim);
    case rkhs::MapTag::segal:
      return KernelId::segal_bargmann(m.dim);
  }
  throw rkhs::ParseError("bad map tag", 0);
}

std::string natural_closed(const ProperMap& m) {
  switch (m.tag) {
    case rkhs::MapTag::sym2:
      return "g2_closed";
    case rkhs::MapTag::hartogs:
      return "fat_hartogs_closed:" + std::to_string(m.dim);
    case rkhs::MapTag::egg:
      return "egg_closed";
    case rkhs::MapTag::segal:
      return "segal_pushforward_closed:" + std::to_string(m.dim);
    case rkhs::MapTag::square_bidisc:
      return "quarter_polydisc:2";
    case rkhs::MapTag::tetra:
      throw rkhs::ParseError(
          "the tetrablock kernel has no closed form; use the series subcommand", 0);
  }
  throw rkhs::ParseError("bad map tag", 0);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rkhs::ParseError("cannot open '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw rkhs::ParseError(std::string("config: ") + e.what(), 0);
  }
}

template <typename T>
void merge_key(const CLI::App& cmd, const nlohmann::json& j, const std::string& key,
               T& var) {
  if (!j.contains(key)) return;
  if (cmd.get_option("--" + key)->count() > 0) return;
  try {
    var = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw rkhs::ParseError("config key '" + key + "': " + e.what(), 0);
  }
}

int emit(const rkhs::Report& r, const std::string& format) {
  if (format == "csv") {
    std::cout << r.to_csv();
  } else {
    std::cout << r.to_json() << "\n";
  }
  std::cerr << r.campaign << ": " << (r.pass ? "pass" : "FAIL");
  for (const auto& [k, v] : r.metrics) std::cerr << " " << k << "=" << v;
  std::cerr << "\n";
  return r.pass ? 0 : 1;
}

struct CommonFlags {
  std::uint64_t seed = 42;
  double tol = 1e-8;
  double margin = 0.05;
  int pairs = 200;
  int points = 32;
  int truncation = 60;
  int dim = 2;
  std::string format = "json";
  std::string config_path;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_pairs, bool with_points) {
  cmd->add_option("--seed", f.seed, "campaign seed")->capture_default_str();
  cmd->add_option("--tol", f.tol, "pass tolerance")->capture_default_str();
  cmd->add_option("--margin", f.margin, "sampling margin")->capture_default_str();
  if (with_pairs) {
    cmd->add_option("--pairs", f.pairs, "pairs to test")->capture_default_str();
  }
  if (with_points) {
    cmd->add_option("--points", f.points, "points to sample")->capture_default_str();
  }
  cmd->add_option("--truncation", f.truncation, "series truncation order")
      ->capture_default_str();
  cmd->add_option("--dim", f.dim, "default dimension for tags without :d")
      ->capture_default_str();
  cmd->add_option("--format", f.format, "report format: json or csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--config", f.config_path, "JSON config file; flags win");
}

void merge_common(const CLI::App& cmd, const nlohmann::json& j, CommonFlags& f,
                  bool with_pairs, bool with_points) {
  merge_key(cmd, j, "seed", f.seed);
  merge_key(cmd, j, "tol", f.tol);
  merge_key(cmd, j, "margin", f.margin);
  if (with_pairs) merge_key(cmd, j, "pairs", f.pairs);
  if (with_points) merge_key(cmd, j, "points", f.points);
  merge_key(cmd, j, "truncation", f.truncation);
  merge_key(cmd, j, "dim", f.dim);
  merge_key(cmd, j, "format", f.format);
}

rkhs::CampaignConfig to_cfg(const CommonFlags& f) {
  rkhs::CampaignConfig cfg;
  cfg.n_points = f.points;
  cfg.n_pairs = f.pairs;
  cfg.seed = f.seed;
  cfg.tol = f.tol;
  cfg.margin = f.margin;
  cfg.truncation = f.truncation;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reproducing kernels on quotient domains"};
  app.set_version_flag("--version", rkhs::kVersion);
  app.require_subcommand(1);

  int exit_code = 0;

  // ---- psd ----
  auto* psd = app.add_subcommand("psd", "Gram positivity campaign");
  auto psd_flags = std::make_shared<CommonFlags>();
  auto psd_kernel = std::make_shared<std::string>();
  auto psd_map = std::make_shared<std::string>();
  auto psd_base = std::make_shared<std::string>();
  psd->add_option("--kernel", *psd_kernel, "kernel tag, e.g. g2_closed");
  psd->add_option("--map", *psd_map, "pushforward over this map instead");
  psd->add_option("--base", *psd_base, "base kernel for --map (default: natural)");
  add_common(psd, *psd_flags, false, true);
  psd->callback([&, psd_flags, psd_kernel, psd_map, psd_base] {
    nlohmann::json j = load_config(psd_flags->config_path);
    merge_common(*psd, j, *psd_flags, false, true);
    merge_key(*psd, j, "kernel", *psd_kernel);
    merge_key(*psd, j, "map", *psd_map);
    merge_key(*psd, j, "base", *psd_base);
    rkhs::CampaignConfig cfg = to_cfg(*psd_flags);
    rkhs::Report r;
    if (!psd_map->empty()) {
      ProperMap m = parse_map(*psd_map, psd_flags->dim);
      KernelId base = psd_base->empty()
                          ? natural_base(m)
                          : parse_kernel(*psd_base, psd_flags->dim, cfg.truncation);
      r = rkhs::run_psd_pushforward(base, m, cfg);
    } else if (!psd_kernel->empty()) {
      r = rkhs::run_psd(parse_kernel(*psd_kernel, psd_flags->dim, cfg.truncation), cfg);
    } else {
      throw CLI::RequiredError("--kernel or --map");
    }
    exit_code = emit(r, psd_flags->format);
  });

  // ---- identity ----
  auto* idy = app.add_subcommand("identity", "kernel transformation identity");
  auto idy_flags = std::make_shared<CommonFlags>();
  auto idy_map = std::make_shared<std::string>();
  auto idy_base = std::make_shared<std::string>();
  auto idy_closed = std::make_shared<std::string>();
  idy->add_option("--map", *idy_map, "map tag")->required();
  idy->add_option("--base", *idy_base, "source kernel (default: natural)");
  idy->add_option("--closed", *idy_closed, "target kernel (default: natural)");
  add_common(idy, *idy_flags, true, false);
  idy->callback([&, idy_flags, idy_map, idy_base, idy_closed] {
    nlohmann::json j = load_config(idy_flags->config_path);
    merge_common(*idy, j, *idy_flags, true, false);
    merge_key(*idy, j, "map", *idy_map);
    merge_key(*idy, j, "base", *idy_base);
    merge_key(*idy, j, "closed", *idy_closed);
    rkhs::CampaignConfig cfg = to_cfg(*idy_flags);
    ProperMap m = parse_map(*idy_map, idy_flags->dim);
    KernelId base = idy_base->empty()
                        ? natural_base(m)
                        : parse_kernel(*idy_base, idy_flags->dim, cfg.truncation);
    std::string closed_tag = idy_closed->empty() ? natural_closed(m) : *idy_closed;
    rkhs::Report r;
    auto [cname, cdim] = split_tag(closed_tag, m.target().dim);
    if (cname == "quarter_polydisc") {
      r = rkhs::run_identity(m, base, rkhs::quarter_polydisc_fn(cdim), closed_tag, cfg);
    } else {
      r = rkhs::run_identity(
          m, base, parse_kernel(closed_tag, idy_flags->dim, cfg.truncation), cfg);
    }
    exit_code = emit(r, idy_flags->format);
  });

  // ---- series ----
  auto* ser = app.add_subcommand("series", "tetrablock series vs quotient route");
  auto ser_flags = std::make_shared<CommonFlags>();
  add_common(ser, *ser_flags, true, false);
  ser->callback([&, ser_flags] {
    nlohmann::json j = load_config(ser_flags->config_path);
    merge_common(*ser, j, *ser_flags, true, false);
    exit_code = emit(rkhs::run_series_compare(to_cfg(*ser_flags)), ser_flags->format);
  });

  // ---- isometry ----
  auto* iso = app.add_subcommand("isometry", "gamma image Gram and norm audit");
  auto iso_flags = std::make_shared<CommonFlags>();
  auto iso_map = std::make_shared<std::string>();
  auto iso_space = std::make_shared<std::string>();
  auto iso_degree = std::make_shared<int>(6);
  iso->add_option("--map", *iso_map, "map tag")->required();
  iso->add_option("--space", *iso_space, "base space (default: natural)");
  iso->add_option("--degree", *iso_degree, "max total degree of target monomials")
      ->capture_default_str();
  add_common(iso, *iso_flags, false, false);
  iso->callback([&, iso_flags, iso_map, iso_space, iso_degree] {
    nlohmann::json j = load_config(iso_flags->config_path);
    merge_common(*iso, j, *iso_flags, false, false);
    merge_key(*iso, j, "map", *iso_map);
    merge_key(*iso, j, "space", *iso_space);
    merge_key(*iso, j, "degree", *iso_degree);
    ProperMap m = parse_map(*iso_map, iso_flags->dim);
    SpaceId base = iso_space->empty() ? rkhs::base_space(m)
                                      : parse_space(*iso_space, iso_flags->dim);
    exit_code = emit(rkhs::run_isometry(m, base, *iso_degree), iso_flags->format);
  });

  // ---- reproducing ----
  auto* rep = app.add_subcommand("reproducing", "truncated kernel pairing audit");
  auto rep_flags = std::make_shared<CommonFlags>();
  auto rep_map = std::make_shared<std::string>("sym2");
  rep->add_option("--map", *rep_map, "map tag")->capture_default_str();
  add_common(rep, *rep_flags, false, true);
  rep->callback([&, rep_flags, rep_map] {
    nlohmann::json j = load_config(rep_flags->config_path);
    merge_common(*rep, j, *rep_flags, false, true);
    merge_key(*rep, j, "map", *rep_map);
    exit_code = emit(rkhs::run_reproducing(parse_map(*rep_map, rep_flags->dim),
                                           to_cfg(*rep_flags)),
                     rep_flags->format);
  });

  // ---- vn ----
  auto* vn = app.add_subcommand("vn", "von Neumann inequality check");
  auto vn_flags = std::make_shared<CommonFlags>();
  auto vn_domain = std::make_shared<std::string>();
  auto vn_tuple = std::make_shared<std::string>();
  auto vn_poly = std::make_shared<std::string>();
  auto vn_samples = std::make_shared<int>(4096);
  auto vn_cap = std::make_shared<int>(16);
  vn->add_option("--domain", *vn_domain, "domain tag, e.g. fat_hartogs:2")->required();
  vn->add_option("--tuple", *vn_tuple, "JSON file with the matrix tuple")->required();
  vn->add_option("--poly", *vn_poly, "polynomial in the domain variables")->required();
  vn->add_option("--samples", *vn_samples, "sup-norm sample count")
      ->capture_default_str();
  vn->add_option("--cap", *vn_cap, "hereditary series degree cap")
      ->capture_default_str();
  add_common(vn, *vn_flags, false, false);
  vn->callback([&, vn_flags, vn_domain, vn_tuple, vn_poly, vn_samples, vn_cap] {
    nlohmann::json j = load_config(vn_flags->config_path);
    merge_common(*vn, j, *vn_flags, false, false);
    merge_key(*vn, j, "domain", *vn_domain);
    merge_key(*vn, j, "tuple", *vn_tuple);
    merge_key(*vn, j, "poly", *vn_poly);
    merge_key(*vn, j, "samples", *vn_samples);
    merge_key(*vn, j, "cap", *vn_cap);
    DomainId dom = parse_domain(*vn_domain, vn_flags->dim);
    rkhs::MatrixTuple T = rkhs::load_tuple_json(read_file(*vn_tuple));
    rkhs::Poly f = rkhs::parse_poly(*vn_poly, dom.dim);
    rkhs::VnResult res =
        rkhs::vn_check(T, dom, f, *vn_samples, vn_flags->seed, *vn_cap);
    rkhs::Report r;
    r.campaign = "vn";
    r.pass = res.pass;
    r.metrics = {{"lhs", res.lhs},
                 {"rhs", res.rhs},
                 {"hyp_min_eig", res.hyp_min_eig},
                 {"samples", static_cast<double>(*vn_samples)},
                 {"cap", static_cast<double>(*vn_cap)}};
    r.config = {{"domain", dom.str()},
                {"tuple", *vn_tuple},
                {"poly", rkhs::print_poly(f)},
                {"seed", std::to_string(vn_flags->seed)}};
    r.version = rkhs::kVersion;
    exit_code = emit(r, vn_flags->format);
  });

  // ---- descend ----
  auto* des = app.add_subcommand("descend", "rewrite an invariant polynomial in target coordinates");
  auto des_map = std::make_shared<std::string>();
  auto des_poly = std::make_shared<std::string>();
  auto des_dim = std::make_shared<int>(2);
  des->add_option("--map", *des_map, "map tag")->required();
  des->add_option("--poly", *des_poly, "source-side polynomial")->required();
  des->add_option("--dim", *des_dim, "default dimension for tags without :d")
      ->capture_default_str();
  des->callback([&, des_map, des_poly, des_dim] {
    ProperMap m = parse_map(*des_map, *des_dim);
    rkhs::Poly p = rkhs::parse_poly(*des_poly, m.dim);
    std::cout << rkhs::print_poly(rkhs::descend(p, m), 'v') << "\n";
    exit_code = 0;
  });

  // ---- gamma ----
  auto* gam = app.add_subcommand("gamma", "weighted composition transform");
  auto gam_map = std::make_shared<std::string>();
  auto gam_poly = std::make_shared<std::string>();
  auto gam_dim = std::make_shared<int>(2);
  auto gam_inverse = std::make_shared<bool>(false);
  gam->add_option("--map", *gam_map, "map tag")->required();
  gam->add_option("--poly", *gam_poly, "polynomial (target side; source side with --inverse)")
      ->required();
  gam->add_option("--dim", *gam_dim, "default dimension for tags without :d")
      ->capture_default_str();
  gam->add_flag("--inverse", *gam_inverse, "apply the inverse transform");
  gam->callback([&, gam_map, gam_poly, gam_dim, gam_inverse] {
    ProperMap m = parse_map(*gam_map, *gam_dim);
    if (*gam_inverse) {
      rkhs::Poly g = rkhs::parse_poly(*gam_poly, m.dim);
      std::cout << rkhs::print_poly(rkhs::gamma_phi_inverse(g, m), 'v') << "\n";
    } else {
      rkhs::Poly f = rkhs::parse_poly(*gam_poly, m.target().dim);
      std::cout << rkhs::print_poly(rkhs::gamma_phi(f, m), 'z') << "\n";
    }
    exit_code = 0;
  });

  // ---- norm ----
  auto* nrm = app.add_subcommand("norm", "squared Hilbert-space norms");
  auto nrm_flags = std::make_shared<CommonFlags>();
  auto nrm_space = std::make_shared<std::string>();
  auto nrm_map = std::make_shared<std::string>();
  auto nrm_poly = std::make_shared<std::string>();
  auto nrm_t1 = std::make_shared<double>(0.0);
  auto nrm_t2 = std::make_shared<double>(0.0);
  nrm->add_option("--space", *nrm_space, "coefficient norm in this space");
  nrm->add_option("--map", *nrm_map, "pulled-back quotient norm through this map");
  nrm->add_option("--poly", *nrm_poly, "polynomial")->required();
  nrm->add_option("--torus-t1", *nrm_t1, "torus quadrature radius t1");
  nrm->add_option("--torus-t2", *nrm_t2, "torus quadrature radius t2");
  add_common(nrm, *nrm_flags, false, false);
  nrm->callback([&, nrm_flags, nrm_space, nrm_map, nrm_poly, nrm_t1, nrm_t2] {
    nlohmann::json j = load_config(nrm_flags->config_path);
    merge_common(*nrm, j, *nrm_flags, false, false);
    merge_key(*nrm, j, "space", *nrm_space);
    merge_key(*nrm, j, "map", *nrm_map);
    merge_key(*nrm, j, "poly", *nrm_poly);
    rkhs::Report r;
    r.campaign = "norm";
    r.pass = true;
    r.version = rkhs::kVersion;
    bool torus = nrm->get_option("--torus-t1")->count() > 0 ||
                 nrm->get_option("--torus-t2")->count() > 0;
    if (torus) {
      rkhs::Poly f = rkhs::parse_poly(*nrm_poly, 2);
      double v = rkhs::hartogs_torus_norm_sq(f, *nrm_t1, *nrm_t2);
      r.metrics = {{"value", v}};
      r.config = {{"method", "quadrature"},
                  {"poly", rkhs::print_poly(f, 'v')},
                  {"t1", std::to_string(*nrm_t1)},
                  {"t2", std::to_string(*nrm_t2)}};
    } else if (!nrm_map->empty()) {
      ProperMap m = parse_map(*nrm_map, nrm_flags->dim);
      rkhs::SpaceId base = rkhs::base_space(m);
      rkhs::Poly f = rkhs::parse_poly(*nrm_poly, m.target().dim);
      r.metrics = {{"value", rkhs::phi_norm_sq(m, base, f)}};
      r.config = {{"method", "coefficient"},
                  {"map", m.str()},
                  {"space", base.str()},
                  {"poly", rkhs::print_poly(f, 'v')}};
    } else if (!nrm_space->empty()) {
      SpaceId s = parse_space(*nrm_space, nrm_flags->dim);
      rkhs::Poly p = rkhs::parse_poly(*nrm_poly, s.dim);
      r.metrics = {{"value", rkhs::poly_norm_sq(s, p)}};
      r.config = {{"method", "coefficient"},
                  {"space", s.str()},
                  {"poly", rkhs::print_poly(p)}};
    } else {
      throw CLI::RequiredError("--space, --map, or --torus-t1/--torus-t2");
    }
    exit_code = emit(r, nrm_flags->format);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const rkhs::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rkhs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return exit_code;
}
