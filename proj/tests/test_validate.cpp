#include <doctest.h>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "rkhs/validate.hpp"

using rkhs::CampaignConfig;
using rkhs::Cplx;
using rkhs::DomainId;
using rkhs::KernelId;
using rkhs::Point;
using rkhs::ProperMap;
using rkhs::Report;

TEST_SUITE("validate") {
  TEST_CASE("report serialization") {
    CampaignConfig cfg;
    cfg.n_points = 16;
    Report r = rkhs::run_psd(KernelId::hardy_polydisc(2), cfg);
    CHECK(r.pass);
    CHECK(r.version == "0.1.0");
    CHECK(r.campaign == "psd");

    auto j = nlohmann::json::parse(r.to_json());
    CHECK(j.at("campaign").get<std::string>() == "psd");
    CHECK(j.at("pass").get<bool>());
    CHECK(j.at("version").get<std::string>() == "0.1.0");
    CHECK(j.at("metrics").at("min_eig").get<double>() == r.metrics.at("min_eig"));
    CHECK(j.at("config").at("kernel").get<std::string>() == "hardy_polydisc:2");

    std::string csv = r.to_csv();
    auto nl = csv.find('\n');
    REQUIRE(nl != std::string::npos);
    std::string header = csv.substr(0, nl);
    std::string row = csv.substr(nl + 1);
    CHECK(std::count(header.begin(), header.end(), ',') ==
          std::count(row.begin(), row.end(), ','));
    CHECK(header.substr(0, 8) == "campaign");
  }

  TEST_CASE("campaigns are deterministic") {
    CampaignConfig cfg;
    cfg.n_points = 16;
    cfg.seed = 99;
    CHECK(rkhs::run_psd(KernelId::g2_closed(), cfg).to_json() ==
          rkhs::run_psd(KernelId::g2_closed(), cfg).to_json());
    CampaignConfig icfg;
    icfg.n_pairs = 50;
    CHECK(rkhs::run_identity(ProperMap::sym2(), KernelId::hardy_polydisc(2),
                             KernelId::g2_closed(), icfg)
              .to_json() ==
          rkhs::run_identity(ProperMap::sym2(), KernelId::hardy_polydisc(2),
                             KernelId::g2_closed(), icfg)
              .to_json());
  }

  TEST_CASE("config validation") {
    CampaignConfig bad;
    bad.n_points = 0;
    CHECK_THROWS_AS(rkhs::run_psd(KernelId::hardy_polydisc(2), bad),
                    rkhs::DomainError);
    bad.n_points = 300;
    CHECK_THROWS_AS(rkhs::run_psd(KernelId::hardy_polydisc(2), bad),
                    rkhs::DomainError);
    CampaignConfig neg;
    neg.tol = 0.0;
    CHECK_THROWS_AS(rkhs::run_psd(KernelId::hardy_polydisc(2), neg),
                    rkhs::DomainError);
    CampaignConfig pairs;
    pairs.n_pairs = 0;
    CHECK_THROWS_AS(rkhs::run_identity(ProperMap::sym2(),
                                       KernelId::hardy_polydisc(2),
                                       KernelId::g2_closed(), pairs),
                    rkhs::DomainError);
  }

  TEST_CASE("positivity campaign catches a corrupted kernel") {
    CampaignConfig cfg;
    cfg.n_points = 16;
    cfg.margin = 0.1;
    auto dom = DomainId::polydisc(2);
    // the campaign accepts greedily from substreams, so with no guard skips it
    // sees exactly the config-sampled points
    auto pts = rkhs::sample(dom, {cfg.n_points, cfg.seed, cfg.margin});
    const Point bad_z = pts[3];
    const Point bad_w = pts[7];
    auto k = KernelId::hardy_polydisc(2);
    rkhs::KernelFn corrupted = [&, bad_z, bad_w](const Point& z, const Point& w) {
      Cplx v = rkhs::eval_base(k, z, w);
      if ((z == bad_z && w == bad_w) || (z == bad_w && w == bad_z)) v -= 0.5;
      return v;
    };
    Report r = rkhs::run_psd(corrupted, "corrupted", dom, cfg);
    CHECK_FALSE(r.pass);
    CHECK(r.metrics.at("min_eig") < -1e-3);

    rkhs::KernelFn clean = [&](const Point& z, const Point& w) {
      return rkhs::eval_base(k, z, w);
    };
    CHECK(rkhs::run_psd(clean, "clean", dom, cfg).pass);
  }

  TEST_CASE("identity campaign residual scales with a planted error") {
    CampaignConfig cfg;
    cfg.n_pairs = 100;
    auto base = KernelId::hardy_polydisc(2);
    auto closed = KernelId::g2_closed();
    auto perturbed = [&](double eps) {
      rkhs::KernelFn fn = [closed, eps](const Point& v, const Point& u) {
        return rkhs::eval_closed(closed, v, u) + eps;
      };
      return rkhs::run_identity(ProperMap::sym2(), base, fn, "perturbed", cfg)
          .metrics.at("max_residual");
    };
    double clean = rkhs::run_identity(ProperMap::sym2(), base, closed, cfg)
                       .metrics.at("max_residual");
    double r6 = perturbed(1e-6);
    double r4 = perturbed(1e-4);
    CHECK(clean <= 1e-12);
    CHECK(r6 > 1e-9);
    // residuals are normalized by 1/(1+|closed|) and |J|^2, so the planted
    // offset shows up linearly
    CHECK(r4 / r6 == doctest::Approx(100.0).epsilon(0.01));
  }

  TEST_CASE("series campaign aligns at one half") {
    CampaignConfig cfg;
    cfg.n_pairs = 60;
    cfg.margin = 0.1;
    Report r = rkhs::run_series_compare(cfg);
    CHECK(r.pass);
    CHECK(r.metrics.at("alignment") == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(r.metrics.at("max_deviation") <= cfg.tol);
    CHECK(r.metrics.at("pairs_tested") >= 40.0);
  }

  TEST_CASE("degenerate campaigns abort") {
    CampaignConfig cfg;
    cfg.n_points = 32;
    // reject ~30% of points deterministically: enough to finish sampling but
    // far beyond the 20% skip budget
    rkhs::KernelFn flaky = [](const Point& z, const Point& w) {
      if (std::sin(1e3 * z[0].real()) > 0.4) {
        throw rkhs::SingularError("synthetic rejection");
      }
      return rkhs::eval_base(KernelId::hardy_polydisc(2), z, w);
    };
    CHECK_THROWS_AS(rkhs::run_psd(flaky, "flaky", DomainId::polydisc(2), cfg),
                    rkhs::CampaignDegenerate);
  }

  TEST_CASE("isometry audit") {
    Report s = rkhs::run_isometry(ProperMap::sym2(), rkhs::SpaceId::h2_polydisc(2), 6);
    CHECK(s.pass);
    CHECK(s.metrics.at("one_norm_sq") == 2.0);
    CHECK(s.metrics.at("max_anti_residual") == 0.0);
    CHECK(s.metrics.at("max_diag_gap") == 0.0);
    CHECK(s.metrics.at("min_eig") > 0.0);

    Report h = rkhs::run_isometry(ProperMap::hartogs(2), rkhs::SpaceId::h2_triangle(2), 4);
    CHECK(h.pass);
    CHECK(h.metrics.at("one_norm_sq") == 4.0);

    Report e = rkhs::run_isometry(ProperMap::egg(2), rkhs::SpaceId::h2_ball(2), 4);
    CHECK(e.pass);
    CHECK(e.metrics.at("one_norm_sq") == 2.0);

    CHECK_THROWS_AS(
        rkhs::run_isometry(ProperMap::sym2(), rkhs::SpaceId::h2_ball(2), 4),
        rkhs::UnsupportedSpace);
  }

  TEST_CASE("gamma images of distinct monomials are orthogonal") {
    // <Gamma 1, Gamma v1> over the bidisc coefficient pairing
    auto g0 = rkhs::gamma_phi(rkhs::Poly::constant(2, Cplx(1.0, 0.0)),
                              ProperMap::sym2());
    auto g1 = rkhs::gamma_phi(rkhs::Poly::monomial(2, {1, 0}), ProperMap::sym2());
    CHECK(rkhs::space_pairing(rkhs::SpaceId::h2_polydisc(2), g0, g1) ==
          Cplx(0.0, 0.0));
  }

  TEST_CASE("reproducing audit terminates at a small truncation") {
    CampaignConfig cfg;
    cfg.n_points = 20;
    Report r = rkhs::run_reproducing(ProperMap::sym2(), cfg);
    CHECK(r.pass);
    CHECK(r.metrics.at("max_deviation") <= cfg.tol);
    CHECK(r.metrics.at("truncation_achieved") <= 64.0);
    CHECK_THROWS_AS(rkhs::run_reproducing(ProperMap::tetra(), cfg),
                    rkhs::UnsupportedSpace);
  }

  TEST_CASE("quarter closed form") {
    auto fn = rkhs::quarter_polydisc_fn(2);
    Point zero = {Cplx(0.0, 0.0), Cplx(0.0, 0.0)};
    CHECK(fn(zero, zero) == Cplx(0.25, 0.0));
    rkhs::Rng rng(3);
    for (int i = 0; i < 50; ++i) {
      auto sub = rng.substream(i);
      Point v = rkhs::sample_one(DomainId::polydisc(2), sub, 0.05);
      Point u = rkhs::sample_one(DomainId::polydisc(2), sub, 0.05);
      Cplx quarter =
          0.25 * rkhs::eval_base(KernelId::hardy_polydisc(2), v, u);
      CHECK(std::abs(fn(v, u) - quarter) <= 1e-15 * (1.0 + std::abs(quarter)));
      Cplx push = rkhs::eval_pushforward(KernelId::hardy_polydisc(2),
                                         ProperMap::square_bidisc(), v, u);
      CHECK(std::abs(push - quarter) <= 1e-12 * (1.0 + std::abs(quarter)));
    }
  }

  TEST_CASE("pushforward positivity campaign carries its map tag") {
    CampaignConfig cfg;
    cfg.n_points = 12;
    cfg.margin = 0.1;
    Report r = rkhs::run_psd_pushforward(KernelId::hardy_polydisc(2),
                                         ProperMap::sym2(), cfg);
    CHECK(r.pass);
    CHECK(r.config.at("map") == "sym2");
    Report t = rkhs::run_psd_pushforward(KernelId::cartan_ii_kernel(),
                                         ProperMap::tetra(), cfg);
    CHECK(t.pass);
    CHECK(t.metrics.at("min_eig") > 0.0);
  }
}
