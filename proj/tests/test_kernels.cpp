#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "rkhs/kernels.hpp"

using rkhs::Cplx;
using rkhs::DomainId;
using rkhs::KernelId;
using rkhs::Point;
using rkhs::ProperMap;

namespace {

Point pt(std::initializer_list<double> xs) {
  Point z;
  for (double x : xs) z.emplace_back(x, 0.0);
  return z;
}

// series guards replicated from the evaluator so tests can pre-filter pairs
bool tetra_guarded(const Point& v, const Point& u, double bfrac) {
  Cplx a = 1.0 - v[0] * std::conj(u[0]) - v[1] * std::conj(u[1]) +
           v[2] * std::conj(u[2]);
  Cplx b2 = 4.0 * (v[0] * v[1] - v[2]) *
            std::conj(u[0] * u[1] - u[2]);
  if (!(a.real() > 0.0)) return false;
  Cplx d = a * a - b2;
  if (!(d.real() > 0.0)) return false;
  return std::sqrt(std::abs(b2)) <= bfrac * std::abs(a);
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("identifiers and domains") {
    CHECK(KernelId::hardy_polydisc(2).str() == "hardy_polydisc:2");
    CHECK(KernelId::tetra_series(60).str() == "tetra_series:60");
    CHECK(KernelId::egg_closed().str() == "egg_closed:2");
    CHECK(KernelId::cartan_ii_kernel().str() == "cartan_ii_kernel");
    CHECK(KernelId::g2_closed().str() == "g2_closed");
    CHECK(KernelId::hardy_polydisc(2).is_base());
    CHECK_FALSE(KernelId::g2_closed().is_base());

    CHECK(rkhs::kernel_domain(KernelId::hardy_polydisc(2)) == DomainId::polydisc(2));
    CHECK(rkhs::kernel_domain(KernelId::hardy_triangle(3)) ==
          DomainId::hartogs_triangle(3));
    CHECK(rkhs::kernel_domain(KernelId::szego_ball(2)) == DomainId::ball(2));
    CHECK(rkhs::kernel_domain(KernelId::cartan_ii_kernel()) == DomainId::cartan_ii());
    CHECK(rkhs::kernel_domain(KernelId::segal_bargmann(2)) == DomainId::whole_space(2));
    CHECK(rkhs::kernel_domain(KernelId::g2_closed()) == DomainId::sym_bidisc());
    CHECK(rkhs::kernel_domain(KernelId::tetra_series(60)) == DomainId::omega_tetra());
    CHECK(rkhs::kernel_domain(KernelId::fat_hartogs_closed(2)) ==
          DomainId::fat_hartogs(2));
    CHECK(rkhs::kernel_domain(KernelId::egg_closed()) == DomainId::egg(2));
    CHECK(rkhs::kernel_domain(KernelId::segal_pushforward_closed(2)) ==
          DomainId::whole_space(2));

    CHECK_THROWS_AS(KernelId::tetra_series(0), rkhs::DomainError);
    CHECK_THROWS_AS(KernelId::hardy_polydisc(0), rkhs::ShapeError);
  }

  TEST_CASE("base kernel values") {
    CHECK(rkhs::eval_base(KernelId::hardy_polydisc(2), pt({0, 0}), pt({0, 0})) ==
          Cplx(1.0, 0.0));
    CHECK(rkhs::eval_base(KernelId::hardy_polydisc(2), pt({0.5, 0.5}),
                          pt({0.5, 0.5}))
              .real() == doctest::Approx(16.0 / 9.0).epsilon(1e-14));

    // 1/((1 - s2)(s2 - s1)) at s = (0, 1/2)
    Point ht{Cplx(0.0, 0.0), Cplx(std::sqrt(0.5), 0.0)};
    CHECK(rkhs::eval_base(KernelId::hardy_triangle(2), ht, ht).real() ==
          doctest::Approx(4.0).epsilon(1e-14));

    Point h3 = pt({0.1, 0.5, 0.8});
    double oracle3 = 1.0 / ((1.0 - 0.64) * (0.25 - 0.01) * (0.64 - 0.25));
    CHECK(rkhs::eval_base(KernelId::hardy_triangle(3), h3, h3).real() ==
          doctest::Approx(oracle3).epsilon(1e-12));

    Point b = pt({0.6, 0.0});
    CHECK(rkhs::eval_base(KernelId::szego_ball(2), b, b).real() ==
          doctest::Approx(1.0 / (0.64 * 0.64)).epsilon(1e-14));
    // integer power, so no branch issues for complex arguments
    Point bc{Cplx(0.3, 0.4), Cplx(-0.2, 0.5)};
    Cplx q = 1.0 - (bc[0] * std::conj(bc[0]) + bc[1] * std::conj(bc[1]));
    Cplx expect = 1.0 / (q * q);
    CHECK(std::abs(rkhs::eval_base(KernelId::szego_ball(2), bc, bc) - expect) <=
          1e-14 * std::abs(expect));

    CHECK(rkhs::eval_base(KernelId::segal_bargmann(2), pt({0, 0}), pt({0, 0})) ==
          Cplx(1.0, 0.0));
    CHECK(rkhs::eval_base(KernelId::segal_bargmann(2), pt({1, 2}), pt({1, 2}))
              .real() == doctest::Approx(std::exp(5.0)).epsilon(1e-14));

    CHECK(rkhs::eval_base(KernelId::cartan_ii_kernel(), pt({0, 0, 0}),
                          pt({0, 0, 0})) == Cplx(1.0, 0.0));
    Point c = pt({0.3, 0.5, 0.0});
    double det = 1.0 - 0.09 - 0.25 + 0.15 * 0.15;
    CHECK(rkhs::eval_base(KernelId::cartan_ii_kernel(), c, c).real() ==
          doctest::Approx(std::pow(det, -1.5)).epsilon(1e-13));
  }

  TEST_CASE("base kernel guards") {
    CHECK_THROWS_AS(
        rkhs::eval_base(KernelId::hardy_polydisc(2), pt({1, 0}), pt({1, 0})),
        rkhs::SingularError);
    CHECK_THROWS_AS(
        rkhs::eval_base(KernelId::hardy_triangle(2), pt({0.5, 0.5}), pt({0.5, 0.5})),
        rkhs::SingularError);
    CHECK_THROWS_AS(
        rkhs::eval_base(KernelId::g2_closed(), pt({0, 0}), pt({0, 0})),
        rkhs::DomainError);
    CHECK_THROWS_AS(
        rkhs::eval_base(KernelId::hardy_polydisc(2), pt({0, 0, 0}), pt({0, 0, 0})),
        rkhs::ShapeError);

    // determinant argument pushed out of the right half plane
    Cplx c = 0.995 * std::polar(1.0, 0.39269908169872414);  // pi/8
    Point z{c, c, Cplx(0.0, 0.0)};
    Point w{std::conj(c), std::conj(c), Cplx(0.0, 0.0)};
    CHECK_THROWS_AS(rkhs::eval_base(KernelId::cartan_ii_kernel(), z, w),
                    rkhs::BranchError);
  }

  TEST_CASE("signed halves") {
    auto k = KernelId::hardy_polydisc(2);
    auto m = ProperMap::sym2();
    Point z = pt({0.2, 0.3});
    double oracle =
        0.5 * (1.0 / ((1.0 - 0.04) * (1.0 - 0.09)) - 1.0 / (0.94 * 0.94));
    CHECK(rkhs::eval_signed(k, m, rkhs::SignedPart::minus, z, z).real() ==
          doctest::Approx(oracle).epsilon(1e-14));

    // the two halves add back to the kernel
    rkhs::Rng rng(31);
    for (int i = 0; i < 100; ++i) {
      auto sub = rng.substream(i);
      Point a = rkhs::sample_one(DomainId::polydisc(2), sub, 0.05);
      Point b2 = rkhs::sample_one(DomainId::polydisc(2), sub, 0.05);
      Cplx plus = rkhs::eval_signed(k, m, rkhs::SignedPart::plus, a, b2);
      Cplx minus = rkhs::eval_signed(k, m, rkhs::SignedPart::minus, a, b2);
      Cplx full = rkhs::eval_base(k, a, b2);
      CHECK(std::abs(plus + minus - full) <= 1e-14 * (1.0 + std::abs(full)));
    }

    // the odd half vanishes identically on the fixed locus of the involution
    Point fixed = pt({0.4, 0.4});
    CHECK(rkhs::eval_signed(k, m, rkhs::SignedPart::minus, fixed, z) ==
          Cplx(0.0, 0.0));
  }

  TEST_CASE("pushforward values") {
    // fiber of (0.5, 0.06) under sym2 is {0.3, 0.2}; J = +/-0.1
    Point v = pt({0.5, 0.06});
    double minus_zz =
        0.5 * (1.0 / (0.91 * 0.96) - 1.0 / (0.94 * 0.94));
    double oracle = minus_zz / 0.01;
    CHECK(rkhs::eval_pushforward(KernelId::hardy_polydisc(2), ProperMap::sym2(),
                                 v, v)
              .real() == doctest::Approx(oracle).epsilon(1e-11));

    // fiber of (0.3, 0.16) under egg squaring is (0.3, +/-0.4); J = +/-0.8
    Point e = pt({0.3, 0.16});
    double egg_oracle =
        0.5 * (1.0 / (0.75 * 0.75) - 1.0 / (1.07 * 1.07)) / 0.64;
    CHECK(rkhs::eval_pushforward(KernelId::szego_ball(2), ProperMap::egg(2), e, e)
              .real() == doctest::Approx(egg_oracle).epsilon(1e-11));

    // collapsed fiber: the Jacobian guard fires
    CHECK_THROWS_AS(rkhs::eval_pushforward(KernelId::hardy_polydisc(2),
                                           ProperMap::sym2(), pt({1.0, 0.25}),
                                           pt({0.5, 0.06})),
                    rkhs::NearSingularError);
  }

  TEST_CASE("pushforward is independent of the lift") {
    rkhs::Rng rng(77);
    auto k = KernelId::hardy_polydisc(2);
    auto m = ProperMap::sym2();
    for (int i = 0; i < 60; ++i) {
      auto sub = rng.substream(i);
      Point v = rkhs::sample_one(DomainId::sym_bidisc(), sub, 0.05);
      Point u = rkhs::sample_one(DomainId::sym_bidisc(), sub, 0.05);
      auto fv = rkhs::preimages(m, v);
      auto fu = rkhs::preimages(m, u);
      if (fv.size() < 2 || fu.size() < 2) continue;
      Cplx jz0 = rkhs::jacobian(m, fv[0]);
      Cplx jz1 = rkhs::jacobian(m, fv[1]);
      Cplx jw0 = rkhs::jacobian(m, fu[0]);
      Cplx jw1 = rkhs::jacobian(m, fu[1]);
      double j = std::min(std::min(std::abs(jz0), std::abs(jz1)),
                          std::min(std::abs(jw0), std::abs(jw1)));
      if (j < 1e-3) continue;
      Cplx vals[4];
      const Point* zs[2] = {&fv[0], &fv[1]};
      const Point* ws[2] = {&fu[0], &fu[1]};
      Cplx jzs[2] = {jz0, jz1};
      Cplx jws[2] = {jw0, jw1};
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          Cplx minus = rkhs::eval_signed(k, m, rkhs::SignedPart::minus, *zs[a], *ws[b]);
          vals[a * 2 + b] = minus / (jzs[a] * std::conj(jws[b]));
        }
      }
      Cplx lib = rkhs::eval_pushforward(k, m, v, u);
      double scale = 1.0 + std::abs(lib);
      for (int t = 0; t < 4; ++t) CHECK(std::abs(vals[t] - lib) <= 1e-11 * scale);
    }
  }

  TEST_CASE("closed forms at reference points") {
    CHECK(rkhs::eval_closed(KernelId::g2_closed(), pt({0, 0}), pt({0, 0})) ==
          Cplx(0.5, 0.0));
    Point g = pt({0.4, 0.1});
    Cplx s2 = g[1] * std::conj(g[1]);
    Cplx den = (1.0 - s2) * (1.0 - s2) -
               (g[0] - g[1] * std::conj(g[0])) * (std::conj(g[0]) - g[0] * std::conj(g[1]));
    CHECK(std::abs(rkhs::eval_closed(KernelId::g2_closed(), g, g) - 0.5 / den) <=
          1e-14);

    Point fh = pt({0.0, 0.5});
    CHECK(rkhs::eval_closed(KernelId::fat_hartogs_closed(2), fh, fh).real() ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    Point fh3 = pt({0.1, 0.3, 0.5});
    double s1 = 0.01, sm = 0.09, sd = 0.25;
    double fh3_oracle =
        0.25 * (1.0 / (sm - s1)) * (1.0 + sm) / ((sd - sm * sm) * (1.0 - sd));
    CHECK(rkhs::eval_closed(KernelId::fat_hartogs_closed(3), fh3, fh3).real() ==
          doctest::Approx(fh3_oracle).epsilon(1e-13));

    Point eg = pt({0.3, 0.16});
    double t1 = 0.91;
    double egg_oracle = 0.5 * t1 / std::pow(t1 * t1 - 0.0256, 2.0);
    CHECK(rkhs::eval_closed(KernelId::egg_closed(), eg, eg).real() ==
          doctest::Approx(egg_oracle).epsilon(1e-13));

    // quarter of exp(<z', w'>) sinh(sqrt t)/sqrt t with t the last pairing
    Point sg = pt({0.0, 1.0});
    CHECK(rkhs::eval_closed(KernelId::segal_pushforward_closed(2), sg, sg).real() ==
          doctest::Approx(std::sinh(1.0) / 4.0).epsilon(1e-14));
    CHECK(rkhs::eval_closed(KernelId::segal_pushforward_closed(2), sg, sg).real() ==
          doctest::Approx(0.29380029841095034).epsilon(1e-15));
    Point sg2 = pt({0.3, 0.5});
    double sg2_oracle = 0.25 * std::exp(0.09) * std::sinh(0.5) / 0.5;
    CHECK(rkhs::eval_closed(KernelId::segal_pushforward_closed(2), sg2, sg2).real() ==
          doctest::Approx(sg2_oracle).epsilon(1e-13));

    CHECK(rkhs::eval_closed(KernelId::tetra_series(1), pt({0, 0, 0}),
                            pt({0, 0, 0})) == Cplx(1.5, 0.0));

    CHECK_THROWS_AS(
        rkhs::eval_closed(KernelId::hardy_polydisc(2), pt({0, 0}), pt({0, 0})),
        rkhs::DomainError);
  }

  TEST_CASE("closed forms match pushforwards") {
    struct Row {
      KernelId base;
      ProperMap map;
      KernelId closed;
    };
    const Row rows[] = {
        {KernelId::hardy_polydisc(2), ProperMap::sym2(), KernelId::g2_closed()},
        {KernelId::hardy_triangle(2), ProperMap::hartogs(2),
         KernelId::fat_hartogs_closed(2)},
        {KernelId::hardy_triangle(3), ProperMap::hartogs(3),
         KernelId::fat_hartogs_closed(3)},
        {KernelId::szego_ball(2), ProperMap::egg(2), KernelId::egg_closed()},
        {KernelId::segal_bargmann(2), ProperMap::segal(2),
         KernelId::segal_pushforward_closed(2)},
    };
    rkhs::Rng rng(13);
    for (const auto& row : rows) {
      CAPTURE(row.closed.str());
      int done = 0;
      for (int i = 0; done < 40 && i < 400; ++i) {
        auto sub = rng.substream(i);
        Point v = rkhs::sample_one(row.map.target(), sub, 0.05);
        Point u = rkhs::sample_one(row.map.target(), sub, 0.05);
        Cplx push;
        try {
          push = rkhs::eval_pushforward(row.base, row.map, v, u);
        } catch (const rkhs::Error&) {
          continue;
        }
        Cplx closed = rkhs::eval_closed(row.closed, v, u);
        CHECK(std::abs(push - closed) <= 1e-10 * (1.0 + std::abs(closed)));
        ++done;
      }
      CHECK(done == 40);
    }
  }

  TEST_CASE("series truncation contracts") {
    auto sv = rkhs::eval_tetra_series(pt({0, 0, 0}), pt({0, 0, 0}), 1);
    CHECK(sv.value == Cplx(1.5, 0.0));
    CHECK(sv.tail == 0.0);
    CHECK_THROWS_AS(rkhs::eval_tetra_series(pt({0, 0, 0}), pt({0, 0, 0}), 0),
                    rkhs::DomainError);

    rkhs::Rng rng(57);
    int done = 0;
    for (int i = 0; done < 50 && i < 600; ++i) {
      auto sub = rng.substream(i);
      Point v = rkhs::sample_one(DomainId::omega_tetra(), sub, 0.05);
      Point u = rkhs::sample_one(DomainId::omega_tetra(), sub, 0.05);
      if (!tetra_guarded(v, u, 0.8)) continue;
      auto lo = rkhs::eval_tetra_series(v, u, 40);
      auto hi = rkhs::eval_tetra_series(v, u, 50);
      // the dropped remainder stays inside the reported geometric bound
      CHECK(std::abs(lo.value - hi.value) <= lo.tail + 1e-18);
      CHECK(hi.tail <= lo.tail + 1e-18);
      // the series doubles the pushforward kernel
      Cplx push = rkhs::eval_pushforward(KernelId::cartan_ii_kernel(),
                                         ProperMap::tetra(), v, u);
      auto full = rkhs::eval_tetra_series(v, u, 60);
      CHECK(std::abs(2.0 * push - full.value) <=
            1e-10 * (1.0 + std::abs(full.value)) + full.tail);
      ++done;
    }
    CHECK(done == 50);
  }

  TEST_CASE("series guards") {
    // |B| far above the convergence fraction of |A|
    CHECK_THROWS_AS(
        rkhs::eval_tetra_series(pt({0.8, 0.8, 0.0}), pt({0.8, 0.8, 0.0}), 40),
        rkhs::ConvergenceError);
    // B = 0 but Re A < 0
    Cplx c = 0.995 * std::polar(1.0, 0.39269908169872414);
    Point z{c, c, c * c};
    Point w{std::conj(c), std::conj(c), std::conj(c) * std::conj(c)};
    CHECK_THROWS_AS(rkhs::eval_tetra_series(z, w, 40), rkhs::BranchError);
  }

  TEST_CASE("hermitian symmetry across the catalogue") {
    const KernelId ks[] = {
        KernelId::hardy_polydisc(2),  KernelId::hardy_polydisc(3),
        KernelId::hardy_triangle(2),  KernelId::hardy_triangle(3),
        KernelId::szego_ball(2),      KernelId::szego_ball(3),
        KernelId::cartan_ii_kernel(), KernelId::segal_bargmann(2),
        KernelId::g2_closed(),        KernelId::tetra_series(40),
        KernelId::fat_hartogs_closed(2), KernelId::egg_closed(),
        KernelId::segal_pushforward_closed(2),
    };
    rkhs::Rng rng(91);
    for (const auto& k : ks) {
      CAPTURE(k.str());
      auto dom = rkhs::kernel_domain(k);
      int done = 0;
      for (int i = 0; done < 50 && i < 600; ++i) {
        auto sub = rng.substream(i);
        Point z = rkhs::sample_one(dom, sub, 0.1);
        Point w = rkhs::sample_one(dom, sub, 0.1);
        Cplx a, b;
        try {
          a = k.is_base() ? rkhs::eval_base(k, z, w) : rkhs::eval_closed(k, z, w);
          b = k.is_base() ? rkhs::eval_base(k, w, z) : rkhs::eval_closed(k, w, z);
        } catch (const rkhs::Error&) {
          continue;
        }
        CHECK(std::abs(a - std::conj(b)) <= 1e-12 * (1.0 + std::abs(a)));
        ++done;
      }
      CHECK(done == 50);
    }
  }

  TEST_CASE("gram construction") {
    auto dom = DomainId::polydisc(2);
    auto pts = rkhs::sample(dom, {8, 5, 0.1});
    auto k = KernelId::hardy_polydisc(2);
    rkhs::KernelFn fn = [&](const Point& z, const Point& w) {
      return rkhs::eval_base(k, z, w);
    };
    auto g = rkhs::build_gram(fn, pts);
    CHECK(g.size() == 8);
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        CHECK(g.at(i, j) == std::conj(g.at(j, i)));
      }
    }
    CHECK(rkhs::psd_verdict(g, 1e-10).psd);
    CHECK_THROWS_AS(rkhs::build_gram(fn, {}), rkhs::ShapeError);
  }
}
