#include <doctest.h>

#include "gen.hpp"
#include "sweeplab/kakeya.hpp"
#include "sweeplab/sweep_audit.hpp"

using namespace sweeplab;
using testgen::Draw;

namespace {

Rational rat(long n, long d = 1) { return Rational(n) / d; }

Chain desk_chain(std::vector<long long> ns, std::uint64_t seed) {
  DeskOverrides ov;
  ov.n = std::move(ns);
  auto plan = plan_schedule(static_cast<int>(ov.n.size()), PlanMode::desk, ov, 1 << 20);
  return build_chain(std::get<RefinePlan>(plan), seed, 1);
}

}  // namespace

TEST_CASE("sweep_area: unit square under a constant staircase") {
  RectUnion sq({Rect(rat(0), rat(1), rat(0), rat(1))});
  CHECK(sweep_area(sq, Staircase::constant(rat(0))) == 2);
}

TEST_CASE("sweep_area: degenerate set sweeps exactly the segment strips") {
  RectUnion seg({Rect(rat(2), rat(2), rat(0), rat(5, 8))});
  Draw d{rng_key(31, 1)};
  for (int trial = 0; trial < 20; ++trial) {
    Staircase h = testgen::random_staircase(d, 6);
    CHECK(sweep_area(seg, h) == rat(5, 8));
  }
}

TEST_CASE("cs_lower_bound: single translate is tight") {
  CHECK(cs_lower_bound(ColumnSet::unit_square(), Staircase::constant(rat(0))) == 1);
}

TEST_CASE("cs_lower_bound: disjoint translates give the translate mass") {
  Chain chain = desk_chain({4}, 2);
  const ColumnSet& a = chain.at(1);
  // Breaks placed so each sample point i/4 hits its own piece, with values
  // far enough apart that all pairwise overlaps vanish.
  std::vector<Rational> breaks{rat(0), rat(3, 8), rat(5, 8), rat(7, 8), rat(1)};
  std::vector<Rational> values{rat(0), rat(10), rat(20), rat(30)};
  Staircase h(breaks, values);
  Rational s = Rational(static_cast<long>(a.columns)) * a.area();
  CHECK(cs_lower_bound(a, h) == s);
}

TEST_CASE("cs bound <= union of translates <= sweep area") {
  Draw d{rng_key(31, 2)};
  for (int trial = 0; trial < 10; ++trial) {
    Chain chain = desk_chain({2 + static_cast<long long>(d.below(4)), 2 + static_cast<long long>(d.below(4))},
                             1000 + static_cast<std::uint64_t>(trial));
    const ColumnSet& a = chain.at(2);
    Staircase h = testgen::random_staircase(d, 8, 16, 16);
    CsEvaluator eval(a);
    Rational cs = eval.certificate(h);
    Rational uni = eval.union_area(h);
    Rational sweep = sweep_area(a.to_rect_union(), h);
    CHECK(cs <= uni);
    CHECK(uni <= sweep);
    CHECK(cs > 0);
  }
}

TEST_CASE("certificate: scaled-integer and generic rational paths agree") {
  Draw d{rng_key(31, 3)};
  Chain chain = desk_chain({8, 8}, 77);
  const ColumnSet& a = chain.at(2);
  CsEvaluator eval(a);
  for (int trial = 0; trial < 10; ++trial) {
    Staircase dyadic = testgen::random_staircase(d, 6, 64, 64);
    // A non-dyadic twin: same breaks, values scaled by 1/3.
    std::vector<Rational> thirds;
    for (const auto& v : dyadic.values()) thirds.push_back(v / 3);
    Staircase odd(dyadic.breaks(), thirds);
    // Evaluate the dyadic one via both paths by scaling values by 3 (still
    // exact): certificate(x) of values v/3 equals the generic path; compare
    // against a direct pairwise computation.
    for (const Staircase& h : {dyadic, odd}) {
      Rational direct_q = Rational(static_cast<long>(a.columns)) * a.area();
      RectUnion u = a.to_rect_union();
      long long n = a.columns;
      std::vector<Rational> y;
      for (long long i = 1; i <= n; ++i)
        y.push_back(h.value_at(Rational(static_cast<long>(i)) / static_cast<long>(n)));
      for (long long i = 1; i <= n; ++i)
        for (long long j = i + 1; j <= n; ++j) {
          Vector2 t{Rational(static_cast<long>(j - i)) / static_cast<long>(n),
                    y[static_cast<std::size_t>(j - 1)] - y[static_cast<std::size_t>(i - 1)]};
          direct_q += 2 * overlap_area(u, u, t);
        }
      Rational s = Rational(static_cast<long>(n)) * a.area();
      CHECK(eval.certificate(h) == s * s / direct_q);
    }
  }
}

TEST_CASE("ea_lower_bound: unit square and left-edge cases") {
  RectUnion sq({Rect(rat(0), rat(1), rat(0), rat(1))});
  CHECK(ea_lower_bound(sq) == 1);

  // No positive-width rectangle touches the left edge.
  RectUnion off({Rect(rat(0), rat(0), rat(0), rat(1)), Rect(rat(1), rat(2), rat(0), rat(1))});
  CHECK(ea_lower_bound(off) == 0);

  CHECK(ea_lower_bound(RectUnion{}) == 0);
}

TEST_CASE("ea_lower_bound: every staircase sweep dominates it") {
  Draw d{rng_key(31, 4)};
  for (int trial = 0; trial < 25; ++trial) {
    // Left-anchored union: force one rect to start at the global left edge.
    RectUnion u = testgen::random_union(d, 6);
    Rational left = u.rects()[0].x_lo;
    for (const auto& r : u.rects()) left = std::min(left, r.x_lo);
    std::vector<Rect> rects = u.rects();
    rects.emplace_back(left, left + 1, rat(0), rat(1, 2));
    RectUnion anchored(rects);
    Rational ea = ea_lower_bound(anchored);
    for (int probe = 0; probe < 4; ++probe) {
      Staircase h = testgen::random_staircase(d, 8);
      CHECK(sweep_area(anchored, h) >= ea);
    }
  }
}

TEST_CASE("fold_mod: identity, explicit value, inflation bound chain") {
  Staircase inside({rat(0), rat(1)}, {rat(1, 3)});
  CHECK(fold_mod(inside, rat(1, 2)) == inside);

  Staircase g({rat(0), rat(1)}, {rat(5, 2) * rat(1, 4)});  // value 5eps/2 at eps=1/4
  CHECK(fold_mod(g, rat(1, 4)).values()[0] == rat(1, 8));

  Draw d{rng_key(31, 5)};
  for (int trial = 0; trial < 10; ++trial) {
    Rational eps = Rational(1 + static_cast<long>(d.below(7))) / 8;
    long strips = 1 + static_cast<long>(d.below(4));
    // ymax * 64 is an integer, so the band [-N eps, N eps) has a clean grid.
    long ymax64 = static_cast<long>(mpz_get_si(BigInt(Rational(eps * strips * 64).get_num()).get_mpz_t()));
    std::vector<Rect> rects;
    for (int i = 0; i < 5; ++i) {
      Rational x1 = d.grid_rational(0, 32, 16);
      Rational x2 = x1 + d.grid_rational(1, 16, 16);
      long y1 = -ymax64 + static_cast<long>(d.below(static_cast<std::uint64_t>(2 * ymax64 - 1)));
      long y2 = y1 + 1 + static_cast<long>(d.below(static_cast<std::uint64_t>(ymax64 - 1 - y1)));
      rects.emplace_back(x1, x2, Rational(y1) / 64, Rational(y2) / 64);
    }
    RectUnion banded(rects);
    Staircase g2 = testgen::random_staircase(d, 6);
    Staircase h = fold_mod(g2, eps);
    Rational folded_area = area(phi_fold(minkowski_staircase(banded, g2), eps));
    CHECK(sweep_area(banded, h) <= (2 * strips + 1) * folded_area);
    CHECK(folded_area <= sweep_area(banded, g2));
  }
}

TEST_CASE("phi_fold: strip collapse and area monotonicity") {
  Rational eps = rat(1, 4);
  RectUnion e({Rect(rat(0), rat(1), rat(0), rat(1, 2))});  // [0, 2eps)
  RectUnion folded = phi_fold(e, eps);
  CHECK(area(folded) == rat(1, 4));
  CHECK(area(intersect(folded, RectUnion({Rect(rat(0), rat(1), rat(0), eps)}))) == rat(1, 4));

  RectUnion inside({Rect(rat(0), rat(1), rat(9, 8), rat(10, 8))});  // within one strip
  CHECK(area(phi_fold(inside, eps)) == area(inside));

  Draw d{rng_key(31, 6)};
  for (int trial = 0; trial < 50; ++trial) {
    RectUnion u = testgen::random_union(d, 6);
    Rational ee = Rational(1 + static_cast<long>(d.below(15))) / 8;
    CHECK(area(phi_fold(u, ee)) <= area(u));
  }
}

TEST_CASE("perturb_compose: identities, piece count, recovery") {
  Draw d{rng_key(31, 7)};
  for (int trial = 0; trial < 30; ++trial) {
    Staircase g = testgen::random_staircase(d, 6);
    Rational eps = rat(1, 4);
    // f with values in [0, eps].
    Staircase f0 = testgen::random_staircase(d, 6);
    std::vector<Rational> fv;
    for (const auto& v : f0.values()) fv.push_back(rat_mod(v, eps));
    Staircase f(f0.breaks(), fv);

    Staircase h = perturb_compose(g, f, eps);
    CHECK(h.pieces() <= g.pieces() + f.pieces() - 1);
    // h - g recovers f on the refinement, and 0 <= h - g <= eps.
    for (std::size_t i = 0; i < h.pieces(); ++i) {
      const Rational& x = h.breaks()[i];
      Rational diff = h.values()[i] - g.value_at(x);
      CHECK(diff == f.value_at(x));
      CHECK(diff >= 0);
      CHECK(diff <= eps);
    }

    CHECK(perturb_compose(g, Staircase::constant(rat(0)), eps) == g);
    Staircase zero = Staircase::constant(rat(0));
    CHECK(perturb_compose(zero, f, eps).values().size() == perturb_compose(zero, f, eps).pieces());
    Staircase hf = perturb_compose(zero, f, eps);
    for (std::size_t i = 0; i < hf.pieces(); ++i)
      CHECK(hf.values()[i] == f.value_at(hf.breaks()[i]));
  }
  CHECK_THROWS_AS(perturb_compose(Staircase::constant(rat(0)), Staircase::constant(rat(2)), rat(1)),
                  std::invalid_argument);
}

TEST_CASE("sweep_report and adversarial search basics") {
  Chain chain = desk_chain({6}, 13);
  const ColumnSet& a = chain.at(1);
  Staircase h = Staircase::constant(rat(0));
  SweepReport rep = sweep_report(a, h);
  CHECK(rep.lower_bound_cs <= rep.exact_area);
  CHECK(rep.lower_bound_ea <= rep.exact_area);

  AdversarialResult adv = adversarial_search(a, 40, 5);
  CHECK(adv.min_certificate > 0);
  CHECK(adv.evaluated >= 40);
  CHECK(CsEvaluator(a).certificate(adv.argmin) == adv.min_certificate);
}
