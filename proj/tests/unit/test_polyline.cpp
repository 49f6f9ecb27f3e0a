#include <doctest.h>

#include "gen.hpp"
#include "sweeplab/polyline.hpp"
#include "sweeplab/rng.hpp"

using namespace sweeplab;
using testgen::Draw;

namespace {

Rational rat(long n, long d = 1) { return Rational(n) / d; }

Polyline line(std::initializer_list<std::pair<long, long>> pts, long den = 1) {
  std::vector<std::pair<Rational, Rational>> v;
  for (auto [x, y] : pts) v.emplace_back(Rational(x) / den, Rational(y) / den);
  return Polyline(std::move(v));
}

// Monte Carlo oracle for parallelogram unions: exact membership test, seeded
// uniform sampling over the bounding box.
Rational pgram_mc(const std::vector<Pgram>& pgrams, std::int64_t samples, std::uint64_t seed,
                  Rational* half_width) {
  Rational xl, xh, yl, yh;
  bool first = true;
  for (const auto& g : pgrams) {
    for (int c = 0; c < 4; ++c) {
      Rational x = g.bx + (c & 1 ? g.e1x : Rational(0)) + (c & 2 ? g.e2x : Rational(0));
      Rational y = g.by + (c & 1 ? g.e1y : Rational(0)) + (c & 2 ? g.e2y : Rational(0));
      if (first) {
        xl = xh = x;
        yl = yh = y;
        first = false;
      } else {
        xl = std::min(xl, x);
        xh = std::max(xh, x);
        yl = std::min(yl, y);
        yh = std::max(yh, y);
      }
    }
  }
  if (first || xl == xh || yl == yh) {
    *half_width = 0;
    return Rational(0);
  }
  auto inside = [&](const Rational& px, const Rational& py) {
    for (const auto& g : pgrams) {
      Rational det = g.e1x * g.e2y - g.e1y * g.e2x;
      if (det == 0) continue;
      Rational ux = px - g.bx, uy = py - g.by;
      Rational s = (ux * g.e2y - uy * g.e2x) / det;
      Rational t = (uy * g.e1x - ux * g.e1y) / det;
      if (s >= 0 && s <= 1 && t >= 0 && t <= 1) return true;
    }
    return false;
  };
  std::uint64_t key = rng_key(seed, 0x9944);
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    Rational px = xl + (xh - xl) * rng_unit(key, static_cast<std::uint64_t>(2 * i));
    Rational py = yl + (yh - yl) * rng_unit(key, static_cast<std::uint64_t>(2 * i + 1));
    if (inside(px, py)) ++hits;
  }
  Rational box = (xh - xl) * (yh - yl);
  Rational p = Rational(static_cast<long>(hits)) / rat_int(samples);
  *half_width = box * (4 * rat_sqrt_upper(p * (1 - p) / rat_int(samples)) + Rational(4) / rat_int(samples));
  return box * p;
}

}  // namespace

TEST_CASE("total_variation") {
  std::vector<Rational> constant{rat(3), rat(3), rat(3)};
  CHECK(total_variation(constant) == 0);
  std::vector<Rational> monotone{rat(1), rat(2), rat(5), rat(9)};
  CHECK(total_variation(monotone) == 8);
  std::vector<Rational> zigzag{rat(0), rat(1), rat(0), rat(1)};
  CHECK(total_variation(zigzag) == 3);
}

TEST_CASE("sweep_polyline_segment: parallel slope gives zero") {
  Polyline diag = line({{0, 0}, {2, 2}});
  Segment2 s(rat(0), rat(0), rat(1), rat(1));
  CHECK(sweep_polyline_segment(diag, s) == 0);
  CHECK(lemma5_bound(diag, s) == 0);
}

TEST_CASE("sweep_polyline_segment: unit parallelogram is tight for the bound") {
  Polyline diag = line({{0, 0}, {1, 1}});
  Segment2 s(rat(0), rat(0), rat(1), rat(0));
  CHECK(sweep_polyline_segment(diag, s) == 1);
  CHECK(lemma5_bound(diag, s) == 1);
}

TEST_CASE("sweep_polyline_segment: explicit two-edge union") {
  // Slopes +1 then -1, swept horizontally by 1. Cross-section at height y is
  // [y, y+1] union [2-y, 3-y]; the pieces overlap by 2y-1 above y = 1/2, so
  // the area is 2 - 1/4 = 7/4.
  Polyline vee = line({{0, 0}, {1, 1}, {2, 0}});
  Segment2 s(rat(0), rat(0), rat(1), rat(0));
  CHECK(sweep_polyline_segment(vee, s) == rat(7, 4));
}

TEST_CASE("sweep_polyline_segment: zero iff every edge is parallel to s") {
  Draw d{rng_key(41, 1)};
  for (int trial = 0; trial < 40; ++trial) {
    Polyline p = testgen::random_polyline(d, 3 + static_cast<int>(d.below(6)));
    Segment2 s(rat(0), rat(0), d.grid_rational(-16, 16, 8), d.grid_rational(-16, 16, 8));
    if (s.dx == 0 && s.dy == 0) continue;
    bool all_parallel = true;
    for (std::size_t i = 0; i + 1 < p.pts.size(); ++i) {
      Rational ex = p.pts[i + 1].first - p.pts[i].first;
      Rational ey = p.pts[i + 1].second - p.pts[i].second;
      if (ex * s.dy - ey * s.dx != 0) all_parallel = false;
    }
    CHECK((sweep_polyline_segment(p, s) == 0) == all_parallel);
  }
}

TEST_CASE("sweep_polyline_segment: bounds hold and MC agrees") {
  Draw d{rng_key(41, 2)};
  int covered = 0, trials = 0;
  for (int trial = 0; trial < 12; ++trial) {
    Polyline p = testgen::random_polyline(d, 3 + static_cast<int>(d.below(17)));
    Rational sdx = d.grid_rational(-16, 16, 8);
    Rational sdy = d.grid_rational(-16, 16, 8);
    if (sdx == 0 && sdy == 0) continue;
    Segment2 s(rat(0), rat(0), sdx, sdy);
    Rational a = sweep_polyline_segment(p, s);
    CHECK(a <= lemma5_bound(p, s));
    CHECK(a >= 0);

    std::vector<Pgram> pgrams;
    for (std::size_t i = 0; i + 1 < p.pts.size(); ++i)
      pgrams.push_back(Pgram{p.pts[i].first + s.x0, p.pts[i].second + s.y0,
                             p.pts[i + 1].first - p.pts[i].first,
                             p.pts[i + 1].second - p.pts[i].second, s.dx, s.dy});
    Rational hw;
    Rational est = pgram_mc(pgrams, 4000, 500 + static_cast<std::uint64_t>(trial), &hw);
    ++trials;
    if (abs(Rational(est - a)) <= hw) ++covered;
  }
  CHECK(covered >= trials - 1);
}

TEST_CASE("pgram_union_area: worker-count independent") {
  Draw d{rng_key(41, 3)};
  std::vector<Pgram> pgrams;
  for (int i = 0; i < 30; ++i) {
    pgrams.push_back(Pgram{d.grid_rational(0, 64, 16), d.grid_rational(0, 64, 16),
                           d.grid_rational(1, 16, 16), d.grid_rational(-16, 16, 16),
                           d.grid_rational(1, 16, 16), d.grid_rational(-16, 16, 16)});
  }
  CHECK(pgram_union_area(pgrams, 1) == pgram_union_area(pgrams, 4));
}

TEST_CASE("hausdorff_le: identical families at threshold zero") {
  Polyline p = line({{0, 0}, {1, 1}, {2, 0}});
  CHECK(hausdorff_le(family_of(p), family_of(p), rat(0)));
}

TEST_CASE("hausdorff_le: exact verdict at a rational distance") {
  SegmentFamily a{FamilyElement{rat(0), rat(0), rat(0), rat(0)}};
  SegmentFamily b{FamilyElement{rat(5, 13), rat(12, 13), rat(5, 13), rat(12, 13)}};
  CHECK(hausdorff_le(a, b, rat(1)));
  CHECK_FALSE(hausdorff_le(a, b, rat(99, 100)));
}

TEST_CASE("hausdorff_le: agrees with a dense sampling oracle off the boundary") {
  Draw d{rng_key(41, 4)};
  for (int trial = 0; trial < 20; ++trial) {
    Polyline p = testgen::random_polyline(d, 4, 8, 8);
    Polyline q = testgen::random_polyline(d, 4, 8, 8);
    SegmentFamily fp = family_of(p), fq = family_of(q);
    // Sampled directed sup-distance on a fine grid of each segment.
    Rational worst2(0);
    auto probe = [&](const SegmentFamily& from, const SegmentFamily& to) {
      for (const auto& e : from) {
        for (int t = 0; t <= 16; ++t) {
          Rational px = e.x0 + (e.x1 - e.x0) * t / 16;
          Rational py = e.y0 + (e.y1 - e.y0) * t / 16;
          Rational best = dist2_point_element(px, py, to[0]);
          for (const auto& f : to) best = std::min(best, dist2_point_element(px, py, f));
          worst2 = std::max(worst2, best);
        }
      }
    };
    probe(fp, fq);
    probe(fq, fp);
    // Check against thresholds safely above and below the sampled distance.
    Rational w = rat_sqrt_upper(worst2);
    CHECK(hausdorff_le(fp, fq, 2 * w + 1));
    if (worst2 > rat(1, 100)) CHECK_FALSE(hausdorff_le(fp, fq, w / 2));
  }
}

TEST_CASE("m_simple_approx: horizontal diameter with m=0 is exact") {
  // The output tiles the input segment, so its Hausdorff distance is 0; the
  // subdivision decision procedure certifies any positive threshold.
  Polyline k = line({{0, 1}, {2, 1}}, 2);  // y = 1/2 across [0,1]
  MSimpleSet l = m_simple_approx(k, rat(0), rat(1, 10));
  CHECK(hausdorff_le(family_of(k), family_of(l), rat(1, 1000)));
}

TEST_CASE("m_simple_approx: main diagonal with m=1 is exact") {
  Polyline k = line({{0, 0}, {1, 1}});
  MSimpleSet l = m_simple_approx(k, rat(1), rat(1, 8));
  CHECK(hausdorff_le(family_of(k), family_of(l), rat(1, 1000)));
}

TEST_CASE("m_simple_approx: random polylines pass the 3*eps bound") {
  Draw d{rng_key(41, 5)};
  for (int trial = 0; trial < 6; ++trial) {
    // Random function-like polyline inside the unit square spanning [0,1].
    std::vector<std::pair<Rational, Rational>> pts;
    int verts = 16;
    for (int i = 0; i < verts; ++i) {
      Rational x = Rational(i) / (verts - 1);
      pts.emplace_back(x, d.grid_rational(0, 64, 64));
    }
    Polyline k{std::move(pts)};
    Rational m = rat(2);
    MSimpleSet l = m_simple_approx(k, m, rat(1, 10));
    CHECK(l.breaks.front() == 0);
    CHECK(l.breaks.back() == 1);
    CHECK(hausdorff_le(family_of(k), family_of(l), rat(3, 10)));
  }
}

TEST_CASE("tangent_schedule: single piece closed form and decay") {
  Polyline f = line({{0, 0}, {2, 3}});  // slope 3/2, width 2
  Rational m = rat(3, 2), w = rat(2);
  Rational prev;
  for (int r : {1, 2, 4, 8, 16, 32, 64}) {
    TangentSchedule ts = tangent_schedule(f, r);
    Rational expect = m * (w + 1 - Rational(1) / r) / r;
    CHECK(ts.exact_area == expect);
    CHECK(ts.exact_area <= m * (w + 1) / r);
    if (r > 1) CHECK(ts.exact_area < prev);
    prev = ts.exact_area;
    REQUIRE(ts.entries.size() == 1);
    CHECK(ts.entries[0].cert_bound == 0);
    CHECK(ts.h.pieces() == static_cast<std::size_t>(r));
  }
}

TEST_CASE("tangent_schedule: equal-slope pieces merge") {
  Polyline two = line({{0, 0}, {1, 2}, {2, 4}});
  Polyline one = line({{0, 0}, {2, 4}});
  for (int r : {2, 8}) {
    TangentSchedule a = tangent_schedule(two, r);
    TangentSchedule b = tangent_schedule(one, r);
    CHECK(a.exact_area == b.exact_area);
    CHECK(a.entries.size() == 1);
    CHECK(a.h == b.h);
  }
}

TEST_CASE("tangent_schedule: invariant under horizontal translation") {
  Draw d{rng_key(41, 6)};
  Polyline f = testgen::random_function_polyline(d, 5);
  std::vector<std::pair<Rational, Rational>> shifted;
  for (const auto& [x, y] : f.pts) shifted.emplace_back(x + rat(7, 3), y);
  Polyline g{std::move(shifted)};
  for (int r : {1, 4}) {
    CHECK(tangent_schedule(f, r).exact_area == tangent_schedule(g, r).exact_area);
  }
}

TEST_CASE("tangent_schedule: rejects vertical edges") {
  std::vector<std::pair<Rational, Rational>> pts{{rat(0), rat(0)}, {rat(0), rat(1)}, {rat(1), rat(1)}};
  Polyline f{std::move(pts)};
  CHECK_THROWS_AS(tangent_schedule(f, 4), std::invalid_argument);
}

TEST_CASE("tangent_schedule: multi-piece areas decrease on a small cap") {
  // Eight-edge cap, a small stand-in for the half-circle demo.
  Polyline cap = line({{-8, 0}, {-7, 4}, {-5, 6}, {-2, 7}, {2, 7}, {5, 6}, {7, 4}, {8, 0}}, 8);
  Rational prev;
  bool first = true;
  for (int r : {2, 4, 8, 16}) {
    TangentSchedule ts = tangent_schedule(cap, r);
    if (!first) CHECK(ts.exact_area < prev);
    prev = ts.exact_area;
    first = false;
  }
}
