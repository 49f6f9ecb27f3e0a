#include "sweeplab/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>

#include "sweeplab/parallel.hpp"
#include "sweeplab/rng.hpp"

namespace sweeplab {

Rect::Rect(Rational xl, Rational xh, Rational yl, Rational yh)
    : x_lo(std::move(xl)), x_hi(std::move(xh)), y_lo(std::move(yl)), y_hi(std::move(yh)) {
  if (x_lo > x_hi || y_lo > y_hi) throw std::invalid_argument("Rect: inverted bounds");
}

struct RectUnion::CanonicalCache {
  std::once_flag once;
  std::vector<Rect> canon;
};

RectUnion::RectUnion(std::vector<Rect> rects)
    : rects_(std::move(rects)), cache_(std::make_shared<CanonicalCache>()) {}

namespace {

// Slab decomposition at all distinct x boundaries of the positive-area rects,
// with maximal merged y intervals inside each slab. Quadratic in the input,
// which is fine for the sizes canonical() is used at; area() has its own
// sweep and never calls this.
std::vector<Rect> slab_decompose(const std::vector<Rect>& rects) {
  std::vector<const Rect*> live;
  for (const auto& r : rects)
    if (!r.degenerate()) live.push_back(&r);
  std::vector<Rect> out;
  if (live.empty()) return out;

  std::vector<Rational> xs;
  xs.reserve(live.size() * 2);
  for (const Rect* r : live) {
    xs.push_back(r->x_lo);
    xs.push_back(r->x_hi);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    const Rational& x0 = xs[s];
    const Rational& x1 = xs[s + 1];
    std::vector<std::pair<Rational, Rational>> ys;
    for (const Rect* r : live)
      if (r->x_lo <= x0 && r->x_hi >= x1) ys.emplace_back(r->y_lo, r->y_hi);
    if (ys.empty()) continue;
    std::sort(ys.begin(), ys.end());
    Rational lo = ys[0].first, hi = ys[0].second;
    for (std::size_t i = 1; i < ys.size(); ++i) {
      if (ys[i].first <= hi) {
        if (ys[i].second > hi) hi = ys[i].second;
      } else {
        out.emplace_back(x0, x1, lo, hi);
        lo = ys[i].first;
        hi = ys[i].second;
      }
    }
    out.emplace_back(x0, x1, lo, hi);
  }
  return out;
}

// Segment tree over compressed y cells tracking covered length under +/- cover
// events. Classic Klee sweep support structure.
class CoverTree {
 public:
  explicit CoverTree(std::vector<Rational> ys) : ys_(std::move(ys)) {
    std::size_t cells = ys_.size() - 1;
    cover_.assign(4 * cells, 0);
    covered_.assign(4 * cells, Rational(0));
  }

  void add(std::size_t ylo, std::size_t yhi, int delta) {
    if (ylo < yhi) update(1, 0, ys_.size() - 1, ylo, yhi, delta);
  }

  const Rational& covered() const { return covered_[1]; }

 private:
  void update(std::size_t node, std::size_t lo, std::size_t hi, std::size_t a, std::size_t b,
              int delta) {
    if (b <= lo || hi <= a) return;
    if (a <= lo && hi <= b) {
      cover_[node] += delta;
    } else {
      std::size_t mid = (lo + hi) / 2;
      update(2 * node, lo, mid, a, b, delta);
      update(2 * node + 1, mid, hi, a, b, delta);
    }
    if (cover_[node] > 0) {
      covered_[node] = ys_[hi] - ys_[lo];
    } else if (hi - lo == 1) {
      covered_[node] = 0;
    } else {
      covered_[node] = covered_[2 * node] + covered_[2 * node + 1];
    }
  }

  std::vector<Rational> ys_;
  std::vector<int> cover_;
  std::vector<Rational> covered_;
};

}  // namespace

const std::vector<Rect>& RectUnion::canonical() const {
  static const std::vector<Rect> kEmpty;
  if (!cache_) return kEmpty;
  std::call_once(cache_->once, [this] { cache_->canon = slab_decompose(rects_); });
  return cache_->canon;
}

bool operator==(const RectUnion& a, const RectUnion& b) {
  return a.canonical() == b.canonical();
}

Rational area(const RectUnion& u) {
  struct Event {
    const Rational* x;
    int delta;
    std::size_t ylo, yhi;
  };
  std::vector<Rational> ys;
  std::vector<const Rect*> live;
  for (const auto& r : u.rects()) {
    if (r.degenerate()) continue;
    live.push_back(&r);
    ys.push_back(r.y_lo);
    ys.push_back(r.y_hi);
  }
  if (live.empty()) return Rational(0);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  auto yindex = [&](const Rational& y) {
    return static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin());
  };

  std::vector<Event> events;
  events.reserve(live.size() * 2);
  for (const Rect* r : live) {
    events.push_back({&r->x_lo, +1, yindex(r->y_lo), yindex(r->y_hi)});
    events.push_back({&r->x_hi, -1, yindex(r->y_lo), yindex(r->y_hi)});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (*a.x != *b.x) return *a.x < *b.x;
    return a.delta < b.delta;  // same x: order irrelevant for the measure
  });

  CoverTree tree(ys);
  Rational total(0);
  Rational prev_x = *events.front().x;
  for (const auto& e : events) {
    if (*e.x != prev_x) {
      total += tree.covered() * (*e.x - prev_x);
      prev_x = *e.x;
    }
    tree.add(e.ylo, e.yhi, e.delta);
  }
  return total;
}

RectUnion translate(const RectUnion& u, const Vector2& t) {
  std::vector<Rect> out;
  out.reserve(u.rects().size());
  for (const auto& r : u.rects())
    out.emplace_back(r.x_lo + t.dx, r.x_hi + t.dx, r.y_lo + t.dy, r.y_hi + t.dy);
  return RectUnion(std::move(out));
}

RectUnion union_of(const RectUnion& u, const RectUnion& v) {
  std::vector<Rect> out = u.rects();
  out.insert(out.end(), v.rects().begin(), v.rects().end());
  return RectUnion(std::move(out));
}

namespace {

// Calls fn(a, b) for every canonical pair with overlapping x ranges. Slab
// decompositions are sorted with both x_lo and x_hi non-decreasing, which the
// start pointer and the early break both rely on.
template <typename Fn>
void for_x_overlapping_pairs(const std::vector<Rect>& as, const std::vector<Rect>& bs,
                             const Rational& bx_shift, Fn&& fn) {
  std::size_t start = 0;
  for (const auto& a : as) {
    while (start < bs.size() && bs[start].x_hi + bx_shift <= a.x_lo) ++start;
    for (std::size_t j = start; j < bs.size(); ++j) {
      const Rect& b = bs[j];
      if (b.x_lo + bx_shift >= a.x_hi) break;
      if (b.x_hi + bx_shift <= a.x_lo) continue;
      fn(a, b);
    }
  }
}

}  // namespace

RectUnion intersect(const RectUnion& u, const RectUnion& v) {
  std::vector<Rect> out;
  for_x_overlapping_pairs(u.canonical(), v.canonical(), Rational(0),
                          [&](const Rect& a, const Rect& b) {
                            Rational xl = std::max(a.x_lo, b.x_lo);
                            Rational xh = std::min(a.x_hi, b.x_hi);
                            Rational yl = std::max(a.y_lo, b.y_lo);
                            Rational yh = std::min(a.y_hi, b.y_hi);
                            if (xl < xh && yl < yh)
                              out.emplace_back(std::move(xl), std::move(xh), std::move(yl),
                                               std::move(yh));
                          });
  return RectUnion(std::move(out));
}

Rational overlap_area(const RectUnion& u, const RectUnion& v, const Vector2& t) {
  // Canonical pieces are pairwise non-overlapping, so pairwise intersection
  // areas add up exactly.
  Rational total(0);
  for_x_overlapping_pairs(u.canonical(), v.canonical(), t.dx, [&](const Rect& a, const Rect& b) {
    Rational xl = std::max(a.x_lo, Rational(b.x_lo + t.dx));
    Rational xh = std::min(a.x_hi, Rational(b.x_hi + t.dx));
    Rational yl = std::max(a.y_lo, Rational(b.y_lo + t.dy));
    Rational yh = std::min(a.y_hi, Rational(b.y_hi + t.dy));
    if (xl < xh && yl < yh) total += (xh - xl) * (yh - yl);
  });
  return total;
}

RectUnion minkowski_staircase(const RectUnion& u, const Staircase& h) {
  std::vector<Rect> out;
  out.reserve(u.rects().size() * h.pieces());
  const auto& bx = h.breaks();
  const auto& cv = h.values();
  for (const auto& r : u.rects()) {
    for (std::size_t i = 0; i < cv.size(); ++i) {
      out.emplace_back(r.x_lo + bx[i], r.x_hi + bx[i + 1], r.y_lo + cv[i], r.y_hi + cv[i]);
    }
  }
  return RectUnion(std::move(out));
}

BilinearBreaks bilinear_cells(const RectUnion& u, const RectUnion& v) {
  auto bounds = [](const RectUnion& w, bool xaxis) {
    std::vector<Rational> b;
    for (const auto& r : w.rects()) {
      b.push_back(xaxis ? r.x_lo : r.y_lo);
      b.push_back(xaxis ? r.x_hi : r.y_hi);
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
  };
  auto diffs = [](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> d;
    d.reserve(a.size() * b.size());
    for (const auto& x : a)
      for (const auto& y : b) d.push_back(x - y);
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
  };
  BilinearBreaks out;
  out.x_breaks = diffs(bounds(u, true), bounds(v, true));
  out.y_breaks = diffs(bounds(u, false), bounds(v, false));
  return out;
}

bool point_in(const RectUnion& u, const Rational& x, const Rational& y) {
  for (const auto& r : u.rects())
    if (x >= r.x_lo && x <= r.x_hi && y >= r.y_lo && y <= r.y_hi) return true;
  return false;
}

McEstimate grid_mc_estimate(const RectUnion& u, std::int64_t samples, std::uint64_t seed,
                            int workers) {
  if (samples < 1000) throw std::invalid_argument("grid_mc_estimate: samples must be >= 1000");
  McEstimate out;
  out.samples = samples;
  if (u.empty()) return out;

  Rational xl = u.rects()[0].x_lo, xh = u.rects()[0].x_hi;
  Rational yl = u.rects()[0].y_lo, yh = u.rects()[0].y_hi;
  for (const auto& r : u.rects()) {
    xl = std::min(xl, r.x_lo);
    xh = std::max(xh, r.x_hi);
    yl = std::min(yl, r.y_lo);
    yh = std::max(yh, r.y_hi);
  }
  Rational w = xh - xl, ht = yh - yl;
  if (w == 0 || ht == 0) return out;  // degenerate bounding box: exact 0
  Rational box = w * ht;

  std::uint64_t key = rng_key(seed, 0x6d63u /* "mc" */);
  int nw = workers <= 0 ? default_workers() : workers;
  std::vector<std::int64_t> hits(static_cast<std::size_t>(nw), 0);
  std::atomic<int> slot{0};
  parallel_chunks(samples, nw, [&](std::int64_t b, std::int64_t e) {
    int my = slot.fetch_add(1);
    std::int64_t h = 0;
    for (std::int64_t i = b; i < e; ++i) {
      Rational px = xl + w * rng_unit(key, static_cast<std::uint64_t>(2 * i));
      Rational py = yl + ht * rng_unit(key, static_cast<std::uint64_t>(2 * i + 1));
      if (point_in(u, px, py)) ++h;
    }
    hits[static_cast<std::size_t>(my)] = h;
  });
  std::int64_t hit = 0;
  for (auto h : hits) hit += h;

  out.hits = hit;
  Rational n(static_cast<long>(samples));
  Rational p = Rational(static_cast<long>(hit)) / n;
  out.estimate = box * p;
  Rational sigma2 = p * (1 - p) / n;
  out.half_width = box * (4 * rat_sqrt_upper(sigma2) + Rational(4) / n);
  return out;
}

}  // namespace sweeplab
