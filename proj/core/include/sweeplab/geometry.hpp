// Exact rational axis-aligned geometry: rectangle unions with a canonical
// decomposition, exact areas, translation overlaps, Minkowski sums with
// staircase graphs, and a seeded Monte Carlo oracle.
#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "sweeplab/rational.hpp"
#include "sweeplab/staircase.hpp"

namespace sweeplab {

struct Vector2 {
  Rational dx, dy;
  bool operator==(const Vector2&) const = default;
};

struct Rect {
  Rational x_lo, x_hi, y_lo, y_hi;

  Rect(Rational xl, Rational xh, Rational yl, Rational yh);

  Rational width() const { return x_hi - x_lo; }
  Rational height() const { return y_hi - y_lo; }
  Rational rect_area() const { return width() * height(); }
  bool degenerate() const { return x_lo == x_hi || y_lo == y_hi; }

  bool operator==(const Rect&) const = default;
};

// Finite union of closed axis-aligned rectangles. Values are immutable after
// construction and safe to share across workers. Degenerate rectangles are
// legal members (they carry no area but do translate and Minkowski-sum).
class RectUnion {
 public:
  RectUnion() = default;
  explicit RectUnion(std::vector<Rect> rects);

  const std::vector<Rect>& rects() const { return rects_; }
  bool empty() const { return rects_.empty(); }

  // Canonical non-overlapping decomposition: vertical slabs at every distinct
  // x boundary of the positive-area members, merged y intervals per slab.
  // Deterministic, order-independent, idempotent; drops degenerate members.
  const std::vector<Rect>& canonical() const;

 private:
  std::vector<Rect> rects_;
  struct CanonicalCache;
  std::shared_ptr<CanonicalCache> cache_;
};

// Compares canonical decompositions (not point-set equality in general; equal
// inputs up to re-ordering and translation round-trips compare equal).
bool operator==(const RectUnion& a, const RectUnion& b);

// Exact Lebesgue measure of the union, by coordinate-compressed sweep.
Rational area(const RectUnion& u);

RectUnion translate(const RectUnion& u, const Vector2& t);

// Concatenation; the represented set is the union.
RectUnion union_of(const RectUnion& u, const RectUnion& v);

// Explicit intersection as a rectangle union (pairwise non-overlapping pieces).
RectUnion intersect(const RectUnion& u, const RectUnion& v);

// area(u cap (v + t)) without materializing the intersection.
Rational overlap_area(const RectUnion& u, const RectUnion& v, const Vector2& t);

// Exact u + graph h under the left-closed piece convention: rectangle
// [a,b]x[c,d] and piece [x_{i-1}, x_i) with value c_i contribute
// [a+x_{i-1}, b+x_i] x [c+c_i, d+c_i]. Requires h on [0,1] (Staircase
// guarantees it).
RectUnion minkowski_staircase(const RectUnion& u, const Staircase& h);

// All translation breakpoints of (x,y) -> overlap_area(u, v, (x,y)): the
// function is bilinear on every open cell between consecutive breaks, so its
// extrema over a closed cell sit at the four corners.
struct BilinearBreaks {
  std::vector<Rational> x_breaks, y_breaks;
};
BilinearBreaks bilinear_cells(const RectUnion& u, const RectUnion& v);

bool point_in(const RectUnion& u, const Rational& x, const Rational& y);

// Uniform sampling estimate of area within the bounding box. Deterministic
// given seed and independent of worker count. half_width is a ~4 sigma
// binomial bound plus a 4/samples small-sample term, reported as an exact
// rational upper bound.
struct McEstimate {
  Rational estimate;
  Rational half_width;
  std::int64_t hits = 0;
  std::int64_t samples = 0;
};
McEstimate grid_mc_estimate(const RectUnion& u, std::int64_t samples, std::uint64_t seed,
                            int workers = 0);

}  // namespace sweeplab
