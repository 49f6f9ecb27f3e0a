// Sloped geometry at desk scale: exact parallelogram-union sweep areas, total
// variation bounds, Hausdorff threshold decisions on segment families,
// slope-matched simple approximations, and the tangent translation schedule.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sweeplab/rational.hpp"
#include "sweeplab/staircase.hpp"

namespace sweeplab {

struct Polyline {
  // Ordered vertices; consecutive vertices distinct, at least one edge.
  std::vector<std::pair<Rational, Rational>> pts;

  explicit Polyline(std::vector<std::pair<Rational, Rational>> p);
  std::size_t edges() const { return pts.size() - 1; }
};

struct Segment2 {
  Rational x0, y0, dx, dy;  // nonzero extent

  Segment2(Rational x0_, Rational y0_, Rational dx_, Rational dy_);
  bool vertical() const { return dx == 0; }
};

// Sum of absolute consecutive differences.
Rational total_variation(std::span<const Rational> values);

// base + s*e1 + t*e2 for s, t in [0,1].
struct Pgram {
  Rational bx, by;
  Rational e1x, e1y;
  Rational e2x, e2y;
};

// Exact area of a union of parallelograms, by a vertical strip sweep whose
// strip boundaries include every corner abscissa and every boundary-line
// crossing of x-overlapping pairs; inside a strip the merged cross-section
// length is linear, so the midpoint value integrates it exactly.
Rational pgram_union_area(const std::vector<Pgram>& pgrams, int workers = 0);

// Exact area of gamma([a,b]) + s, the union of one parallelogram per edge.
Rational sweep_polyline_segment(const Polyline& gamma, const Segment2& s);

// Rationalized variation bound on sweep_polyline_segment: for non-vertical s
// of slope m the bound is |s.dx| * V(m*gamma_1 - gamma_2); for vertical s it
// is |s.dy| * V(gamma_1).
Rational lemma5_bound(const Polyline& gamma, const Segment2& s);

// Segment families for Hausdorff comparisons; degenerate elements are points.
struct FamilyElement {
  Rational x0, y0, x1, y1;
};
using SegmentFamily = std::vector<FamilyElement>;

SegmentFamily family_of(const Polyline& p);

// Exact squared distance from a point to a family element.
Rational dist2_point_element(const Rational& px, const Rational& py, const FamilyElement& e);

// Decides d(P, Q) <= threshold by bisection with exact squared-distance
// predicates: a sub-segment within a single element's threshold neighborhood
// is certified by its endpoints (distance to one element is convex along a
// segment), and any sample point beyond the threshold of every element is an
// exact counterexample witness. Inputs at exactly the threshold that need
// two elements to cover a neighborhood can exhaust the depth cap, in which
// case the decision is a conservative false.
bool hausdorff_le(const SegmentFamily& p, const SegmentFamily& q, const Rational& threshold);

// Union of slope-m closed segments whose x projections tile [0,1].
struct MSimpleSet {
  Rational slope;
  std::vector<Rational> breaks;  // 0 = x_0 < ... < x_n = 1
  std::vector<Rational> z;       // left endpoint ordinates, one per segment

  MSimpleSet(Rational slope, std::vector<Rational> breaks, std::vector<Rational> z);
};

SegmentFamily family_of(const MSimpleSet& m);

// Slope-m simple approximation of a polyline K inside [0,1]^2 with
// pr_x K = [0,1]: an eps-dense net with distinct abscissae and x gaps below
// eps/max(1,|m|), slope-m segments clamped into the unit square with left
// endpoints within eps of the net. The 3*eps Hausdorff postcondition is
// verified before returning.
MSimpleSet m_simple_approx(const Polyline& k, const Rational& m, const Rational& eps);

struct ScheduleEntry {
  Rational x_lo, x_hi;   // domain interval of the piece
  Rational slope;        // matched slope m_i
  Rational cert_bound;   // V(m_i*gamma_1 - gamma_2) over the piece, exactly 0 here
};

// Per-piece slope-matched translation schedule for a function-graph polyline
// with no vertical edges: consecutive equal-slope pieces merge, each piece
// gets `resolution` staircase steps tracking its own slope over a domain
// block proportional to the piece width, and the blocks chain continuously
// into one staircase on [0,1]. exact_area is the exact area of the union of
// the per-piece swept parallelograms; it shrinks to the piece-junction cost
// as the resolution grows.
struct TangentSchedule {
  std::vector<ScheduleEntry> entries;
  Staircase h;
  Rational exact_area;
  std::vector<Pgram> swept;  // the per-piece parallelograms, for rendering
};

TangentSchedule tangent_schedule(const Polyline& f, int resolution, int workers = 0);

}  // namespace sweeplab
