// Exact sweep areas, the Cauchy-Schwarz translate certificate, left-edge
// lower bounds, and the modulo-folding / perturbation constructions.
#pragma once

#include <cstdint>

#include "sweeplab/geometry.hpp"
#include "sweeplab/kakeya.hpp"
#include "sweeplab/staircase.hpp"

namespace sweeplab {

// area(A + graph h), exact.
Rational sweep_area(const RectUnion& a, const Staircase& h);

// Cauchy-Schwarz lower bound S^2/Q for the union of the N translates
// C_i = A + (i/N, h(i/N)): S = N*area(A), Q = S + 2 * sum of pairwise
// overlaps. Always <= area(union of C_i) <= sweep_area(A, h).
Rational cs_lower_bound(const ColumnSet& a, const Staircase& h);

// Reusable evaluator: the per-shift overlap histograms are staircase
// independent, so one table serves many candidate staircases.
class CsEvaluator {
 public:
  explicit CsEvaluator(const ColumnSet& a);

  Rational certificate(const Staircase& h) const;

  // Exact area of the explicit union of the N translates. Materializes
  // N * columns rectangles; intended for small column sets.
  Rational union_area(const Staircase& h) const;

  const ColumnSet& column_set() const { return a_; }

 private:
  ColumnSet a_;
  SelfOverlapTable table_;
  Rational area_;
};

// lambda_1 of the left-edge section set: the union of the y intervals of
// rectangles with positive width whose x range starts at the left edge of
// the support. Every staircase sweep of the set is at least this long.
Rational ea_lower_bound(const RectUnion& a);

// Piece values mapped to [0, eps) by exact rational mod; breakpoints kept.
Staircase fold_mod(const Staircase& g, const Rational& eps);

// Image under (x, y) -> (x, y mod eps): each rectangle split at the strip
// boundaries i*eps and shifted into [0, eps). Never increases area.
RectUnion phi_fold(const RectUnion& e, const Rational& eps);

// Pointwise g + f on the merged breakpoints. Requires every value of f in
// [0, eps]; the result satisfies 0 <= h - g <= eps pointwise and has at most
// pieces(g) + pieces(f) - 1 pieces.
Staircase perturb_compose(const Staircase& g, const Staircase& f, const Rational& eps);

struct SweepReport {
  Rational exact_area;
  Rational lower_bound_cs;  // 0 when no column structure was supplied
  Rational lower_bound_ea;
};

SweepReport sweep_report(const ColumnSet& a, const Staircase& h);
SweepReport sweep_report(const RectUnion& a, const Staircase& h);

// Randomized staircases plus greedy coordinate descent on piece values,
// minimizing the certificate. Deterministic given seed; reports the minimum
// found and the staircase attaining it.
struct AdversarialResult {
  Rational min_certificate;
  Staircase argmin;
  int evaluated = 0;
};
AdversarialResult adversarial_search(const ColumnSet& a, int iters, std::uint64_t seed);

}  // namespace sweeplab
