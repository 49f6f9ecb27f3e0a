// Nested column-set construction and exact, exhaustive verification of its
// translation-overlap bounds over all translations, by cell-corner
// enumeration of the piecewise-bilinear overlap function.
#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "sweeplab/geometry.hpp"
#include "sweeplab/signs.hpp"

namespace sweeplab {

struct YInterval {
  Rational lo, hi;
  bool operator==(const YInterval&) const = default;
};

// Lower half for sign -1, upper half for +1.
YInterval halve(const YInterval& iv, int sign);

// Stage-k union of N equal-width columns, column j (1-based) on
// [(j-1)/N, j/N], each carrying one closed height interval of length 2^-k
// with dyadic endpoints (denominator dividing 2^k), inside [0,1].
struct ColumnSet {
  int stage = 0;
  long long columns = 1;
  std::vector<YInterval> heights;

  ColumnSet(int stage, long long columns, std::vector<YInterval> heights);

  static ColumnSet unit_square();  // A_0

  Rational column_width() const { return Rational(1) / Rational(static_cast<long>(columns)); }
  Rational area() const { return rat_pow2(-stage); }
  RectUnion to_rect_union() const;
};

// n equal-width columns over R's x range, each keeping the signed half of
// R's y range. Area is exactly half of R's.
RectUnion apply_alpha(const Rect& r, const SignSeq& alpha);

// Slices eta into blocks of length |eta|/N and halves each column's interval
// per its block. Requires N | len(eta).
ColumnSet refine(const ColumnSet& a, const SignSeq& eta);

// Concentric homothetic copies strictly inside each column rectangle, linear
// scale (1+1/q)/2, so the output area is in (area(a)/q, area(a)). Requires
// q > 1.
RectUnion shrink(const ColumnSet& a, const Rational& q);

// Exact overlap evaluator for two equal-width column structures, O(columns)
// per translation. Grid overlaps of a ColumnSet with itself additionally get
// per-shift histograms of dyadic height differences, making every grid corner
// an O(1) integer lookup.
Rational columns_overlap(const ColumnSet& a, const ColumnSet& b, const Vector2& t);

class SelfOverlapTable {
 public:
  explicit SelfOverlapTable(const ColumnSet& a);

  long long columns() const { return n_; }
  int stage() const { return stage_; }

  // #{j : lo_{j+shift} - lo_j = d * 2^-stage}, shift in [0, n].
  long long count(long long shift, long long d) const;

  // Exact overlap area of A with A + (shift/N, y), arbitrary rational y.
  Rational overlap_at_shift(long long shift, const Rational& y) const;

  // Same, with y = t * 2^-stage a grid ordinate: single histogram lookup.
  Rational overlap_at_grid(long long shift, long long t) const;

 private:
  long long n_;
  int stage_;
  std::vector<long long> lo_scaled_;           // lo_j * 2^stage
  std::vector<std::vector<long long>> hist_;   // [shift][d + 2^stage]
};

// Per-stage plan data. In paper mode epsilon_k = 2^-(2k+3)/N_{k-1} and N_k is
// the smallest multiple of N_{k-1} exceeding N_{k-1}/epsilon_k; in desk mode
// n_k (and optionally epsilon_k) are caller-supplied and recorded.
enum class PlanMode { paper, desk };

struct StagePlan {
  int stage = 0;
  Rational epsilon;      // target epsilon_k (desk mode: may be filled post hoc)
  bool epsilon_fixed = false;
  long long n = 0;       // per-column split count n_k
  long long N = 0;       // cumulative column count N_k
};

struct RefinePlan {
  PlanMode mode = PlanMode::desk;
  std::vector<StagePlan> stages;  // stages[0] is k = 1
};

struct PlanRefusal {
  int stage = 0;
  Rational epsilon;
  BigInt required_N;  // smallest admissible N_k
  long long budget = 0;
};

struct DeskOverrides {
  std::vector<long long> n;         // n_1..n_kmax
  std::vector<Rational> epsilon;    // optional; empty = record achieved
};

std::variant<RefinePlan, PlanRefusal> plan_schedule(int k_max, PlanMode mode,
                                                    const DeskOverrides& overrides,
                                                    long long budget);

// A built chain A_0 superset A_1 superset ... with per-stage certificates of
// the sign sequences used.
struct ChainStage {
  StagePlan plan;
  SignSeq eta;
  int attempts = 0;
  Rational achieved_epsilon;  // minimal strictly-passing epsilon of eta
  ColumnSet set;
};

struct Chain {
  PlanMode mode = PlanMode::desk;
  std::uint64_t seed = 0;
  std::vector<ChainStage> stages;

  const ColumnSet& at(int k) const;  // k = 0 returns the unit square
  int depth() const { return static_cast<int>(stages.size()); }
};

// Samples the per-stage sign sequences (stream (seed, k)) and refines. In
// desk mode without fixed epsilons, each stage takes the first draw and
// records its achieved epsilon; with fixed epsilons (and in paper mode)
// stages are rejection-sampled against the target.
Chain build_chain(const RefinePlan& plan, std::uint64_t seed, int max_attempts);

// Exhaustive verification of the overlap inequality
//   |R^alpha cap (R^beta + (x,y))| < 1/4 |R cap (R + (x,y))| + eps |R|
// for all x >= 0, y, by corner enumeration of the bilinear cells, plus the
// four V-pattern cardinality preconditions over every shift. The two
// verdicts are independent.
struct Lemma7Cert {
  Rational epsilon;
  bool precondition_holds = false;
  bool conclusion_holds = false;
  // Worst precondition shift: count vs (n-k)/4 + eps*n.
  int pre_worst_shift = 0;
  WindowPattern pre_worst_pattern = WindowPattern::U1;
  long long pre_worst_count = 0;
  Rational pre_worst_bound;
  // Worst conclusion corner: max of lhs - rhs.
  Vector2 worst_corner;
  Rational worst_lhs, worst_rhs;
  // Corners where both sides vanish identically (degenerate R only); the
  // strict inequality is relaxed to <= there and the corners listed.
  std::vector<Vector2> flagged_corners;
};

Lemma7Cert check_lemma7(const Rect& r, const SignSeq& alpha, const SignSeq& beta,
                        const Rational& eps);

// Exhaustive verification that |A_k cap (A_k + (x,y))| <= 2^(j-2k) - 2^-3k
// for all x >= 1/N_j and all y, via grid-corner enumeration (the overlap is
// bilinear between grid lines and vanishes for |x| >= 1, |y| >= 1).
struct Lemma8Cert {
  int j = 0, k = 0;
  bool pass = false;
  Rational bound;  // 2^(j-2k) - 2^-3k
  Vector2 worst_corner;
  Rational worst_overlap;
  long long corners_checked = 0;
};

Lemma8Cert check_lemma8(const Chain& chain, int j, int k);

// Chain-wide Lemma 7 run at stage k: every ordered column pair (j1, j2) of
// stage k-1 with epsilon = achieved_epsilon_k * N_{k-1}, plus each same-column
// pair against its shift-by-one companion at doubled epsilon.
struct ChainLemma7Report {
  int stage = 0;
  Rational epsilon;  // the per-pair epsilon used for distinct pairs
  long long pairs_checked = 0;
  long long conclusion_failures = 0;
  long long precondition_failures = 0;
  std::optional<Lemma7Cert> first_failure;
  bool all_pass() const { return conclusion_failures == 0 && precondition_failures == 0; }
};

ChainLemma7Report verify_chain_lemma7(const Chain& chain, int stage, int workers = 0);

}  // namespace sweeplab
