// Discrepancy-constrained sign sequences: fast window checkers with exact
// rational bounds, and seeded rejection sampling.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sweeplab/rational.hpp"

namespace sweeplab {

struct SignSeq {
  std::vector<std::int8_t> values;  // every entry +1 or -1

  explicit SignSeq(std::vector<std::int8_t> v);
  int n() const { return static_cast<int>(values.size()); }
  SignSeq negated() const;
};

// Window statistics live on windows (u, v], i.e. indices u+1..v, 1-based.
//
// Patterns U1..U4 count joint signs of (eta_i, eta_{i+k}) for shift k >= 1:
//   U1: both +1   U2: both -1   U3: (+1,-1)   U4: (-1,+1)
// and are bounded by (v-u)/4 + eps*n.
//
// The moment families bound |window sums| by eps*n:
//   SumBase:    |eta_{u+1} + ... + eta_v|           over windows with v <= n-1
//   SumShifted: |eta_{u+1} + ... + eta_v|           over windows with u >= 1
//   SumProduct: |sum eta_i * eta_{i+k}, i in (u,v]| per shift k in [1, n-1]
// (SumBase/SumShifted report k = 0; together they cover every window except
// the full sequence, matching the quantifier ranges the bound comes from.)
enum class WindowPattern { U1 = 0, U2 = 1, U3 = 2, U4 = 3, SumBase = 4, SumShifted = 5, SumProduct = 6 };

enum class CheckerId { pairs, moments };

struct WorstWindow {
  int k = 0;
  int u = 0;
  int v = 0;
  WindowPattern pattern = WindowPattern::U1;
  long long count = 0;  // pattern count, or |window sum| for moment families
  Rational bound;       // (v-u)/4 + eps*n, or eps*n
};

// pass iff count < bound at the arg-max window (exact rational comparison,
// integer count against rational bound, no tolerance). The worst window is
// the deterministic arg-max with tie-break smallest k, then u, then v, then
// pattern index.
struct DiscrepancyCert {
  Rational epsilon;
  bool pass = false;
  WorstWindow worst;
  CheckerId checker = CheckerId::pairs;
};

// O(n^2): for each shift, prefix-count each pattern and reduce the window
// maximum with a running-minimum scan. Requires 0 < eps < 1, n >= 2.
DiscrepancyCert verify_pairs(const SignSeq& eta, const Rational& eps);

// O(n^2) via prefix sums over the three moment families. Same preconditions.
DiscrepancyCert verify_moments(const SignSeq& eta, const Rational& eps);

// Verdict-only fast path with early exit; agrees with verify_pairs(...).pass.
bool pairs_pass(const SignSeq& eta, const Rational& eps);

// Largest 4*count - (v-u) over all shifts, windows and patterns. The minimal
// strictly-passing epsilon is any eps with 4*eps*n > this value.
long long pairs_max_margin(const SignSeq& eta);

// Draws i.i.d. uniform sign sequences, attempt t from the stream (seed, t),
// and returns the first one passing verify_pairs. Deterministic given
// (n, eps, max_attempts, seed) regardless of worker count.
struct SampleResult {
  std::optional<SignSeq> eta;
  int attempts_used = 0;  // attempts consumed; equals the winning attempt index on success
};
SampleResult sample_eta(int n, const Rational& eps, int max_attempts, std::uint64_t seed,
                        int workers = 0);

// The deterministic draw used by attempt t of sample_eta.
SignSeq draw_eta(int n, std::uint64_t seed, int attempt);

}  // namespace sweeplab
