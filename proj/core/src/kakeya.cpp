#include "sweeplab/kakeya.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>
#include <tuple>

#include "sweeplab/parallel.hpp"
#include "sweeplab/rng.hpp"

namespace sweeplab {

YInterval halve(const YInterval& iv, int sign) {
  if (iv.lo > iv.hi) throw std::invalid_argument("halve: empty interval");
  Rational mid = (iv.lo + iv.hi) / 2;
  return sign < 0 ? YInterval{iv.lo, mid} : YInterval{mid, iv.hi};
}

ColumnSet::ColumnSet(int stage_, long long columns_, std::vector<YInterval> heights_)
    : stage(stage_), columns(columns_), heights(std::move(heights_)) {
  if (stage < 0 || columns < 1) throw std::invalid_argument("ColumnSet: bad shape");
  if (static_cast<long long>(heights.size()) != columns)
    throw std::invalid_argument("ColumnSet: need one height interval per column");
  Rational len = rat_pow2(-stage);
  for (const auto& iv : heights) {
    if (iv.hi - iv.lo != len) throw std::invalid_argument("ColumnSet: interval length != 2^-stage");
    if (iv.lo < 0 || iv.hi > 1) throw std::invalid_argument("ColumnSet: interval outside [0,1]");
    rat_scaled_by_pow2(iv.lo, stage);  // throws unless the endpoint is dyadic /2^stage
  }
}

ColumnSet ColumnSet::unit_square() {
  return ColumnSet(0, 1, {YInterval{Rational(0), Rational(1)}});
}

RectUnion ColumnSet::to_rect_union() const {
  std::vector<Rect> rects;
  rects.reserve(heights.size());
  Rational w = column_width();
  for (long long j = 0; j < columns; ++j) {
    rects.emplace_back(w * static_cast<long>(j), w * static_cast<long>(j + 1), heights[j].lo,
                       heights[j].hi);
  }
  return RectUnion(std::move(rects));
}

RectUnion apply_alpha(const Rect& r, const SignSeq& alpha) {
  int n = alpha.n();
  std::vector<Rect> rects;
  rects.reserve(static_cast<std::size_t>(n));
  Rational w = r.width() / n;
  YInterval full{r.y_lo, r.y_hi};
  for (int i = 0; i < n; ++i) {
    YInterval h = halve(full, alpha.values[static_cast<std::size_t>(i)]);
    rects.emplace_back(r.x_lo + w * i, r.x_lo + w * (i + 1), h.lo, h.hi);
  }
  return RectUnion(std::move(rects));
}

ColumnSet refine(const ColumnSet& a, const SignSeq& eta) {
  long long m = eta.n();
  if (m % a.columns != 0)
    throw std::invalid_argument("refine: column count must divide len(eta)");
  long long n_split = m / a.columns;
  std::vector<YInterval> heights;
  heights.reserve(static_cast<std::size_t>(m));
  for (long long j = 0; j < a.columns; ++j) {
    for (long long i = 0; i < n_split; ++i) {
      int sign = eta.values[static_cast<std::size_t>(j * n_split + i)];
      heights.push_back(halve(a.heights[static_cast<std::size_t>(j)], sign));
    }
  }
  return ColumnSet(a.stage + 1, m, std::move(heights));
}

RectUnion shrink(const ColumnSet& a, const Rational& q) {
  if (!(q > 1)) throw std::invalid_argument("shrink: q must exceed 1");
  // Linear scale (1+1/q)/2: strictly below 1, and its square strictly exceeds
  // 1/q for every q > 1, so the area bound holds by construction.
  Rational s = (1 + 1 / q) / 2;
  std::vector<Rect> rects;
  rects.reserve(a.heights.size());
  Rational w = a.column_width();
  for (long long j = 0; j < a.columns; ++j) {
    const auto& iv = a.heights[static_cast<std::size_t>(j)];
    Rational cx = w * static_cast<long>(j) + w / 2;
    Rational cy = (iv.lo + iv.hi) / 2;
    Rational hx = s * w / 2, hy = s * (iv.hi - iv.lo) / 2;
    rects.emplace_back(cx - hx, cx + hx, cy - hy, cy + hy);
  }
  return RectUnion(std::move(rects));
}

Rational columns_overlap(const ColumnSet& a, const ColumnSet& b, const Vector2& t) {
  Rational wa = a.column_width(), wb = b.column_width();
  Rational total(0);
  for (long long j = 0; j < b.columns; ++j) {
    Rational s_lo = wb * static_cast<long>(j) + t.dx;
    Rational s_hi = s_lo + wb;
    if (s_hi <= 0 || s_lo >= 1) continue;
    long long i_min = mpz_get_si(BigInt(rat_floor(s_lo / wa)).get_mpz_t()) + 1;
    long long i_max = mpz_get_si(BigInt(rat_floor(s_hi / wa)).get_mpz_t()) + 1;
    i_min = std::max<long long>(i_min, 1);
    i_max = std::min<long long>(i_max, a.columns);
    const auto& hb = b.heights[static_cast<std::size_t>(j)];
    Rational b_lo = hb.lo + t.dy, b_hi = hb.hi + t.dy;
    for (long long i = i_min; i <= i_max; ++i) {
      Rational xl = std::max(Rational(wa * static_cast<long>(i - 1)), s_lo);
      Rational xh = std::min(Rational(wa * static_cast<long>(i)), s_hi);
      if (!(xl < xh)) continue;
      const auto& ha = a.heights[static_cast<std::size_t>(i - 1)];
      Rational yl = std::max(ha.lo, b_lo);
      Rational yh = std::min(ha.hi, b_hi);
      if (yl < yh) total += (xh - xl) * (yh - yl);
    }
  }
  return total;
}

SelfOverlapTable::SelfOverlapTable(const ColumnSet& a) : n_(a.columns), stage_(a.stage) {
  if (stage_ > 30) throw std::invalid_argument("SelfOverlapTable: stage too deep");
  lo_scaled_.resize(static_cast<std::size_t>(n_));
  for (long long j = 0; j < n_; ++j) {
    BigInt v = rat_scaled_by_pow2(a.heights[static_cast<std::size_t>(j)].lo, stage_);
    lo_scaled_[static_cast<std::size_t>(j)] = mpz_get_si(v.get_mpz_t());
  }
  long long half = 1ll << stage_;
  hist_.assign(static_cast<std::size_t>(n_) + 1,
               std::vector<long long>(static_cast<std::size_t>(2 * half + 1), 0));
  for (long long s = 0; s <= n_; ++s) {
    auto& h = hist_[static_cast<std::size_t>(s)];
    for (long long j = 0; j + s < n_; ++j) {
      long long d = lo_scaled_[static_cast<std::size_t>(j + s)] - lo_scaled_[static_cast<std::size_t>(j)];
      h[static_cast<std::size_t>(d + half)] += 1;
    }
  }
}

long long SelfOverlapTable::count(long long shift, long long d) const {
  if (shift < 0 || shift > n_) return 0;
  long long half = 1ll << stage_;
  if (d < -half || d > half) return 0;
  return hist_[static_cast<std::size_t>(shift)][static_cast<std::size_t>(d + half)];
}

Rational SelfOverlapTable::overlap_at_shift(long long shift, const Rational& y) const {
  if (shift < 0 || shift > n_) return Rational(0);
  Rational cell = rat_pow2(-stage_);
  Rational w = Rational(1) / Rational(static_cast<long>(n_));
  // Only the height-difference bins within one cell of y contribute.
  Rational y_scaled = y / cell;
  BigInt fl = rat_floor(y_scaled);
  if (!fl.fits_slong_p()) return Rational(0);
  long long d0 = mpz_get_si(fl.get_mpz_t());
  Rational total(0);
  for (long long d = d0; d <= d0 + 1; ++d) {
    long long c = count(shift, d);
    if (c == 0) continue;
    Rational gap = abs(Rational(Rational(static_cast<long>(d)) * cell - y));
    if (gap < cell) total += rat_int(c) * (cell - gap);
  }
  return total * w;
}

Rational SelfOverlapTable::overlap_at_grid(long long shift, long long t) const {
  return rat_int(count(shift, t)) * rat_pow2(-stage_) / rat_int(n_);
}

std::variant<RefinePlan, PlanRefusal> plan_schedule(int k_max, PlanMode mode,
                                                    const DeskOverrides& overrides,
                                                    long long budget) {
  if (k_max < 1) throw std::invalid_argument("plan_schedule: k_max >= 1");
  if (budget < 1) throw std::invalid_argument("plan_schedule: budget >= 1");
  RefinePlan plan;
  plan.mode = mode;
  BigInt N_prev = 1;
  for (int k = 1; k <= k_max; ++k) {
    StagePlan sp;
    sp.stage = k;
    if (mode == PlanMode::paper) {
      // epsilon_k = 2^-(2k+3) / N_{k-1}; N_k is a multiple of N_{k-1}
      // strictly above N_{k-1}/epsilon_k = N_{k-1}^2 * 2^(2k+3).
      sp.epsilon = rat_pow2(-2 * k - 3) / Rational(N_prev);
      sp.epsilon_fixed = true;
      BigInt required = N_prev * (N_prev * (BigInt(1) << (2 * k + 3)) + 1);
      BigInt chosen = required;
      if (static_cast<int>(overrides.n.size()) >= k && overrides.n[static_cast<std::size_t>(k - 1)] > 0) {
        BigInt cand = N_prev * static_cast<long>(overrides.n[static_cast<std::size_t>(k - 1)]);
        if (cand < required)
          throw std::invalid_argument("plan_schedule: override N_k below the paper-mode minimum");
        chosen = cand;
      }
      if (chosen > static_cast<long>(budget)) return PlanRefusal{k, sp.epsilon, required, budget};
      sp.N = mpz_get_si(chosen.get_mpz_t());
      sp.n = mpz_get_si(BigInt(chosen / N_prev).get_mpz_t());
      N_prev = chosen;
    } else {
      if (static_cast<int>(overrides.n.size()) < k)
        throw std::invalid_argument("plan_schedule: desk mode needs n_k for every stage");
      long long n_k = overrides.n[static_cast<std::size_t>(k - 1)];
      if (n_k < 1) throw std::invalid_argument("plan_schedule: n_k >= 1");
      BigInt N_k = N_prev * static_cast<long>(n_k);
      if (N_k > static_cast<long>(budget)) return PlanRefusal{k, sp.epsilon, N_k, budget};
      sp.n = n_k;
      sp.N = mpz_get_si(BigInt(N_k).get_mpz_t());
      if (static_cast<int>(overrides.epsilon.size()) >= k) {
        sp.epsilon = overrides.epsilon[static_cast<std::size_t>(k - 1)];
        sp.epsilon_fixed = true;
      }
      N_prev = N_k;
    }
    plan.stages.push_back(sp);
  }
  return plan;
}

const ColumnSet& Chain::at(int k) const {
  static const ColumnSet a0 = ColumnSet::unit_square();
  if (k == 0) return a0;
  return stages.at(static_cast<std::size_t>(k - 1)).set;
}

Chain build_chain(const RefinePlan& plan, std::uint64_t seed, int max_attempts) {
  Chain chain;
  chain.mode = plan.mode;
  chain.seed = seed;
  ColumnSet current = ColumnSet::unit_square();
  for (const auto& sp : plan.stages) {
    ChainStage st{sp, SignSeq({1}), 0, Rational(0), current};
    std::uint64_t stage_seed = rng_key(seed, static_cast<std::uint64_t>(sp.stage) << 8);
    int n = static_cast<int>(sp.N);
    if (sp.epsilon_fixed) {
      SampleResult res = sample_eta(n, sp.epsilon, max_attempts, stage_seed);
      if (!res.eta)
        throw std::runtime_error("build_chain: stage " + std::to_string(sp.stage) +
                                 " found no passing sequence in " + std::to_string(res.attempts_used) +
                                 " attempts");
      st.eta = *res.eta;
      st.attempts = res.attempts_used;
    } else {
      st.eta = draw_eta(n, stage_seed, 1);
      st.attempts = 1;
    }
    st.achieved_epsilon = rat_int(pairs_max_margin(st.eta) + 1) / (4 * Rational(n));
    if (!st.plan.epsilon_fixed) st.plan.epsilon = st.achieved_epsilon;
    current = refine(current, st.eta);
    st.set = current;
    chain.stages.push_back(std::move(st));
  }
  return chain;
}

namespace {

struct PairPrecondition {
  bool holds = true;
  int worst_shift = 0;
  WindowPattern worst_pattern = WindowPattern::U1;
  long long worst_count = 0;
  Rational worst_bound;
};

// V-pattern cardinalities of (alpha, beta) across every shift, against
// (n - shift)/4 + eps * n.
PairPrecondition pair_precondition(const SignSeq& alpha, const SignSeq& beta, const Rational& eps) {
  int n = alpha.n();
  PairPrecondition out;
  long long best_m4 = LLONG_MIN;
  Rational eps_n4 = 4 * eps * n;
  for (int k = 0; k < n; ++k) {
    long long counts[4] = {0, 0, 0, 0};
    for (int i = 1; i <= n - k; ++i) {
      bool a = alpha.values[static_cast<std::size_t>(i - 1 + k)] == 1;
      bool b = beta.values[static_cast<std::size_t>(i - 1)] == 1;
      int p = a ? (b ? 0 : 2) : (b ? 3 : 1);  // V1, V2, V3, V4
      counts[p] += 1;
    }
    for (int p = 0; p < 4; ++p) {
      long long m4 = 4 * counts[p] - (n - k);
      if (m4 > best_m4) {
        best_m4 = m4;
        out.worst_shift = k;
        out.worst_pattern = static_cast<WindowPattern>(p);
        out.worst_count = counts[p];
      }
    }
  }
  out.worst_bound = Rational(n - out.worst_shift) / 4 + eps * n;
  out.holds = rat_int(best_m4) < eps_n4;
  return out;
}

}  // namespace

Lemma7Cert check_lemma7(const Rect& r, const SignSeq& alpha, const SignSeq& beta,
                        const Rational& eps) {
  if (alpha.n() != beta.n()) throw std::invalid_argument("check_lemma7: length mismatch");
  if (!(eps > 0)) throw std::invalid_argument("check_lemma7: eps must be positive");
  int n = alpha.n();

  Lemma7Cert cert;
  cert.epsilon = eps;

  PairPrecondition pre = pair_precondition(alpha, beta, eps);
  cert.precondition_holds = pre.holds;
  cert.pre_worst_shift = pre.worst_shift;
  cert.pre_worst_pattern = pre.worst_pattern;
  cert.pre_worst_count = pre.worst_count;
  cert.pre_worst_bound = pre.worst_bound;

  Rational w = r.width(), h = r.height();
  Rational area_r = w * h;
  Rational col = w / n;
  Rational half = h / 2;

  // Signed half-intervals of the two refinements.
  std::vector<YInterval> ha, hb;
  ha.reserve(static_cast<std::size_t>(n));
  hb.reserve(static_cast<std::size_t>(n));
  YInterval full{r.y_lo, r.y_hi};
  for (int i = 0; i < n; ++i) {
    ha.push_back(halve(full, alpha.values[static_cast<std::size_t>(i)]));
    hb.push_back(halve(full, beta.values[static_cast<std::size_t>(i)]));
  }

  // lhs at the grid translation (d*col, y): columns align exactly.
  auto lhs_at = [&](int d, const Rational& y) {
    Rational sum(0);
    for (int j = 1; j + d <= n; ++j) {
      const auto& A = ha[static_cast<std::size_t>(j + d - 1)];
      const auto& B = hb[static_cast<std::size_t>(j - 1)];
      Rational yl = std::max(A.lo, Rational(B.lo + y));
      Rational yh = std::min(A.hi, Rational(B.hi + y));
      if (yl < yh) sum += yh - yl;
    }
    return sum * col;
  };

  std::vector<Rational> ys = {-h, -half, Rational(0), half, h};
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());  // collapses when h == 0

  bool ok = true;
  bool have_worst = false;
  cert.worst_lhs = 0;
  cert.worst_rhs = 0;
  for (int d = 0; d <= n; ++d) {
    Rational x = col * d;
    Rational x_gap = w - x;  // max(0, w - x) with x <= w on the grid
    for (const auto& y : ys) {
      Rational rhs = Rational(1) / 4 * x_gap * (h - abs(y)) + eps * area_r;
      Rational lhs = lhs_at(d, y);
      if (lhs == 0 && rhs == 0) {
        cert.flagged_corners.push_back(Vector2{x, y});
      } else if (!(lhs < rhs)) {
        ok = false;
      }
      if (!have_worst || lhs - rhs > cert.worst_lhs - cert.worst_rhs) {
        have_worst = true;
        cert.worst_corner = Vector2{x, y};
        cert.worst_lhs = lhs;
        cert.worst_rhs = rhs;
      }
    }
  }
  // Outside the grid range the supports are disjoint: lhs = 0 and
  // rhs = eps*|R|, strict unless R is degenerate (flagged above via the
  // boundary corners, where both sides already vanish).
  if (area_r == 0 && cert.flagged_corners.empty())
    cert.flagged_corners.push_back(Vector2{w, h});
  cert.conclusion_holds = ok;
  return cert;
}

Lemma8Cert check_lemma8(const Chain& chain, int j, int k) {
  if (!(0 <= j && j <= k && k <= chain.depth()))
    throw std::invalid_argument("check_lemma8: need 0 <= j <= k <= depth");
  const ColumnSet& ak = chain.at(k);
  long long N = ak.columns;
  long long Nj = chain.at(j).columns;
  if (N % Nj != 0) throw std::invalid_argument("check_lemma8: N_j does not divide N_k");

  Lemma8Cert cert;
  cert.j = j;
  cert.k = k;
  cert.bound = rat_pow2(j - 2 * k) - rat_pow2(-3 * k);

  SelfOverlapTable table(ak);
  long long half = 1ll << k;
  long long m_min = N / Nj;

  // count <= bound * N * 2^k, exact; the floor makes it one integer compare.
  Rational threshold = cert.bound * Rational(static_cast<long>(N)) * rat_pow2(k);
  BigInt thr_floor = rat_floor(threshold);
  long long thr = thr_floor.fits_slong_p() ? mpz_get_si(thr_floor.get_mpz_t()) : LLONG_MAX;

  bool ok = cert.bound >= 0;  // outer region: overlap 0 vs the bound
  long long worst_count = -1;
  long long worst_m = m_min, worst_t = -half;
  for (long long m = m_min; m <= N; ++m) {
    for (long long t = -half; t <= half; ++t) {
      long long c = table.count(m, t);
      ++cert.corners_checked;
      if (c > thr) ok = false;
      if (c > worst_count) {
        worst_count = c;
        worst_m = m;
        worst_t = t;
      }
    }
  }
  cert.pass = ok;
  cert.worst_corner = Vector2{Rational(static_cast<long>(worst_m)) / Rational(static_cast<long>(N)),
                              Rational(static_cast<long>(worst_t)) * rat_pow2(-k)};
  cert.worst_overlap = table.overlap_at_grid(worst_m, worst_t);
  return cert;
}

ChainLemma7Report verify_chain_lemma7(const Chain& chain, int stage, int workers) {
  if (stage < 1 || stage > chain.depth())
    throw std::invalid_argument("verify_chain_lemma7: bad stage");
  const ChainStage& st = chain.stages[static_cast<std::size_t>(stage - 1)];
  const ColumnSet& parent = chain.at(stage - 1);
  long long np = parent.columns;
  int n_split = static_cast<int>(st.plan.n);

  ChainLemma7Report report;
  report.stage = stage;
  report.epsilon = st.achieved_epsilon * Rational(static_cast<long>(np));

  auto block = [&](long long j) {  // alpha^stage_j, 1-based column
    std::vector<std::int8_t> v(st.eta.values.begin() + static_cast<std::ptrdiff_t>((j - 1) * n_split),
                               st.eta.values.begin() + static_cast<std::ptrdiff_t>(j * n_split));
    return SignSeq(std::move(v));
  };
  auto parent_rect = [&](long long j) {
    Rational w = parent.column_width();
    const auto& iv = parent.heights[static_cast<std::size_t>(j - 1)];
    return Rect(w * static_cast<long>(j - 1), w * static_cast<long>(j), iv.lo, iv.hi);
  };

  // Ordered distinct pairs (j1, j2), then the same-column pairs at doubled
  // epsilon against the shift-by-one companion.
  struct Task {
    long long j1, j2;
    bool same;
  };
  std::vector<Task> tasks;
  tasks.reserve(static_cast<std::size_t>(np * np));
  for (long long j1 = 1; j1 <= np; ++j1)
    for (long long j2 = 1; j2 <= np; ++j2)
      if (j1 != j2) tasks.push_back({j1, j2, false});
  for (long long j = 1; j <= np; ++j) tasks.push_back({j, j, true});

  std::vector<std::uint8_t> conclusion_ok(tasks.size(), 0), precondition_ok(tasks.size(), 0);
  std::vector<Lemma7Cert> certs(tasks.size());
  parallel_chunks(static_cast<std::int64_t>(tasks.size()), workers,
                  [&](std::int64_t b, std::int64_t e) {
                    for (std::int64_t i = b; i < e; ++i) {
                      const Task& task = tasks[static_cast<std::size_t>(i)];
                      SignSeq alpha = block(task.j2);
                      Lemma7Cert cert;
                      if (task.same) {
                        std::vector<std::int8_t> shifted(alpha.values.size());
                        shifted[0] = 1;
                        std::copy(alpha.values.begin(), alpha.values.end() - 1, shifted.begin() + 1);
                        cert = check_lemma7(parent_rect(task.j2), alpha, SignSeq(std::move(shifted)),
                                            2 * report.epsilon);
                      } else {
                        cert = check_lemma7(parent_rect(task.j2), alpha, block(task.j1),
                                            report.epsilon);
                      }
                      conclusion_ok[static_cast<std::size_t>(i)] = cert.conclusion_holds ? 1 : 0;
                      precondition_ok[static_cast<std::size_t>(i)] = cert.precondition_holds ? 1 : 0;
                      certs[static_cast<std::size_t>(i)] = std::move(cert);
                    }
                  });

  report.pairs_checked = static_cast<long long>(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!conclusion_ok[i]) ++report.conclusion_failures;
    if (!precondition_ok[i]) ++report.precondition_failures;
    if ((!conclusion_ok[i] || !precondition_ok[i]) && !report.first_failure)
      report.first_failure = certs[i];
  }
  return report;
}

}  // namespace sweeplab
