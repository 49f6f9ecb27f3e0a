#include "sweeplab/sweep_audit.hpp"

#include <algorithm>
#include <stdexcept>

#include "sweeplab/rng.hpp"

namespace sweeplab {

Rational sweep_area(const RectUnion& a, const Staircase& h) {
  return area(minkowski_staircase(a, h));
}

CsEvaluator::CsEvaluator(const ColumnSet& a) : a_(a), table_(a), area_(a.area()) {}

namespace {

// Sample values y_i = h(i/N) for i = 1..N in one merged walk.
std::vector<Rational> sample_staircase(const Staircase& h, long long n) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(n));
  const auto& breaks = h.breaks();
  const auto& values = h.values();
  std::size_t piece = 0;
  for (long long i = 1; i <= n; ++i) {
    Rational x = Rational(static_cast<long>(i)) / Rational(static_cast<long>(n));
    while (piece + 1 < values.size() && x >= breaks[piece + 1]) ++piece;
    out.push_back(values[piece]);
  }
  return out;
}

// Maximal index ranges [start, end] on which h(i/N) is constant, with the
// piece index, covering i = 1..n.
struct PieceRange {
  long long start, end;
  std::size_t piece;
};

std::vector<PieceRange> piece_ranges(const Staircase& h, long long n) {
  const auto& breaks = h.breaks();
  std::vector<PieceRange> out;
  auto ceil_times_n = [&](const Rational& b) {
    BigInt q;
    Rational bn = b * Rational(static_cast<long>(n));
    mpz_cdiv_q(q.get_mpz_t(), bn.get_num_mpz_t(), bn.get_den_mpz_t());
    return mpz_get_si(q.get_mpz_t());
  };
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    long long start = std::max<long long>(1, ceil_times_n(breaks[p]));
    long long end = ceil_times_n(breaks[p + 1]) - 1;
    if (p + 2 == breaks.size()) end = n;  // h(1) takes the last piece's value
    if (start <= end) out.push_back({start, end, p});
  }
  return out;
}

Rational rational_from_u128(unsigned __int128 v) {
  BigInt hi = bigint_from_u64(static_cast<std::uint64_t>(v >> 64));
  BigInt lo = bigint_from_u64(static_cast<std::uint64_t>(v));
  return Rational((hi << 64) + lo);
}

// Largest power-of-two denominator across the values, or 0 if a value is not
// dyadic or the exponent exceeds the cap.
long dyadic_exponent(const std::vector<Rational>& values, long cap) {
  long e = 0;
  for (const auto& v : values) {
    if (!rat_is_dyadic(v)) return -1;
    long bits = static_cast<long>(mpz_sizeinbase(v.get_den_mpz_t(), 2)) - 1;
    e = std::max(e, bits);
    if (e > cap) return -1;
  }
  return e;
}

}  // namespace

Rational CsEvaluator::certificate(const Staircase& h) const {
  long long n = a_.columns;
  int k = a_.stage;
  std::vector<PieceRange> ranges = piece_ranges(h, n);

  Rational s = Rational(static_cast<long>(n)) * area_;
  Rational q = s;

  // Pairs grouped by shift d; h(i/N) is piecewise constant in i, so runs of
  // constant (piece(i), piece(i+d)) share one histogram evaluation.
  long e = dyadic_exponent(h.values(), 40);
  if (e >= 0) {
    // Scaled-integer path: all y differences are multiples of 1/L with
    // L = 2^max(k, e); one histogram bin term costs a few integer ops.
    long le = std::max<long>(k, e);
    long long scale = 1ll << le;
    long long cell_units = 1ll << (le - k);  // 2^-k in 1/L units
    std::vector<long long> val_units(h.values().size());
    for (std::size_t p = 0; p < h.values().size(); ++p)
      val_units[p] = mpz_get_si(BigInt(rat_scaled_by_pow2(h.values()[p], le)).get_mpz_t());

    unsigned __int128 acc = 0;
    for (long long d = 1; d < n; ++d) {
      std::size_t ia = 0, ib = 0;  // ranges containing i and i+d
      long long i = 1;
      while (i + d <= n) {
        while (ranges[ia].end < i) ++ia;
        while (ranges[ib].end < i + d) ++ib;
        long long run_end = std::min(ranges[ia].end, ranges[ib].end - d);
        run_end = std::min(run_end, n - d);
        long long run_len = run_end - i + 1;
        long long y_units = val_units[ranges[ib].piece] - val_units[ranges[ia].piece];
        long long d0 = y_units >= 0 ? y_units / cell_units : -((-y_units + cell_units - 1) / cell_units);
        for (long long dd = d0; dd <= d0 + 1; ++dd) {
          long long gap = dd * cell_units - y_units;
          if (gap < 0) gap = -gap;
          if (gap >= cell_units) continue;
          long long cnt = table_.count(d, dd);
          if (cnt)
            acc += static_cast<unsigned __int128>(run_len) *
                   static_cast<unsigned __int128>(cnt) *
                   static_cast<unsigned __int128>(cell_units - gap);
        }
        i = run_end + 1;
      }
    }
    // Each accumulated unit is (1/L) of interval length per column pair of
    // width 1/n; pairs count twice in Q.
    q += 2 * rational_from_u128(acc) /
         (Rational(static_cast<long>(scale)) * Rational(static_cast<long>(n)));
  } else {
    for (long long d = 1; d < n; ++d) {
      std::size_t ia = 0, ib = 0;
      long long i = 1;
      while (i + d <= n) {
        while (ranges[ia].end < i) ++ia;
        while (ranges[ib].end < i + d) ++ib;
        long long run_end = std::min(ranges[ia].end, ranges[ib].end - d);
        run_end = std::min(run_end, n - d);
        long long run_len = run_end - i + 1;
        Rational diff = h.values()[ranges[ib].piece] - h.values()[ranges[ia].piece];
        Rational ov = table_.overlap_at_shift(d, diff);
        if (ov != 0) q += 2 * Rational(static_cast<long>(run_len)) * ov;
        i = run_end + 1;
      }
    }
  }
  if (q == 0) return Rational(0);
  return s * s / q;
}

Rational CsEvaluator::union_area(const Staircase& h) const {
  long long n = a_.columns;
  std::vector<Rational> y = sample_staircase(h, n);
  RectUnion base = a_.to_rect_union();
  std::vector<Rect> all;
  all.reserve(static_cast<std::size_t>(n) * base.rects().size());
  for (long long i = 1; i <= n; ++i) {
    Rational dx = Rational(static_cast<long>(i)) / Rational(static_cast<long>(n));
    const Rational& dy = y[static_cast<std::size_t>(i - 1)];
    for (const auto& r : base.rects())
      all.emplace_back(r.x_lo + dx, r.x_hi + dx, r.y_lo + dy, r.y_hi + dy);
  }
  return area(RectUnion(std::move(all)));
}

Rational cs_lower_bound(const ColumnSet& a, const Staircase& h) {
  return CsEvaluator(a).certificate(h);
}

Rational ea_lower_bound(const RectUnion& a) {
  if (a.empty()) return Rational(0);
  const Rational* left = nullptr;
  for (const auto& r : a.rects())
    if (!left || r.x_lo < *left) left = &r.x_lo;
  std::vector<std::pair<Rational, Rational>> ivs;
  for (const auto& r : a.rects())
    if (r.x_lo == *left && r.width() > 0) ivs.emplace_back(r.y_lo, r.y_hi);
  if (ivs.empty()) return Rational(0);
  std::sort(ivs.begin(), ivs.end());
  Rational total(0);
  Rational lo = ivs[0].first, hi = ivs[0].second;
  for (std::size_t i = 1; i < ivs.size(); ++i) {
    if (ivs[i].first <= hi) {
      hi = std::max(hi, ivs[i].second);
    } else {
      total += hi - lo;
      lo = ivs[i].first;
      hi = ivs[i].second;
    }
  }
  total += hi - lo;
  return total;
}

Staircase fold_mod(const Staircase& g, const Rational& eps) {
  if (!(eps > 0)) throw std::invalid_argument("fold_mod: eps must be positive");
  std::vector<Rational> vals;
  vals.reserve(g.pieces());
  for (const auto& c : g.values()) vals.push_back(rat_mod(c, eps));
  return Staircase(g.breaks(), std::move(vals));
}

RectUnion phi_fold(const RectUnion& e, const Rational& eps) {
  if (!(eps > 0)) throw std::invalid_argument("phi_fold: eps must be positive");
  std::vector<Rect> out;
  for (const auto& r : e.rects()) {
    if (r.y_lo == r.y_hi) {
      out.emplace_back(r.x_lo, r.x_hi, rat_mod(r.y_lo, eps), rat_mod(r.y_lo, eps));
      continue;
    }
    BigInt i_lo = rat_floor(r.y_lo / eps);
    BigInt i_hi = rat_floor(r.y_hi / eps);
    for (BigInt i = i_lo; i <= i_hi; ++i) {
      Rational strip_lo = eps * Rational(i);
      Rational strip_hi = strip_lo + eps;
      Rational lo = std::max(r.y_lo, strip_lo);
      Rational hi = std::min(r.y_hi, strip_hi);
      if (lo < hi) out.emplace_back(r.x_lo, r.x_hi, lo - strip_lo, hi - strip_lo);
    }
  }
  return RectUnion(std::move(out));
}

Staircase perturb_compose(const Staircase& g, const Staircase& f, const Rational& eps) {
  for (const auto& v : f.values())
    if (v < 0 || v > eps)
      throw std::invalid_argument("perturb_compose: perturbation value outside [0, eps]");
  std::vector<Rational> breaks = g.breaks();
  breaks.insert(breaks.end(), f.breaks().begin(), f.breaks().end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<Rational> vals;
  vals.reserve(breaks.size() - 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    vals.push_back(g.value_at(breaks[i]) + f.value_at(breaks[i]));
  return Staircase(std::move(breaks), std::move(vals));
}

SweepReport sweep_report(const ColumnSet& a, const Staircase& h) {
  RectUnion u = a.to_rect_union();
  SweepReport rep;
  rep.exact_area = sweep_area(u, h);
  rep.lower_bound_cs = cs_lower_bound(a, h);
  rep.lower_bound_ea = ea_lower_bound(u);
  return rep;
}

SweepReport sweep_report(const RectUnion& a, const Staircase& h) {
  SweepReport rep;
  rep.exact_area = sweep_area(a, h);
  rep.lower_bound_cs = Rational(0);
  rep.lower_bound_ea = ea_lower_bound(a);
  return rep;
}

namespace {

// Random staircase with dyadic breaks and values; piece count in [1, 64].
Staircase random_staircase(std::uint64_t key, std::uint64_t index, int max_pieces) {
  int pieces = 1 + static_cast<int>(rng_below(key, index * 131ull, static_cast<std::uint64_t>(max_pieces)));
  const long grid = 4096;  // dyadic break grid
  std::vector<long> cuts;
  for (int i = 0; i < pieces - 1; ++i)
    cuts.push_back(1 + static_cast<long>(rng_below(key, index * 131ull + 1 + static_cast<std::uint64_t>(i), grid - 1)));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Rational> breaks;
  breaks.push_back(Rational(0));
  for (long c : cuts) breaks.push_back(Rational(c) / grid);
  breaks.push_back(Rational(1));
  std::vector<Rational> vals;
  const long vgrid = 512;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    long v = static_cast<long>(rng_below(key, index * 131ull + 64 + i, 2 * vgrid + 1)) - vgrid;
    vals.push_back(Rational(v) / vgrid);  // values in [-1, 1], dyadic
  }
  return Staircase(std::move(breaks), std::move(vals));
}

}  // namespace

AdversarialResult adversarial_search(const ColumnSet& a, int iters, std::uint64_t seed) {
  if (iters < 1) throw std::invalid_argument("adversarial_search: iters >= 1");
  CsEvaluator eval(a);
  std::uint64_t key = rng_key(seed, 0xad5ull);

  AdversarialResult best{Rational(0), Staircase::constant(Rational(0)), 0};
  bool have = false;
  int evaluated = 0;
  std::uint64_t draw = 0;
  while (evaluated < iters) {
    Staircase h = random_staircase(key, draw++, 64);
    Rational c = eval.certificate(h);
    ++evaluated;
    if (!have || c < best.min_certificate) {
      best.min_certificate = c;
      best.argmin = h;
      have = true;
    }
    // Greedy descent: nudge one piece value at a time while the certificate
    // improves and budget remains.
    Staircase cur = h;
    Rational cur_cert = c;
    const Rational step = Rational(1) / 512;
    bool improved = true;
    while (improved && evaluated < iters) {
      improved = false;
      for (std::size_t p = 0; p < cur.pieces() && evaluated < iters; ++p) {
        for (int dir : {+1, -1}) {
          if (evaluated >= iters) break;
          std::vector<Rational> vals = cur.values();
          vals[p] += dir * step;
          Staircase cand(cur.breaks(), std::move(vals));
          Rational cc = eval.certificate(cand);
          ++evaluated;
          if (cc < cur_cert) {
            cur = cand;
            cur_cert = cc;
            improved = true;
          }
        }
      }
      if (cur_cert < best.min_certificate) {
        best.min_certificate = cur_cert;
        best.argmin = cur;
      }
    }
  }
  best.evaluated = evaluated;
  return best;
}

}  // namespace sweeplab
