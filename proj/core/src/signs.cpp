#include "sweeplab/signs.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <stdexcept>
#include <tuple>

#include "sweeplab/parallel.hpp"
#include "sweeplab/rng.hpp"

namespace sweeplab {

SignSeq::SignSeq(std::vector<std::int8_t> v) : values(std::move(v)) {
  if (values.empty()) throw std::invalid_argument("SignSeq: empty");
  for (auto s : values)
    if (s != 1 && s != -1) throw std::invalid_argument("SignSeq: entries must be +/-1");
}

SignSeq SignSeq::negated() const {
  std::vector<std::int8_t> v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v[i] = static_cast<std::int8_t>(-values[i]);
  return SignSeq(std::move(v));
}

namespace {

void check_inputs(const SignSeq& eta, const Rational& eps) {
  if (eta.n() < 2) throw std::invalid_argument("checker: need n >= 2");
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("checker: eps must be in (0,1)");
}

// Candidate ordering: larger scaled margin wins; ties by (k, u, v, pattern).
struct Candidate {
  long long m4 = LLONG_MIN;
  int k = 0, u = 0, v = 0;
  int pattern = 0;

  bool better_than(const Candidate& o) const {
    if (m4 != o.m4) return m4 > o.m4;
    return std::tie(k, u, v, pattern) < std::tie(o.k, o.u, o.v, o.pattern);
  }
};

// Per (shift, pattern): max over windows of 4*count(u,v) - (v-u), scanning
// v with a running minimum of 4*prefix(u) - u (earliest u on ties).
void scan_patterns(const SignSeq& eta, int k, Candidate& best) {
  const auto& s = eta.values;
  int len = eta.n() - k;
  long long prefix[4] = {0, 0, 0, 0};
  long long runmin[4] = {0, 0, 0, 0};
  int runmin_u[4] = {0, 0, 0, 0};
  for (int i = 1; i <= len; ++i) {
    int idx = (s[i - 1] == 1 ? 2 : 0) | (s[i - 1 + k] == 1 ? 1 : 0);
    // idx: 3 -> U1, 0 -> U2, 2 -> U3, 1 -> U4
    static constexpr int kPattern[4] = {1, 3, 2, 0};
    int p = kPattern[idx];
    prefix[p] += 1;
    for (int q = 0; q < 4; ++q) {
      long long cand = 4 * prefix[q] - i - runmin[q];
      Candidate c{cand, k, runmin_u[q], i, q};
      if (c.better_than(best)) best = c;
      long long key = 4 * prefix[q] - i;
      if (key < runmin[q]) {
        runmin[q] = key;
        runmin_u[q] = i;
      }
    }
  }
}

}  // namespace

DiscrepancyCert verify_pairs(const SignSeq& eta, const Rational& eps) {
  check_inputs(eta, eps);
  int n = eta.n();
  Candidate best;
  for (int k = 1; k <= n - 1; ++k) scan_patterns(eta, k, best);

  DiscrepancyCert cert;
  cert.epsilon = eps;
  cert.checker = CheckerId::pairs;
  cert.worst.k = best.k;
  cert.worst.u = best.u;
  cert.worst.v = best.v;
  cert.worst.pattern = static_cast<WindowPattern>(best.pattern);
  cert.worst.count = (best.m4 + (best.v - best.u)) / 4;
  cert.worst.bound = Rational(best.v - best.u) / 4 + eps * n;
  cert.pass = rat_int(cert.worst.count) < cert.worst.bound;
  return cert;
}

long long pairs_max_margin(const SignSeq& eta) {
  if (eta.n() < 2) throw std::invalid_argument("pairs_max_margin: need n >= 2");
  Candidate best;
  for (int k = 1; k <= eta.n() - 1; ++k) scan_patterns(eta, k, best);
  return best.m4;
}

bool pairs_pass(const SignSeq& eta, const Rational& eps) {
  check_inputs(eta, eps);
  int n = eta.n();
  // 4*count - (v-u) < 4*eps*n, all integer on the left; compare against the
  // exact rational threshold once per shift.
  Rational threshold = 4 * eps * n;
  for (int k = 1; k <= n - 1; ++k) {
    Candidate best;
    scan_patterns(eta, k, best);
    if (!(rat_int(best.m4) < threshold)) return false;
  }
  return true;
}

namespace {

// Max |prefix(v) - prefix(u)| over u < v in [lo, hi], with the deterministic
// earliest-extreme window reconstruction.
struct AbsWindow {
  long long value = -1;
  int u = 0, v = 0;
};

AbsWindow max_abs_window(const std::vector<long long>& prefix, int lo, int hi) {
  int imax = lo, imin = lo;
  for (int i = lo + 1; i <= hi; ++i) {
    if (prefix[i] > prefix[imax]) imax = i;
    if (prefix[i] < prefix[imin]) imin = i;
  }
  AbsWindow w;
  w.value = prefix[imax] - prefix[imin];
  int u = std::min(imax, imin);
  // Earliest index achieving the u-side extreme, then the earliest partner
  // after it.
  long long uval = prefix[u];
  for (int i = lo; i <= hi; ++i)
    if (prefix[i] == uval) {
      u = i;
      break;
    }
  long long other = uval == prefix[imax] ? prefix[imin] : prefix[imax];
  int v = u;
  for (int i = u + 1; i <= hi; ++i)
    if (prefix[i] == other) {
      v = i;
      break;
    }
  w.u = u;
  w.v = v;
  return w;
}

}  // namespace

DiscrepancyCert verify_moments(const SignSeq& eta, const Rational& eps) {
  check_inputs(eta, eps);
  int n = eta.n();
  const auto& s = eta.values;

  std::vector<long long> prefix(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) prefix[i] = prefix[i - 1] + s[i - 1];

  struct MCand {
    long long value = -1;
    int k = 0, u = 0, v = 0;
    int pattern = 4;

    bool better_than(const MCand& o) const {
      if (value != o.value) return value > o.value;
      return std::tie(k, u, v, pattern) < std::tie(o.k, o.u, o.v, o.pattern);
    }
  };
  MCand best;

  // Both sum families report the actual window (u, v] in eta indexing, k = 0.
  AbsWindow base = max_abs_window(prefix, 0, n - 1);
  best = MCand{base.value, 0, base.u, base.v, static_cast<int>(WindowPattern::SumBase)};
  AbsWindow shifted = max_abs_window(prefix, 1, n);
  MCand sh{shifted.value, 0, shifted.u, shifted.v, static_cast<int>(WindowPattern::SumShifted)};
  if (sh.better_than(best)) best = sh;

  std::vector<long long> pp;
  for (int k = 1; k <= n - 1; ++k) {
    int len = n - k;
    pp.assign(static_cast<std::size_t>(len) + 1, 0);
    for (int i = 1; i <= len; ++i) pp[i] = pp[i - 1] + s[i - 1] * s[i - 1 + k];
    AbsWindow w = max_abs_window(pp, 0, len);
    MCand c{w.value, k, w.u, w.v, static_cast<int>(WindowPattern::SumProduct)};
    if (c.better_than(best)) best = c;
  }

  DiscrepancyCert cert;
  cert.epsilon = eps;
  cert.checker = CheckerId::moments;
  cert.worst.k = best.k;
  cert.worst.u = best.u;
  cert.worst.v = best.v;
  cert.worst.pattern = static_cast<WindowPattern>(best.pattern);
  cert.worst.count = best.value;
  cert.worst.bound = eps * n;
  cert.pass = rat_int(cert.worst.count) < cert.worst.bound;
  return cert;
}

SignSeq draw_eta(int n, std::uint64_t seed, int attempt) {
  std::uint64_t key = rng_key(seed, static_cast<std::uint64_t>(attempt));
  std::vector<std::int8_t> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::uint64_t word = rng_value(key, static_cast<std::uint64_t>(i) >> 6);
    v[static_cast<std::size_t>(i)] = (word >> (i & 63)) & 1 ? 1 : -1;
  }
  return SignSeq(std::move(v));
}

SampleResult sample_eta(int n, const Rational& eps, int max_attempts, std::uint64_t seed,
                        int workers) {
  if (n < 2) throw std::invalid_argument("sample_eta: need n >= 2");
  if (max_attempts < 1) throw std::invalid_argument("sample_eta: need max_attempts >= 1");

  std::atomic<int> next{1};
  std::atomic<int> best_success{max_attempts + 1};
  int nw = workers <= 0 ? default_workers() : workers;
  parallel_chunks(nw, nw, [&](std::int64_t, std::int64_t) {
    for (;;) {
      int t = next.fetch_add(1);
      if (t > max_attempts || t >= best_success.load()) return;
      SignSeq candidate = draw_eta(n, seed, t);
      if (pairs_pass(candidate, eps)) {
        int cur = best_success.load();
        while (t < cur && !best_success.compare_exchange_weak(cur, t)) {
        }
        return;
      }
    }
  });

  SampleResult out;
  int win = best_success.load();
  if (win <= max_attempts) {
    out.eta = draw_eta(n, seed, win);
    out.attempts_used = win;
  } else {
    out.attempts_used = max_attempts;
  }
  return out;
}

}  // namespace sweeplab
