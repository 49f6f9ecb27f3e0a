// Independent oracles for the window checkers.
//
// naive_pairs_cert recounts every window from scratch (the O(n^4) route) and
// reproduces the full certificate including the tie-break, so certificates
// can be compared field by field. dnc_pairs_verdict reaches the same verdict
// through a divide-and-conquer window maximum, an algorithmically independent
// O(n^2) route usable at n up to a few thousand.
#pragma once

#include <algorithm>
#include <tuple>

#include "sweeplab/signs.hpp"

namespace sweeplab::testoracle {

inline long long count_pattern(const SignSeq& eta, int k, int u, int v, int pattern) {
  long long c = 0;
  for (int i = u + 1; i <= v; ++i) {
    bool a = eta.values[static_cast<std::size_t>(i - 1)] == 1;
    bool b = eta.values[static_cast<std::size_t>(i - 1 + k)] == 1;
    bool hit = pattern == 0   ? (a && b)
               : pattern == 1 ? (!a && !b)
               : pattern == 2 ? (a && !b)
                              : (!a && b);
    if (hit) ++c;
  }
  return c;
}

// Full recount of every (k, u, v, pattern); identical tie-break to the fast
// checker: larger 4*count-(v-u) first, then smallest (k, u, v, pattern).
inline DiscrepancyCert naive_pairs_cert(const SignSeq& eta, const Rational& eps) {
  int n = eta.n();
  long long best_m4 = -1000000;
  int bk = 0, bu = 0, bv = 0, bp = 0;
  long long bcount = 0;
  for (int k = 1; k <= n - 1; ++k)
    for (int u = 0; u < n - k; ++u)
      for (int v = u + 1; v <= n - k; ++v)
        for (int p = 0; p < 4; ++p) {
          long long c = count_pattern(eta, k, u, v, p);
          long long m4 = 4 * c - (v - u);
          if (m4 > best_m4 ||
              (m4 == best_m4 && std::tie(k, u, v, p) < std::tie(bk, bu, bv, bp))) {
            best_m4 = m4;
            bk = k;
            bu = u;
            bv = v;
            bp = p;
            bcount = c;
          }
        }
  DiscrepancyCert cert;
  cert.epsilon = eps;
  cert.checker = CheckerId::pairs;
  cert.worst.k = bk;
  cert.worst.u = bu;
  cert.worst.v = bv;
  cert.worst.pattern = static_cast<WindowPattern>(bp);
  cert.worst.count = bcount;
  cert.worst.bound = Rational(bv - bu) / 4 + eps * n;
  cert.pass = rat_int(bcount) < cert.worst.bound;
  return cert;
}

namespace detail {

struct MaxDiff {
  long long best;   // max over u < v in range of a[v] - a[u]
  long long minv;   // min over range
  long long maxv;   // max over range
};

inline MaxDiff maxdiff(const std::vector<long long>& a, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return {-(1ll << 62), a[lo], a[lo]};
  std::size_t mid = (lo + hi) / 2;
  MaxDiff l = maxdiff(a, lo, mid);
  MaxDiff r = maxdiff(a, mid, hi);
  MaxDiff out;
  out.best = std::max({l.best, r.best, r.maxv - l.minv});
  out.minv = std::min(l.minv, r.minv);
  out.maxv = std::max(l.maxv, r.maxv);
  return out;
}

}  // namespace detail

// Verdict via divide and conquer over the prefix arrays.
inline bool dnc_pairs_verdict(const SignSeq& eta, const Rational& eps) {
  int n = eta.n();
  Rational threshold = 4 * eps * n;
  for (int k = 1; k <= n - 1; ++k) {
    int len = n - k;
    for (int p = 0; p < 4; ++p) {
      std::vector<long long> a(static_cast<std::size_t>(len) + 1);
      long long prefix = 0;
      a[0] = 0;
      for (int i = 1; i <= len; ++i) {
        bool x = eta.values[static_cast<std::size_t>(i - 1)] == 1;
        bool y = eta.values[static_cast<std::size_t>(i - 1 + k)] == 1;
        bool hit = p == 0 ? (x && y) : p == 1 ? (!x && !y) : p == 2 ? (x && !y) : (!x && y);
        prefix += hit ? 1 : 0;
        a[static_cast<std::size_t>(i)] = 4 * prefix - i;
      }
      long long m4 = detail::maxdiff(a, 0, a.size()).best;
      if (!(rat_int(m4) < threshold)) return false;
    }
  }
  return true;
}

// Moments verdict by window enumeration with prefix lookups.
inline bool naive_moments_verdict(const SignSeq& eta, const Rational& eps) {
  int n = eta.n();
  Rational en = eps * n;
  std::vector<long long> prefix(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) prefix[static_cast<std::size_t>(i)] = prefix[static_cast<std::size_t>(i - 1)] + eta.values[static_cast<std::size_t>(i - 1)];
  for (int k = 1; k <= n - 1; ++k) {
    for (int u = 0; u < n - k; ++u)
      for (int v = u + 1; v <= n - k; ++v) {
        long long base = prefix[static_cast<std::size_t>(v)] - prefix[static_cast<std::size_t>(u)];
        long long shift = prefix[static_cast<std::size_t>(v + k)] - prefix[static_cast<std::size_t>(u + k)];
        long long prod = 0;
        for (int i = u + 1; i <= v; ++i)
          prod += eta.values[static_cast<std::size_t>(i - 1)] * eta.values[static_cast<std::size_t>(i - 1 + k)];
        if (!(rat_int(std::abs(base)) < en)) return false;
        if (!(rat_int(std::abs(shift)) < en)) return false;
        if (!(rat_int(std::abs(prod)) < en)) return false;
      }
  }
  return true;
}

}  // namespace sweeplab::testoracle
