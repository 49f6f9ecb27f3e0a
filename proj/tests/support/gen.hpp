// Seeded random generators for test corpora. Everything is derived from the
// counter RNG so corpora are identical across runs and machines.
#pragma once

#include <utility>
#include <vector>

#include "sweeplab/geometry.hpp"
#include "sweeplab/polyline.hpp"
#include "sweeplab/rng.hpp"
#include "sweeplab/signs.hpp"
#include "sweeplab/staircase.hpp"

namespace sweeplab::testgen {

struct Draw {
  std::uint64_t key;
  std::uint64_t ctr = 0;

  std::uint64_t below(std::uint64_t n) { return rng_below(key, ctr++, n); }
  int sign() { return rng_sign(key, ctr++); }

  // Dyadic rational in [lo, hi] on a grid of the given denominator.
  Rational grid_rational(long lo_num, long hi_num, long den) {
    long span = hi_num - lo_num;
    long v = lo_num + static_cast<long>(below(static_cast<std::uint64_t>(span + 1)));
    return Rational(v) / den;
  }
};

inline Rect random_rect(Draw& d, long den = 32, long span_num = 64) {
  Rational x1 = d.grid_rational(0, span_num, den);
  Rational x2 = d.grid_rational(0, span_num, den);
  Rational y1 = d.grid_rational(0, span_num, den);
  Rational y2 = d.grid_rational(0, span_num, den);
  if (x2 < x1) std::swap(x1, x2);
  if (y2 < y1) std::swap(y1, y2);
  if (x1 == x2) x2 += Rational(1) / den;
  if (y1 == y2) y2 += Rational(1) / den;
  return Rect(x1, x2, y1, y2);
}

inline RectUnion random_union(Draw& d, int count, long den = 32, long span_num = 64) {
  std::vector<Rect> rects;
  rects.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) rects.push_back(random_rect(d, den, span_num));
  return RectUnion(std::move(rects));
}

inline Staircase random_staircase(Draw& d, int max_pieces, long value_den = 64,
                                  long value_span = 128) {
  int pieces = 1 + static_cast<int>(d.below(static_cast<std::uint64_t>(max_pieces)));
  const long grid = 1024;
  std::vector<long> cuts;
  for (int i = 0; i < pieces - 1; ++i)
    cuts.push_back(1 + static_cast<long>(d.below(grid - 1)));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Rational> breaks{Rational(0)};
  for (long c : cuts) breaks.push_back(Rational(c) / grid);
  breaks.push_back(Rational(1));
  std::vector<Rational> values;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    values.push_back(d.grid_rational(-value_span, value_span, value_den));
  return Staircase(std::move(breaks), std::move(values));
}

inline SignSeq random_signs(Draw& d, int n) {
  std::vector<std::int8_t> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(d.sign());
  return SignSeq(std::move(v));
}

// Random polyline with the given vertex count inside [0, span] x [0, span].
inline Polyline random_polyline(Draw& d, int vertices, long den = 64, long span_num = 64) {
  std::vector<std::pair<Rational, Rational>> pts;
  pts.reserve(static_cast<std::size_t>(vertices));
  while (static_cast<int>(pts.size()) < vertices) {
    Rational x = d.grid_rational(0, span_num, den);
    Rational y = d.grid_rational(0, span_num, den);
    if (!pts.empty() && pts.back() == std::pair{x, y}) continue;
    pts.emplace_back(std::move(x), std::move(y));
  }
  return Polyline(std::move(pts));
}

// Function-graph polyline: strictly increasing x.
inline Polyline random_function_polyline(Draw& d, int vertices, long den = 64) {
  std::vector<std::pair<Rational, Rational>> pts;
  long x = 0;
  for (int i = 0; i < vertices; ++i) {
    pts.emplace_back(Rational(x) / den, d.grid_rational(0, 64, den));
    x += 1 + static_cast<long>(d.below(8));
  }
  return Polyline(std::move(pts));
}

}  // namespace sweeplab::testgen
