#include "sweeplab/polyline.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#include "sweeplab/parallel.hpp"

namespace sweeplab {

Polyline::Polyline(std::vector<std::pair<Rational, Rational>> p) : pts(std::move(p)) {
  if (pts.size() < 2) throw std::invalid_argument("Polyline: need at least one edge");
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i] == pts[i - 1])
      throw std::invalid_argument("Polyline: consecutive vertices must be distinct");
}

Segment2::Segment2(Rational x0_, Rational y0_, Rational dx_, Rational dy_)
    : x0(std::move(x0_)), y0(std::move(y0_)), dx(std::move(dx_)), dy(std::move(dy_)) {
  if (dx == 0 && dy == 0) throw std::invalid_argument("Segment2: zero extent");
}

Rational total_variation(std::span<const Rational> values) {
  if (values.empty()) throw std::invalid_argument("total_variation: empty list");
  Rational v(0);
  for (std::size_t i = 1; i < values.size(); ++i) v += abs(values[i] - values[i - 1]);
  return v;
}

namespace {

struct Line {  // y = a + b*x
  Rational a, b;
  Rational at(const Rational& x) const { return a + b * x; }
};

// Vertical span of one parallelogram: on [x_lo, x_hi] the cross-section is
// [lo(x), hi(x)].
struct Span {
  Rational x_lo, x_hi;
  Line lo, hi;
  std::size_t pgram;
};

Line line_through(const std::pair<Rational, Rational>& p, const std::pair<Rational, Rational>& q) {
  Rational b = (q.second - p.second) / (q.first - p.first);
  return Line{p.second - b * p.first, b};
}

void append_spans(const Pgram& g, std::size_t id, std::vector<Span>& out) {
  Rational det = g.e1x * g.e2y - g.e1y * g.e2x;
  if (det == 0) return;  // degenerate: zero area
  std::pair<Rational, Rational> c[4] = {
      {g.bx, g.by},
      {g.bx + g.e1x, g.by + g.e1y},
      {g.bx + g.e1x + g.e2x, g.by + g.e1y + g.e2y},
      {g.bx + g.e2x, g.by + g.e2y},
  };
  Rational xs[4] = {c[0].first, c[1].first, c[2].first, c[3].first};
  std::sort(xs, xs + 4);
  // Boundary edges of the quad c0-c1-c2-c3.
  std::pair<int, int> edges[4] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  for (int s = 0; s < 3; ++s) {
    const Rational& x1 = xs[s];
    const Rational& x2 = xs[s + 1];
    if (!(x1 < x2)) continue;
    Rational mid = (x1 + x2) / 2;
    bool have = false;
    Rational ylo, yhi;
    Line llo, lhi;
    for (const auto& [ia, ib] : edges) {
      const auto& p = c[ia];
      const auto& q = c[ib];
      if (p.first == q.first) continue;  // vertical edge never covers a strip
      if (std::min(p.first, q.first) > x1 || std::max(p.first, q.first) < x2) continue;
      Line ln = line_through(p, q);
      Rational y = ln.at(mid);
      if (!have) {
        ylo = yhi = y;
        llo = lhi = ln;
        have = true;
      } else if (y < ylo) {
        ylo = y;
        llo = ln;
      } else if (y > yhi) {
        yhi = y;
        lhi = ln;
      }
    }
    if (have) out.push_back(Span{x1, x2, llo, lhi, id});
  }
}

}  // namespace

Rational pgram_union_area(const std::vector<Pgram>& pgrams, int workers) {
  std::vector<Span> spans;
  spans.reserve(pgrams.size() * 3);
  for (std::size_t i = 0; i < pgrams.size(); ++i) append_spans(pgrams[i], i, spans);
  if (spans.empty()) return Rational(0);

  std::sort(spans.begin(), spans.end(),
            [](const Span& a, const Span& b) { return a.x_lo < b.x_lo; });

  std::vector<Rational> events;
  events.reserve(spans.size() * 2);
  for (const auto& s : spans) {
    events.push_back(s.x_lo);
    events.push_back(s.x_hi);
  }

  // Boundary-line crossings of x-overlapping spans from distinct
  // parallelograms; same-parallelogram boundaries only meet at corners,
  // which are already events.
  {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < spans.size(); ++i) {
      const Span& s = spans[i];
      std::size_t w = 0;
      for (std::size_t j = 0; j < active.size(); ++j) {
        const Span& t = spans[active[j]];
        if (t.x_hi <= s.x_lo) continue;  // expired
        active[w++] = active[j];
        if (t.pgram == s.pgram) continue;
        Rational lo = std::max(s.x_lo, t.x_lo);
        Rational hi = std::min(s.x_hi, t.x_hi);
        if (!(lo < hi)) continue;
        const Line* ls[2] = {&s.lo, &s.hi};
        const Line* lt[2] = {&t.lo, &t.hi};
        for (const Line* a : ls)
          for (const Line* b : lt) {
            if (a->b == b->b) continue;
            Rational x = (b->a - a->a) / (a->b - b->b);
            if (lo < x && x < hi) events.push_back(x);
          }
      }
      active.resize(w);
      active.push_back(i);
    }
  }

  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  if (events.size() < 2) return Rational(0);
  std::size_t strips = events.size() - 1;

  int nw = workers <= 0 ? default_workers() : workers;
  nw = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(nw), strips));
  std::vector<Rational> partial(static_cast<std::size_t>(nw), Rational(0));
  std::atomic<int> slot{0};
  parallel_chunks(static_cast<std::int64_t>(strips), nw, [&](std::int64_t b, std::int64_t e) {
    int my = slot.fetch_add(1);
    Rational acc(0);
    // Active set at the chunk start, then advance strip by strip.
    const Rational& start_x = events[static_cast<std::size_t>(b)];
    std::vector<std::size_t> active;
    std::size_t next = 0;
    while (next < spans.size() && spans[next].x_lo <= start_x) {
      if (spans[next].x_hi > start_x) active.push_back(next);
      ++next;
    }

    std::vector<std::pair<Rational, Rational>> ivs;
    for (std::int64_t st = b; st < e; ++st) {
      const Rational& x1 = events[static_cast<std::size_t>(st)];
      const Rational& x2 = events[static_cast<std::size_t>(st) + 1];
      while (next < spans.size() && spans[next].x_lo <= x1) {
        if (spans[next].x_hi > x1) active.push_back(next);
        ++next;
      }
      std::size_t w = 0;
      for (std::size_t j = 0; j < active.size(); ++j)
        if (spans[active[j]].x_hi > x1) active[w++] = active[j];
      active.resize(w);
      if (active.empty()) continue;

      Rational xm = (x1 + x2) / 2;
      ivs.clear();
      for (std::size_t idx : active) {
        const Span& s = spans[idx];
        ivs.emplace_back(s.lo.at(xm), s.hi.at(xm));
      }
      std::sort(ivs.begin(), ivs.end());
      Rational len(0);
      Rational lo = ivs[0].first, hi = ivs[0].second;
      for (std::size_t j = 1; j < ivs.size(); ++j) {
        if (ivs[j].first <= hi) {
          if (ivs[j].second > hi) hi = ivs[j].second;
        } else {
          len += hi - lo;
          lo = ivs[j].first;
          hi = ivs[j].second;
        }
      }
      len += hi - lo;
      acc += len * (x2 - x1);
    }
    partial[static_cast<std::size_t>(my)] = acc;
  });

  Rational total(0);
  for (const auto& p : partial) total += p;
  return total;
}

Rational sweep_polyline_segment(const Polyline& gamma, const Segment2& s) {
  std::vector<Pgram> pgrams;
  pgrams.reserve(gamma.edges());
  for (std::size_t i = 0; i + 1 < gamma.pts.size(); ++i) {
    pgrams.push_back(Pgram{gamma.pts[i].first + s.x0, gamma.pts[i].second + s.y0,
                           gamma.pts[i + 1].first - gamma.pts[i].first,
                           gamma.pts[i + 1].second - gamma.pts[i].second, s.dx, s.dy});
  }
  return pgram_union_area(pgrams);
}

Rational lemma5_bound(const Polyline& gamma, const Segment2& s) {
  std::vector<Rational> vals;
  vals.reserve(gamma.pts.size());
  if (s.vertical()) {
    for (const auto& p : gamma.pts) vals.push_back(p.first);
    return abs(s.dy) * total_variation(vals);
  }
  Rational m = s.dy / s.dx;
  for (const auto& p : gamma.pts) vals.push_back(m * p.first - p.second);
  return abs(s.dx) * total_variation(vals);
}

SegmentFamily family_of(const Polyline& p) {
  SegmentFamily fam;
  fam.reserve(p.edges());
  for (std::size_t i = 0; i + 1 < p.pts.size(); ++i)
    fam.push_back(FamilyElement{p.pts[i].first, p.pts[i].second, p.pts[i + 1].first,
                                p.pts[i + 1].second});
  return fam;
}

Rational dist2_point_element(const Rational& px, const Rational& py, const FamilyElement& e) {
  Rational dx = e.x1 - e.x0, dy = e.y1 - e.y0;
  Rational l2 = dx * dx + dy * dy;
  if (l2 == 0) {
    Rational ux = px - e.x0, uy = py - e.y0;
    return ux * ux + uy * uy;
  }
  Rational t = ((px - e.x0) * dx + (py - e.y0) * dy) / l2;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  Rational qx = e.x0 + t * dx, qy = e.y0 + t * dy;
  Rational ux = px - qx, uy = py - qy;
  return ux * ux + uy * uy;
}

namespace {

bool point_within(const Rational& px, const Rational& py, const SegmentFamily& q,
                  const Rational& t2) {
  for (const auto& e : q)
    if (dist2_point_element(px, py, e) <= t2) return true;
  return false;
}

// Distance to one element is convex along a segment, so both endpoints within
// the threshold certify the whole sub-segment.
bool segment_within(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by,
                    const SegmentFamily& q, const Rational& t2, int depth) {
  for (const auto& e : q)
    if (dist2_point_element(ax, ay, e) <= t2 && dist2_point_element(bx, by, e) <= t2) return true;
  if (depth <= 0) return false;  // conservative: not certified
  Rational mx = (ax + bx) / 2, my = (ay + by) / 2;
  if (!point_within(mx, my, q, t2)) return false;  // exact witness
  return segment_within(ax, ay, mx, my, q, t2, depth - 1) &&
         segment_within(mx, my, bx, by, q, t2, depth - 1);
}

bool directed_le(const SegmentFamily& p, const SegmentFamily& q, const Rational& t2) {
  constexpr int kDepth = 48;
  for (const auto& e : p) {
    if (!point_within(e.x0, e.y0, q, t2)) return false;
    if (!point_within(e.x1, e.y1, q, t2)) return false;
    if (!segment_within(e.x0, e.y0, e.x1, e.y1, q, t2, kDepth)) return false;
  }
  return true;
}

}  // namespace

bool hausdorff_le(const SegmentFamily& p, const SegmentFamily& q, const Rational& threshold) {
  if (threshold < 0) throw std::invalid_argument("hausdorff_le: negative threshold");
  if (p.empty() || q.empty()) throw std::invalid_argument("hausdorff_le: empty family");
  Rational t2 = threshold * threshold;
  return directed_le(p, q, t2) && directed_le(q, p, t2);
}

MSimpleSet::MSimpleSet(Rational slope_, std::vector<Rational> breaks_, std::vector<Rational> z_)
    : slope(std::move(slope_)), breaks(std::move(breaks_)), z(std::move(z_)) {
  if (z.empty() || breaks.size() != z.size() + 1)
    throw std::invalid_argument("MSimpleSet: need n+1 breaks for n segments");
  if (breaks.front() != 0 || breaks.back() != 1)
    throw std::invalid_argument("MSimpleSet: x projections must tile [0,1]");
  for (std::size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i - 1] < breaks[i]))
      throw std::invalid_argument("MSimpleSet: breaks must be strictly increasing");
  for (std::size_t i = 0; i < z.size(); ++i) {
    Rational zr = z[i] + slope * (breaks[i + 1] - breaks[i]);
    Rational lo = std::min(z[i], zr), hi = std::max(z[i], zr);
    if (lo < 0 || hi > 1)
      throw std::invalid_argument("MSimpleSet: segment leaves the unit square");
  }
}

SegmentFamily family_of(const MSimpleSet& m) {
  SegmentFamily fam;
  fam.reserve(m.z.size());
  for (std::size_t i = 0; i < m.z.size(); ++i) {
    Rational x0 = m.breaks[i], x1 = m.breaks[i + 1];
    fam.push_back(FamilyElement{x0, m.z[i], x1, m.z[i] + m.slope * (x1 - x0)});
  }
  return fam;
}

MSimpleSet m_simple_approx(const Polyline& k, const Rational& m, const Rational& eps) {
  if (!(eps > 0)) throw std::invalid_argument("m_simple_approx: eps must be positive");
  Rational min_x = k.pts[0].first, max_x = k.pts[0].first;
  for (const auto& p : k.pts) {
    if (p.first < 0 || p.first > 1 || p.second < 0 || p.second > 1)
      throw std::invalid_argument("m_simple_approx: polyline leaves the unit square");
    min_x = std::min(min_x, p.first);
    max_x = std::max(max_x, p.first);
  }
  if (min_x != 0 || max_x != 1)
    throw std::invalid_argument("m_simple_approx: x projection must be [0,1]");

  Rational eta = eps / std::max(Rational(1), Rational(abs(m)));

  // eps-dense net along K: per edge, enough subdivisions that sub-edge
  // diameters stay below eps and x gaps below eta.
  std::vector<std::pair<Rational, Rational>> net;
  for (std::size_t i = 0; i + 1 < k.pts.size(); ++i) {
    Rational dx = k.pts[i + 1].first - k.pts[i].first;
    Rational dy = k.pts[i + 1].second - k.pts[i].second;
    Rational diam2 = dx * dx + dy * dy;
    BigInt n1 = rat_floor(rat_sqrt_upper(diam2 / (eps * eps))) + 1;
    BigInt n2 = rat_floor(abs(dx) / eta) + 1;
    BigInt nb = n1 > n2 ? n1 : n2;
    if (nb > 1000000) throw std::invalid_argument("m_simple_approx: eps too small for this edge");
    long n = mpz_get_si(nb.get_mpz_t());
    for (long t = 0; t < n; ++t) {
      net.emplace_back(k.pts[i].first + dx * t / n, k.pts[i].second + dy * t / n);
    }
  }
  net.push_back(k.pts.back());

  std::sort(net.begin(), net.end());
  net.erase(std::unique(net.begin(), net.end()), net.end());

  // Distinct abscissae: spread any block of equal x values into the gap to
  // the next distinct abscissa (the last block, at x = 1, spreads downward).
  {
    std::vector<std::pair<Rational, Rational>> spread;
    spread.reserve(net.size());
    std::size_t i = 0;
    while (i < net.size()) {
      std::size_t j = i;
      while (j < net.size() && net[j].first == net[i].first) ++j;
      std::size_t block = j - i;
      if (block == 1) {
        spread.push_back(net[i]);
      } else if (j < net.size()) {
        Rational gap = net[j].first - net[i].first;
        Rational step = std::min(gap, eta) / (2 * static_cast<long>(block));
        for (std::size_t t = 0; t < block; ++t)
          spread.emplace_back(net[i].first + step * static_cast<long>(t), net[i + t].second);
      } else {
        Rational gap = net[i].first - spread.back().first;
        Rational step = std::min(gap, eta) / (2 * static_cast<long>(block));
        for (std::size_t t = 0; t < block; ++t)
          spread.emplace_back(net[i].first - step * static_cast<long>(block - 1 - t),
                              net[i + t].second);
      }
      i = j;
    }
    net = std::move(spread);
  }

  std::vector<Rational> breaks, z;
  breaks.reserve(net.size());
  for (const auto& p : net) breaks.push_back(p.first);
  z.reserve(net.size() - 1);
  for (std::size_t i = 0; i + 1 < net.size(); ++i) {
    Rational delta = breaks[i + 1] - breaks[i];
    Rational lo = std::max(Rational(0), Rational(-m * delta));
    Rational hi = std::min(Rational(1), Rational(1 - m * delta));
    if (lo > hi)
      throw std::invalid_argument("m_simple_approx: segment " + std::to_string(i) +
                                  " cannot stay inside the unit square");
    Rational zi = net[i].second;
    if (zi < lo) zi = lo;
    if (zi > hi) zi = hi;
    z.push_back(zi);
  }

  MSimpleSet out(m, std::move(breaks), std::move(z));
  if (!hausdorff_le(family_of(k), family_of(out), 3 * eps))
    throw std::runtime_error("m_simple_approx: 3*eps Hausdorff postcondition failed");
  return out;
}

TangentSchedule tangent_schedule(const Polyline& f, int resolution, int workers) {
  if (resolution < 1) throw std::invalid_argument("tangent_schedule: resolution >= 1");
  for (std::size_t i = 0; i + 1 < f.pts.size(); ++i)
    if (!(f.pts[i].first < f.pts[i + 1].first))
      throw std::invalid_argument("tangent_schedule: vertical edge, no tangent slope exists");

  // Merge consecutive pieces of equal slope.
  struct Piece {
    Rational x_lo, x_hi, y_lo, slope;
  };
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i + 1 < f.pts.size(); ++i) {
    Rational slope =
        (f.pts[i + 1].second - f.pts[i].second) / (f.pts[i + 1].first - f.pts[i].first);
    if (!pieces.empty() && pieces.back().slope == slope) {
      pieces.back().x_hi = f.pts[i + 1].first;
    } else {
      pieces.push_back(Piece{f.pts[i].first, f.pts[i + 1].first, f.pts[i].second, slope});
    }
  }

  Rational width = f.pts.back().first - f.pts.front().first;

  TangentSchedule out{{}, Staircase::constant(Rational(0)), Rational(0), {}};
  std::vector<Rational> h_breaks{Rational(0)}, h_values;
  Rational u(0);       // schedule position in [0,1]
  Rational level(0);   // chained schedule height
  for (const auto& pc : pieces) {
    Rational w = pc.x_hi - pc.x_lo;
    Rational v = w / width;        // block width in schedule domain
    Rational p = v / resolution;   // step width
    Rational rise = pc.slope * p;  // per-step height increment along the slope
    for (int j = 0; j < resolution; ++j) {
      Rational step_u = u + p * j;
      Rational c = level + rise * j;
      h_values.push_back(c);
      h_breaks.push_back(step_u + p);
      out.swept.push_back(Pgram{pc.x_lo + step_u, pc.y_lo + c, w, pc.slope * w, p, Rational(0)});
    }
    ScheduleEntry entry;
    entry.x_lo = pc.x_lo;
    entry.x_hi = pc.x_hi;
    entry.slope = pc.slope;
    std::vector<Rational> vv = {pc.slope * pc.x_lo - pc.y_lo,
                                pc.slope * pc.x_hi - (pc.y_lo + pc.slope * w)};
    entry.cert_bound = total_variation(vv);
    out.entries.push_back(entry);
    u += v;
    level += pc.slope * v;
  }
  // The block widths w_i/width sum to exactly 1, so the final break is 1 and
  // the Staircase constructor's domain check passes.
  out.h = Staircase(std::move(h_breaks), std::move(h_values));
  out.exact_area = pgram_union_area(out.swept, workers);
  return out;
}

}  // namespace sweeplab
