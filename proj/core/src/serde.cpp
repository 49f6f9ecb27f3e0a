#include "sweeplab/serde.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace sweeplab {

namespace {

const char* pattern_name(WindowPattern p) {
  switch (p) {
    case WindowPattern::U1: return "U1";
    case WindowPattern::U2: return "U2";
    case WindowPattern::U3: return "U3";
    case WindowPattern::U4: return "U4";
    case WindowPattern::SumBase: return "sum";
    case WindowPattern::SumShifted: return "sum_shifted";
    case WindowPattern::SumProduct: return "sum_product";
  }
  return "?";
}

void expect_schema(const Json& j, const char* schema) {
  if (!j.is_object() || !j.contains("schema") || j.at("schema") != schema)
    throw std::invalid_argument(std::string("expected schema ") + schema);
}

Json vec2_json(const Vector2& t) {
  return Json{{"x", rational_to_json(t.dx)}, {"y", rational_to_json(t.dy)}};
}

}  // namespace

Json rational_to_json(const Rational& x) {
  return Json{{"n", x.get_num().get_str()}, {"d", x.get_den().get_str()}};
}

Rational rational_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("d"))
    throw std::invalid_argument("rational: expected {\"n\": str, \"d\": str}");
  auto num = rat_parse(j.at("n").get<std::string>());
  auto den = rat_parse(j.at("d").get<std::string>());
  if (!num || !den || *den == 0 || den->get_den() != 1 || num->get_den() != 1)
    throw std::invalid_argument("rational: malformed integer strings");
  return *num / *den;
}

Json to_json(const RectUnion& u) {
  Json rects = Json::array();
  for (const auto& r : u.rects())
    rects.push_back(Json::array({rational_to_json(r.x_lo), rational_to_json(r.x_hi),
                                 rational_to_json(r.y_lo), rational_to_json(r.y_hi)}));
  return Json{{"schema", "geom/1"}, {"kind", "rect_union"}, {"rects", std::move(rects)}};
}

RectUnion rect_union_from_json(const Json& j) {
  expect_schema(j, "geom/1");
  if (j.at("kind") != "rect_union") throw std::invalid_argument("expected kind rect_union");
  std::vector<Rect> rects;
  for (const auto& r : j.at("rects")) {
    if (!r.is_array() || r.size() != 4)
      throw std::invalid_argument("rect: expected a 4-element array");
    rects.emplace_back(rational_from_json(r[0]), rational_from_json(r[1]),
                       rational_from_json(r[2]), rational_from_json(r[3]));
  }
  return RectUnion(std::move(rects));
}

Json to_json(const Staircase& h) {
  Json breaks = Json::array(), values = Json::array();
  for (const auto& b : h.breaks()) breaks.push_back(rational_to_json(b));
  for (const auto& v : h.values()) values.push_back(rational_to_json(v));
  return Json{{"schema", "geom/1"},
              {"kind", "staircase"},
              {"breaks", std::move(breaks)},
              {"values", std::move(values)}};
}

Staircase staircase_from_json(const Json& j) {
  expect_schema(j, "geom/1");
  if (j.at("kind") != "staircase") throw std::invalid_argument("expected kind staircase");
  std::vector<Rational> breaks, values;
  for (const auto& b : j.at("breaks")) breaks.push_back(rational_from_json(b));
  for (const auto& v : j.at("values")) values.push_back(rational_from_json(v));
  return Staircase(std::move(breaks), std::move(values));
}

Json to_json(const SignSeq& eta) {
  std::string bits;
  bits.reserve(eta.values.size());
  for (auto s : eta.values) bits.push_back(s == 1 ? '+' : '-');
  return Json{{"schema", "eta/1"}, {"n", eta.n()}, {"bits", std::move(bits)}};
}

SignSeq sign_seq_from_json(const Json& j) {
  expect_schema(j, "eta/1");
  std::string bits = j.at("bits").get<std::string>();
  if (j.at("n").get<long long>() != static_cast<long long>(bits.size()))
    throw std::invalid_argument("eta: n does not match bits length");
  std::vector<std::int8_t> v;
  v.reserve(bits.size());
  for (char c : bits) {
    if (c != '+' && c != '-') throw std::invalid_argument("eta: bits must be '+'/'-'");
    v.push_back(c == '+' ? 1 : -1);
  }
  return SignSeq(std::move(v));
}

Json to_json(const DiscrepancyCert& cert) {
  return Json{{"schema", "cert/1"},
              {"kind", "discrepancy"},
              {"checker", cert.checker == CheckerId::pairs ? "pairs" : "moments"},
              {"epsilon", rational_to_json(cert.epsilon)},
              {"pass", cert.pass},
              {"worst_window",
               Json{{"k", cert.worst.k},
                    {"u", cert.worst.u},
                    {"v", cert.worst.v},
                    {"pattern", pattern_name(cert.worst.pattern)},
                    {"count", cert.worst.count},
                    {"bound", rational_to_json(cert.worst.bound)}}}};
}

Json to_json(const Chain& chain) {
  Json stages = Json::array();
  for (const auto& st : chain.stages) {
    stages.push_back(Json{{"stage", st.plan.stage},
                          {"n", st.plan.n},
                          {"N", st.plan.N},
                          {"epsilon", rational_to_json(st.plan.epsilon)},
                          {"epsilon_fixed", st.plan.epsilon_fixed},
                          {"achieved_epsilon", rational_to_json(st.achieved_epsilon)},
                          {"attempts", st.attempts},
                          {"eta", to_json(st.eta)}});
  }
  return Json{{"schema", "chain/1"},
              {"mode", chain.mode == PlanMode::paper ? "paper" : "desk"},
              {"seed", chain.seed},
              {"stages", std::move(stages)}};
}

Chain chain_from_json(const Json& j) {
  expect_schema(j, "chain/1");
  Chain chain;
  chain.mode = j.at("mode") == "paper" ? PlanMode::paper : PlanMode::desk;
  chain.seed = j.at("seed").get<std::uint64_t>();
  ColumnSet current = ColumnSet::unit_square();
  for (const auto& s : j.at("stages")) {
    StagePlan plan;
    plan.stage = s.at("stage").get<int>();
    plan.n = s.at("n").get<long long>();
    plan.N = s.at("N").get<long long>();
    plan.epsilon = rational_from_json(s.at("epsilon"));
    plan.epsilon_fixed = s.at("epsilon_fixed").get<bool>();
    SignSeq eta = sign_seq_from_json(s.at("eta"));
    if (eta.n() != plan.N) throw std::invalid_argument("chain: eta length != N");
    current = refine(current, eta);
    ChainStage st{plan, std::move(eta), s.at("attempts").get<int>(),
                  rational_from_json(s.at("achieved_epsilon")), current};
    chain.stages.push_back(std::move(st));
  }
  return chain;
}

Json to_json(const Lemma7Cert& cert) {
  Json flagged = Json::array();
  for (const auto& c : cert.flagged_corners) flagged.push_back(vec2_json(c));
  return Json{{"schema", "cert/1"},
              {"kind", "lemma7"},
              {"epsilon", rational_to_json(cert.epsilon)},
              {"precondition_holds", cert.precondition_holds},
              {"conclusion_holds", cert.conclusion_holds},
              {"precondition_worst",
               Json{{"shift", cert.pre_worst_shift},
                    {"pattern", pattern_name(cert.pre_worst_pattern)},
                    {"count", cert.pre_worst_count},
                    {"bound", rational_to_json(cert.pre_worst_bound)}}},
              {"worst_corner", vec2_json(cert.worst_corner)},
              {"worst_lhs", rational_to_json(cert.worst_lhs)},
              {"worst_rhs", rational_to_json(cert.worst_rhs)},
              {"flagged_corners", std::move(flagged)}};
}

Json to_json(const Lemma8Cert& cert) {
  return Json{{"schema", "cert/1"},
              {"kind", "lemma8"},
              {"j", cert.j},
              {"k", cert.k},
              {"pass", cert.pass},
              {"bound", rational_to_json(cert.bound)},
              {"worst_corner", vec2_json(cert.worst_corner)},
              {"worst_overlap", rational_to_json(cert.worst_overlap)},
              {"corners_checked", cert.corners_checked}};
}

Json to_json(const ChainLemma7Report& report) {
  Json out{{"schema", "cert/1"},
           {"kind", "lemma7_chain"},
           {"stage", report.stage},
           {"epsilon", rational_to_json(report.epsilon)},
           {"pairs_checked", report.pairs_checked},
           {"conclusion_failures", report.conclusion_failures},
           {"precondition_failures", report.precondition_failures},
           {"all_pass", report.all_pass()}};
  if (report.first_failure) out["first_failure"] = to_json(*report.first_failure);
  return out;
}

Json to_json(const SweepReport& report) {
  return Json{{"schema", "sweep/1"},
              {"exact_area", rational_to_json(report.exact_area)},
              {"lower_bound_cs", rational_to_json(report.lower_bound_cs)},
              {"lower_bound_ea", rational_to_json(report.lower_bound_ea)}};
}

Json to_json(const Polyline& p) {
  Json pts = Json::array();
  for (const auto& [x, y] : p.pts)
    pts.push_back(Json::array({rational_to_json(x), rational_to_json(y)}));
  return Json{{"schema", "poly/1"}, {"points", std::move(pts)}};
}

Polyline polyline_from_json(const Json& j) {
  expect_schema(j, "poly/1");
  std::vector<std::pair<Rational, Rational>> pts;
  for (const auto& p : j.at("points")) {
    if (!p.is_array() || p.size() != 2) throw std::invalid_argument("poly: bad point");
    pts.emplace_back(rational_from_json(p[0]), rational_from_json(p[1]));
  }
  return Polyline(std::move(pts));
}

Json to_json(const MSimpleSet& m) {
  Json breaks = Json::array(), z = Json::array();
  for (const auto& b : m.breaks) breaks.push_back(rational_to_json(b));
  for (const auto& v : m.z) z.push_back(rational_to_json(v));
  return Json{{"schema", "msimple/1"},
              {"slope", rational_to_json(m.slope)},
              {"breaks", std::move(breaks)},
              {"z", std::move(z)}};
}

MSimpleSet msimple_from_json(const Json& j) {
  expect_schema(j, "msimple/1");
  std::vector<Rational> breaks, z;
  for (const auto& b : j.at("breaks")) breaks.push_back(rational_from_json(b));
  for (const auto& v : j.at("z")) z.push_back(rational_from_json(v));
  return MSimpleSet(rational_from_json(j.at("slope")), std::move(breaks), std::move(z));
}

Json to_json(const McEstimate& e) {
  return Json{{"schema", "mc/1"},
              {"estimate", rational_to_json(e.estimate)},
              {"half_width", rational_to_json(e.half_width)},
              {"hits", e.hits},
              {"samples", e.samples}};
}

}  // namespace sweeplab
