// JSON schemas for the exchange formats. Rationals cross the boundary as
// {"n": "...", "d": "..."} decimal strings; exact round-trip on canonical
// forms is part of the contract.
#pragma once

#include <nlohmann/json_fwd.hpp>

#include "sweeplab/geometry.hpp"
#include "sweeplab/kakeya.hpp"
#include "sweeplab/polyline.hpp"
#include "sweeplab/signs.hpp"
#include "sweeplab/staircase.hpp"
#include "sweeplab/sweep_audit.hpp"

namespace sweeplab {

using Json = nlohmann::json;

Json rational_to_json(const Rational& x);
Rational rational_from_json(const Json& j);

// "geom/1": {"schema", "kind": "rect_union", "rects": [[xlo,xhi,ylo,yhi],...]}
Json to_json(const RectUnion& u);
RectUnion rect_union_from_json(const Json& j);

// "geom/1": {"schema", "kind": "staircase", "breaks": [...], "values": [...]}
Json to_json(const Staircase& h);
Staircase staircase_from_json(const Json& j);

// "eta/1": {"schema", "n", "bits": "+-+..."}
Json to_json(const SignSeq& eta);
SignSeq sign_seq_from_json(const Json& j);

// "cert/1" discrepancy certificate with all fields.
Json to_json(const DiscrepancyCert& cert);

// "chain/1": per-stage plan, eta and achieved epsilon; column sets are
// recomputed (and therefore re-verified) on parse.
Json to_json(const Chain& chain);
Chain chain_from_json(const Json& j);

// "cert/1" lemma certificates.
Json to_json(const Lemma7Cert& cert);
Json to_json(const Lemma8Cert& cert);
Json to_json(const ChainLemma7Report& report);

// "sweep/1"
Json to_json(const SweepReport& report);

// "poly/1"
Json to_json(const Polyline& p);
Polyline polyline_from_json(const Json& j);

// "msimple/1"
Json to_json(const MSimpleSet& m);
MSimpleSet msimple_from_json(const Json& j);

// "mc/1"
Json to_json(const McEstimate& e);

}  // namespace sweeplab
