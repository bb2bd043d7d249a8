#pragma once

#include <json.hpp>

#include "mwc/cohomology.hpp"
#include "mwc/comparison.hpp"

namespace mwc {

using json = nlohmann::json;

json to_json(const LPoly& f);
/// {"degree", "prec", "terms": [{"indices", "coefficient"}]}
json to_json(const Form& w);
/// {"slots": [...], "ledger": [...]}
json to_json(const WittVec& w);
json to_json(const CohomBlock& b, std::int64_t p);

/// Variables from a list of names; `invertible` may be null or shorter.
RingPtr ring_from_json(const PrimeCtx& ctx, const json& names, const json& invertible);
std::vector<LPoly> polys_from_json(const json& list, const RingPtr& ring, int prec);
/// Accepts the object form written by to_json or a bare string (degree 0).
/// Indices may be variable positions or names.
Form form_from_json(const json& j, const RingPtr& ring, int prec);

}  // namespace mwc
