#include "mwc/serialize.hpp"

#include "mwc/poly_text.hpp"

namespace mwc {

json to_json(const LPoly& f) { return format_poly(f); }

json to_json(const Form& w) {
  json terms = json::array();
  for (const auto& [idx, c] : w.terms()) terms.push_back({{"indices", idx}, {"coefficient", format_poly(c)}});
  return {{"degree", w.degree()}, {"prec", w.prec()}, {"terms", std::move(terms)}};
}

json to_json(const WittVec& w) {
  json slots = json::array();
  for (const auto& c : w.comps()) slots.push_back(format_poly(c));
  return {{"slots", std::move(slots)}, {"ledger", w.ledger()}};
}

json to_json(const CohomBlock& b, std::int64_t p) {
  int total = 0;
  for (int e : b.divisors) total += e;
  std::int64_t order = total < max_precision(p) ? ipow(p, total) : -1;
  return {{"degree", b.degree},
          {"multidegree", b.multidegree},
          {"exponents", b.divisors},
          {"free_rank", b.free_rank},
          {"order", order}};
}

RingPtr ring_from_json(const PrimeCtx& ctx, const json& names, const json& invertible) {
  if (!names.is_array() || names.empty()) fail(ErrorKind::JobParseError, "expected a nonempty list of variable names");
  std::vector<std::string> vars;
  std::vector<bool> inv;
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (!names[j].is_string()) fail(ErrorKind::JobParseError, "variable names must be strings");
    vars.push_back(names[j].get<std::string>());
    bool flag = false;
    if (invertible.is_array() && j < invertible.size()) {
      if (!invertible[j].is_boolean()) fail(ErrorKind::JobParseError, "invertible flags must be booleans");
      flag = invertible[j].get<bool>();
    }
    inv.push_back(flag);
  }
  return make_ring(ctx, std::move(vars), std::move(inv));
}

std::vector<LPoly> polys_from_json(const json& list, const RingPtr& ring, int prec) {
  if (!list.is_array()) fail(ErrorKind::JobParseError, "expected a list of polynomials");
  std::vector<LPoly> out;
  for (const auto& s : list) {
    if (!s.is_string()) fail(ErrorKind::JobParseError, "polynomials are given as strings");
    out.push_back(parse_poly(s.get<std::string>(), ring, prec));
  }
  return out;
}

Form form_from_json(const json& j, const RingPtr& ring, int prec) {
  if (j.is_string()) return Form::function(parse_poly(j.get<std::string>(), ring, prec));
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    fail(ErrorKind::JobParseError, "a form is a string or an object with a terms list");
  const json& terms = j["terms"];
  int degree = 0;
  if (j.contains("degree"))
    degree = j["degree"].get<int>();
  else if (!terms.empty() && terms[0].is_object() && terms[0].contains("indices"))
    degree = static_cast<int>(terms[0]["indices"].size());
  Form w(ring, degree, prec);
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("indices") || !t.contains("coefficient"))
      fail(ErrorKind::JobParseError, "form terms need indices and coefficient");
    std::vector<int> idx;
    for (const auto& i : t["indices"]) {
      if (i.is_number_integer()) {
        const int v = i.get<int>();
        if (v < 0 || static_cast<std::size_t>(v) >= ring->nvars()) fail(ErrorKind::JobParseError, "index out of range");
        idx.push_back(v);
      } else if (i.is_string()) {
        auto pos = ring->index_of(i.get<std::string>());
        if (!pos) fail(ErrorKind::JobParseError, "unknown variable " + i.get<std::string>());
        idx.push_back(static_cast<int>(*pos));
      } else {
        fail(ErrorKind::JobParseError, "indices are positions or variable names");
      }
    }
    if (static_cast<int>(idx.size()) != w.degree()) fail(ErrorKind::JobParseError, "form terms of mixed degree");
    w += Form::monomial(parse_poly(t["coefficient"].get<std::string>(), ring, prec), idx);
  }
  return w;
}

}  // namespace mwc
