#pragma once

#include <string>
#include <string_view>

#include "mwc/lpoly.hpp"

namespace mwc {

class LPoly;

/// Canonical text: `c*x1^e1*...*xk^ek` terms joined by `+`, coefficients in
/// [0, p^prec), terms in lexicographic exponent order, `0` for zero. An
/// exponent of 1 is written bare (`x`), other exponents as signed decimals.
std::string format_poly(const LPoly& f);

/// Parses the canonical format and a forgiving superset of it: optional
/// coefficients, `-` between terms, signed coefficients, whitespace,
/// repeated variables, `^(-k)`.
LPoly parse_poly(std::string_view text, const RingPtr& ring, int prec);
inline LPoly parse_poly(std::string_view text, const RingPtr& ring) { return parse_poly(text, ring, ring->ctx.N); }

}  // namespace mwc
