#pragma once

#include <string_view>

#include "diffax/diffpoly.hpp"

namespace diffax {

/// Parses the expression grammar
///
///   poly   := ['-'] term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := atom ('^' nat)?
///   atom   := ('d' idx)+ ('x'|'y') idx | ('x'|'y') idx | 't' idx | nat | '(' poly ')'
///
/// Whitespace between tokens is ignored. "d1 d1 x2" is delta_1^2 x_2 and a
/// rational constant is written p/q. Division is allowed only by a nonzero
/// element of the base field. Throws ParseError (with byte offset) or
/// IndexError.
DiffPoly parse_poly(std::string_view text, const Ring& ring);

/// A polynomial in the t-symbols only (used for model points).
TPoly parse_tpoly(std::string_view text, const Ring& ring);

/// Parses "d1 d2 x1" style variable names.
DerivVar parse_var(std::string_view text, const Ring& ring);

}  // namespace diffax
