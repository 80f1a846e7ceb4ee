// Conversions from parsed s-expressions, shared by the text formats.

#ifndef CUTRX_SRC_TEXT_UTIL_HPP
#define CUTRX_SRC_TEXT_UTIL_HPP

#include <string>

#include "cutrx/formula.hpp"
#include "cutrx/sexpr.hpp"

namespace cutrx {

Formula formula_from_sexpr(const SExpr& e, const Language& lang);
LFormula lformula_from_sexpr(const SExpr& e, const Language& lang);
Sequent sequent_from_sexpr(const SExpr& e, const Language& lang);

// Parses a non-negative integer atom or throws ParseError.
int int_from_sexpr(const SExpr& e);

}  // namespace cutrx

#endif  // CUTRX_SRC_TEXT_UTIL_HPP
