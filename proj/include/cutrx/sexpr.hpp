// Minimal s-expression reader shared by the text formats.

#ifndef CUTRX_SEXPR_HPP
#define CUTRX_SEXPR_HPP

#include <string>
#include <string_view>
#include <vector>

namespace cutrx {

struct SExpr {
  bool atom = false;
  std::string text;            // atom only
  std::vector<SExpr> items;    // list only
  int line = 0;

  bool is_atom(std::string_view s) const { return atom && text == s; }
  bool is_list() const { return !atom; }
  // True iff this is a list whose first element is the atom `head`.
  bool headed(std::string_view head) const {
    return !atom && !items.empty() && items[0].is_atom(head);
  }
  std::string str() const;
};

// Parses exactly one expression; `;` starts a comment. Throws ParseError.
SExpr read_sexpr(std::string_view text);
std::vector<SExpr> read_sexprs(std::string_view text);

}  // namespace cutrx

#endif  // CUTRX_SEXPR_HPP
