// Formulas, labelled formulas and sequents.

#ifndef CUTRX_FORMULA_HPP
#define CUTRX_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cutrx/error.hpp"

namespace cutrx {

struct Connective {
  std::string name;
  int arity = 0;

  bool operator==(const Connective&) const = default;
};

// The connectives of a calculus. Names are unique; lookup is linear since
// languages are tiny.
class Language {
 public:
  Language() = default;
  explicit Language(std::vector<Connective> connectives);

  // Throws CalculusError on a duplicate name.
  void add(Connective c);
  const Connective* find(std::string_view name) const;
  const std::vector<Connective>& connectives() const { return connectives_; }

 private:
  std::vector<Connective> connectives_;
};

// Immutable formula tree. Copies share structure. Equality and ordering are
// structural (ordering is by canonical text).
class Formula {
 public:
  Formula() = default;

  static Formula var(std::string name);
  static Formula app(std::string connective, std::vector<Formula> args);

  bool is_null() const { return node_ == nullptr; }
  bool is_var() const;
  // Variable name or principal connective.
  const std::string& head() const;
  std::span<const Formula> args() const;
  const Formula& arg(std::size_t i) const { return args()[i]; }
  // Number of variable plus connective occurrences.
  int size() const;
  // Canonical s-expression rendering.
  const std::string& text() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Reflexive subformula set.
std::set<Formula> subformulas(const Formula& f);
bool is_subformula(const Formula& g, const Formula& f);
bool is_proper_subformula(const Formula& g, const Formula& f);
// Replace every occurrence of variable `x` in `f` by `g`.
Formula substitute_variable(const Formula& f, std::string_view x, const Formula& g);
// Simultaneous substitution.
Formula substitute_variables(const Formula& f, const std::map<std::string, Formula>& sigma);
void collect_variables(const Formula& f, std::set<std::string>& out);

Formula parse_formula(std::string_view text, const Language& lang);
inline std::string format_formula(const Formula& f) { return f.text(); }

enum class Label { L, R };

inline Label flip(Label l) { return l == Label::L ? Label::R : Label::L; }
inline char label_char(Label l) { return l == Label::L ? 'l' : 'r'; }

struct LFormula {
  Label label = Label::L;
  Formula formula;

  friend bool operator==(const LFormula&, const LFormula&) = default;
  friend std::strong_ordering operator<=>(const LFormula& a, const LFormula& b) {
    if (a.label != b.label) return a.label < b.label ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.formula <=> b.formula;
  }
};

inline LFormula lf(Label l, Formula f) { return LFormula{l, std::move(f)}; }
inline LFormula flip(const LFormula& x) { return LFormula{flip(x.label), x.formula}; }
std::set<LFormula> flip_set(const std::set<LFormula>& s);
std::string format_lformula(const LFormula& x);
LFormula parse_lformula(std::string_view text, const Language& lang);

// A multiset of labelled formulas. Positions are occurrence identities used by
// ancestry maps; `==` is multiset equality, `identical` compares positions too.
class Sequent {
 public:
  Sequent() = default;
  Sequent(std::initializer_list<LFormula> xs) : items_(xs) {}
  explicit Sequent(std::vector<LFormula> xs) : items_(std::move(xs)) {}

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const LFormula& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<LFormula>& items() const { return items_; }

  void push_back(LFormula x) { items_.push_back(std::move(x)); }
  void append(const Sequent& other);

  std::size_t count(const LFormula& x) const;
  bool contains(const LFormula& x) const { return count(x) > 0; }
  std::set<LFormula> support() const;
  // Multiset inclusion.
  bool submultiset_of(const Sequent& other) const;
  std::vector<LFormula> sorted() const;

  bool identical(const Sequent& other) const { return items_ == other.items_; }
  friend bool operator==(const Sequent& a, const Sequent& b);

 private:
  std::vector<LFormula> items_;
};

Sequent repeat(const Sequent& s, int times);
Sequent substitute_variable(const Sequent& s, std::string_view x, const Formula& g);
Sequent substitute_variables(const Sequent& s, const std::map<std::string, Formula>& sigma);
std::string format_sequent(const Sequent& s);
Sequent parse_sequent(std::string_view text, const Language& lang);

}  // namespace cutrx

#endif  // CUTRX_FORMULA_HPP
