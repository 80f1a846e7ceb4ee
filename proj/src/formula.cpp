#include "cutrx/formula.hpp"

#include <algorithm>
#include <map>

#include "cutrx/sexpr.hpp"
#include "text_util.hpp"

namespace cutrx {

struct Formula::Node {
  bool is_var = false;
  std::string head;
  std::vector<Formula> args;
  int size = 1;
  std::string text;
};

Language::Language(std::vector<Connective> connectives) {
  for (auto& c : connectives) add(std::move(c));
}

void Language::add(Connective c) {
  if (find(c.name)) throw CalculusError("duplicate connective '" + c.name + "'");
  if (c.arity < 0) throw CalculusError("negative arity for '" + c.name + "'");
  connectives_.push_back(std::move(c));
}

const Connective* Language::find(std::string_view name) const {
  for (const auto& c : connectives_)
    if (c.name == name) return &c;
  return nullptr;
}

Formula Formula::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->is_var = true;
  n->text = name;
  n->head = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::app(std::string connective, std::vector<Formula> args) {
  auto n = std::make_shared<Node>();
  n->head = std::move(connective);
  if (args.empty()) {
    n->text = n->head;
  } else {
    n->text = "(" + n->head;
    for (const auto& a : args) {
      n->text += ' ';
      n->text += a.text();
      n->size += a.size();
    }
    n->text += ')';
  }
  n->args = std::move(args);
  return Formula(std::move(n));
}

bool Formula::is_var() const { return node_->is_var; }
const std::string& Formula::head() const { return node_->head; }
std::span<const Formula> Formula::args() const { return node_->args; }
int Formula::size() const { return node_->size; }

const std::string& Formula::text() const {
  static const std::string null_text = "<null>";
  return node_ ? node_->text : null_text;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  return a.node_->text == b.node_->text;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  return a.text() <=> b.text();
}

namespace {

void collect_subformulas(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  for (const auto& a : f.args()) collect_subformulas(a, out);
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

Formula formula_from(const SExpr& e, const Language& lang) {
  if (e.atom) {
    if (const Connective* c = lang.find(e.text)) {
      if (c->arity != 0)
        throw ParseError("connective '" + e.text + "' of arity " + std::to_string(c->arity) +
                         " used as an atom");
      return Formula::app(e.text, {});
    }
    if (!valid_identifier(e.text)) throw ParseError("malformed variable '" + e.text + "'");
    return Formula::var(e.text);
  }
  if (e.items.empty() || !e.items[0].atom) throw ParseError("malformed formula " + e.str());
  const std::string& name = e.items[0].text;
  const Connective* c = lang.find(name);
  if (!c) throw ParseError("unknown connective '" + name + "'");
  int given = static_cast<int>(e.items.size()) - 1;
  if (given != c->arity)
    throw ParseError("arity mismatch for '" + name + "': expected " + std::to_string(c->arity) +
                     ", got " + std::to_string(given));
  std::vector<Formula> args;
  for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(formula_from(e.items[i], lang));
  return Formula::app(name, std::move(args));
}

}  // namespace

std::set<Formula> subformulas(const Formula& f) {
  std::set<Formula> out;
  collect_subformulas(f, out);
  return out;
}

bool is_subformula(const Formula& g, const Formula& f) {
  if (g == f) return true;
  if (g.size() >= f.size()) return false;
  for (const auto& a : f.args())
    if (is_subformula(g, a)) return true;
  return false;
}

bool is_proper_subformula(const Formula& g, const Formula& f) {
  return !(g == f) && is_subformula(g, f);
}

Formula substitute_variable(const Formula& f, std::string_view x, const Formula& g) {
  if (f.is_var()) return f.head() == x ? g : f;
  if (f.args().empty()) return f;
  std::vector<Formula> args;
  bool changed = false;
  for (const auto& a : f.args()) {
    args.push_back(substitute_variable(a, x, g));
    changed = changed || !(args.back() == a);
  }
  return changed ? Formula::app(f.head(), std::move(args)) : f;
}

Formula substitute_variables(const Formula& f, const std::map<std::string, Formula>& sigma) {
  if (f.is_var()) {
    auto it = sigma.find(f.head());
    return it == sigma.end() ? f : it->second;
  }
  if (f.args().empty()) return f;
  std::vector<Formula> args;
  bool changed = false;
  for (const auto& a : f.args()) {
    args.push_back(substitute_variables(a, sigma));
    changed = changed || !(args.back() == a);
  }
  return changed ? Formula::app(f.head(), std::move(args)) : f;
}

void collect_variables(const Formula& f, std::set<std::string>& out) {
  if (f.is_var()) {
    out.insert(f.head());
    return;
  }
  for (const auto& a : f.args()) collect_variables(a, out);
}

Formula parse_formula(std::string_view text, const Language& lang) {
  return formula_from(read_sexpr(text), lang);
}

std::set<LFormula> flip_set(const std::set<LFormula>& s) {
  std::set<LFormula> out;
  for (const auto& x : s) out.insert(flip(x));
  return out;
}

std::string format_lformula(const LFormula& x) {
  return std::string("(") + label_char(x.label) + " " + x.formula.text() + ")";
}

namespace {

LFormula lformula_from(const SExpr& e, const Language& lang) {
  if (e.atom || e.items.size() != 2 || !e.items[0].atom ||
      (e.items[0].text != "l" && e.items[0].text != "r"))
    throw ParseError("malformed labelled formula " + e.str());
  Label l = e.items[0].text == "l" ? Label::L : Label::R;
  return LFormula{l, formula_from(e.items[1], lang)};
}

}  // namespace

LFormula lformula_from_sexpr(const SExpr& e, const Language& lang) { return lformula_from(e, lang); }

LFormula parse_lformula(std::string_view text, const Language& lang) {
  return lformula_from(read_sexpr(text), lang);
}

void Sequent::append(const Sequent& other) {
  items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

std::size_t Sequent::count(const LFormula& x) const {
  return static_cast<std::size_t>(std::count(items_.begin(), items_.end(), x));
}

std::set<LFormula> Sequent::support() const { return {items_.begin(), items_.end()}; }

std::vector<LFormula> Sequent::sorted() const {
  auto v = items_;
  std::sort(v.begin(), v.end());
  return v;
}

bool Sequent::submultiset_of(const Sequent& other) const {
  std::map<LFormula, int> counts;
  for (const auto& x : other) ++counts[x];
  for (const auto& x : items_)
    if (--counts[x] < 0) return false;
  return true;
}

bool operator==(const Sequent& a, const Sequent& b) {
  return a.size() == b.size() && a.sorted() == b.sorted();
}

Sequent repeat(const Sequent& s, int times) {
  Sequent out;
  for (int i = 0; i < times; ++i) out.append(s);
  return out;
}

Sequent substitute_variable(const Sequent& s, std::string_view x, const Formula& g) {
  Sequent out;
  for (const auto& y : s) out.push_back(LFormula{y.label, substitute_variable(y.formula, x, g)});
  return out;
}

Sequent substitute_variables(const Sequent& s, const std::map<std::string, Formula>& sigma) {
  Sequent out;
  for (const auto& y : s) out.push_back(LFormula{y.label, substitute_variables(y.formula, sigma)});
  return out;
}

std::string format_sequent(const Sequent& s) {
  std::string out = "(seq";
  for (const auto& x : s) {
    out += ' ';
    out += format_lformula(x);
  }
  return out + ")";
}

Sequent sequent_from_sexpr(const SExpr& e, const Language& lang) {
  if (!e.headed("seq")) throw ParseError("expected (seq ...), got " + e.str());
  Sequent s;
  for (std::size_t i = 1; i < e.items.size(); ++i) s.push_back(lformula_from(e.items[i], lang));
  return s;
}

Formula formula_from_sexpr(const SExpr& e, const Language& lang) { return formula_from(e, lang); }

Sequent parse_sequent(std::string_view text, const Language& lang) {
  return sequent_from_sexpr(read_sexpr(text), lang);
}

}  // namespace cutrx
