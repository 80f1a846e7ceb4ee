#include "cutrx/calculus.hpp"

#include <algorithm>

#include "cutrx/sexpr.hpp"
#include "text_util.hpp"

namespace cutrx {

bool ContextPattern::matches(const LFormula& x) const {
  if (x.label != label) return false;
  if (!connective) return true;
  return !x.formula.is_var() && x.formula.head() == *connective;
}

bool ContextPattern::covered_by(const ContextPattern& other) const {
  if (label != other.label) return false;
  if (!other.connective) return true;
  return connective && *connective == *other.connective;
}

std::string ContextPattern::str() const {
  std::string out = std::string("(") + label_char(label);
  out += connective ? " conn " + *connective : std::string(" any");
  return out + ")";
}

ContextRestriction ContextRestriction::of(std::vector<ContextPattern> patterns) {
  ContextRestriction c;
  c.unrestricted_ = false;
  for (auto& p : patterns)
    if (std::find(c.patterns_.begin(), c.patterns_.end(), p) == c.patterns_.end())
      c.patterns_.push_back(std::move(p));
  return c;
}

bool ContextRestriction::matches(const LFormula& x) const {
  if (unrestricted_) return true;
  return std::any_of(patterns_.begin(), patterns_.end(),
                     [&](const ContextPattern& p) { return p.matches(x); });
}

std::optional<ContextPattern> ContextRestriction::first_uncovered(
    const ContextRestriction& other) const {
  if (other.unrestricted_) return std::nullopt;
  if (unrestricted_) return ContextPattern{Label::L, std::nullopt};
  for (const auto& p : patterns_) {
    bool covered = std::any_of(other.patterns_.begin(), other.patterns_.end(),
                               [&](const ContextPattern& q) { return p.covered_by(q); });
    if (!covered) return p;
  }
  return std::nullopt;
}

bool ContextRestriction::subsumed_by(const ContextRestriction& other) const {
  return !first_uncovered(other).has_value();
}

bool ContextRestriction::admits_principal(Label label, std::string_view connective) const {
  if (unrestricted_) return true;
  return std::any_of(patterns_.begin(), patterns_.end(), [&](const ContextPattern& p) {
    return p.label == label && (!p.connective || *p.connective == connective);
  });
}

bool ContextRestriction::admits_variable(Label label) const {
  if (unrestricted_) return true;
  return std::any_of(patterns_.begin(), patterns_.end(), [&](const ContextPattern& p) {
    return p.label == label && !p.connective;
  });
}

bool ContextRestriction::operator==(const ContextRestriction& other) const {
  if (unrestricted_ != other.unrestricted_ || patterns_.size() != other.patterns_.size()) return false;
  return std::all_of(patterns_.begin(), patterns_.end(), [&](const ContextPattern& p) {
    return std::find(other.patterns_.begin(), other.patterns_.end(), p) != other.patterns_.end();
  });
}

ContextRestriction ContextRestriction::flipped() const {
  if (unrestricted_) return *this;
  std::vector<ContextPattern> ps;
  for (const auto& p : patterns_) ps.push_back(ContextPattern{flip(p.label), p.connective});
  return of(std::move(ps));
}

std::string ContextRestriction::str() const {
  if (unrestricted_) return "(context any)";
  std::string out = "(context";
  for (const auto& p : patterns_) out += " " + p.str();
  return out + ")";
}

Sequent RuleSchema::auxiliaries(const Formula& principal, int t, int premise) const {
  Sequent out;
  for (const Slot& s : templates.at(t).premises.at(premise))
    out.push_back(LFormula{s.label, principal.arg(s.arg)});
  return out;
}

Calculus::Calculus(std::string name, Language lang, Consistency consistency,
                   std::vector<RuleSchema> rules)
    : name_(std::move(name)), lang_(std::move(lang)), consistency_(consistency),
      rules_(std::move(rules)) {
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const auto& r = rules_[i];
    for (std::size_t j = 0; j < i; ++j)
      if (rules_[j].id == r.id) throw CalculusError("duplicate rule id '" + r.id + "'");
    const Connective* c = lang_.find(r.connective);
    if (!c) throw CalculusError("rule '" + r.id + "' uses unknown connective '" + r.connective + "'");
    if (r.templates.empty()) throw CalculusError("rule '" + r.id + "' has no templates");
    for (const auto& t : r.templates)
      for (const auto& prem : t.premises)
        for (const auto& slot : prem)
          if (slot.arg < 0 || slot.arg >= c->arity)
            throw CalculusError("rule '" + r.id + "' references argument " +
                                std::to_string(slot.arg + 1) + " of '" + r.connective +
                                "' (arity " + std::to_string(c->arity) + ")");
    if (!r.context.is_unrestricted())
      for (const auto& p : r.context.patterns())
        if (p.connective && !lang_.find(*p.connective))
          throw CalculusError("rule '" + r.id + "' context names unknown connective '" +
                              *p.connective + "'");
  }
  for (const auto& c : lang_.connectives()) {
    for (Side side : {Side::Left, Side::Right}) {
      auto n = std::count_if(rules_.begin(), rules_.end(), [&](const RuleSchema& r) {
        return r.connective == c.name && r.side == side;
      });
      if (n == 0)
        throw CalculusError("missing " + std::string(side_name(side)) + " rule for '" + c.name + "'");
      if (n > 1)
        throw CalculusError("more than one " + std::string(side_name(side)) + " rule for '" +
                            c.name + "'");
    }
  }
}

const RuleSchema* Calculus::find_rule(std::string_view id) const {
  for (const auto& r : rules_)
    if (r.id == id) return &r;
  return nullptr;
}

const RuleSchema& Calculus::rule_for(std::string_view connective, Side side) const {
  for (const auto& r : rules_)
    if (r.connective == connective && r.side == side) return r;
  throw CalculusError("no " + std::string(side_name(side)) + " rule for '" +
                      std::string(connective) + "'");
}

namespace {

Label label_from(const SExpr& e) {
  if (e.is_atom("l")) return Label::L;
  if (e.is_atom("r")) return Label::R;
  throw ParseError("expected l or r, got " + e.str());
}

ContextRestriction context_from(const SExpr& e) {
  if (!e.headed("context") || e.items.size() < 2) throw ParseError("malformed context " + e.str());
  if (e.items.size() == 2 && e.items[1].is_atom("any")) return ContextRestriction::unrestricted();
  std::vector<ContextPattern> ps;
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& p = e.items[i];
    if (!p.is_list() || p.items.size() < 2) throw ParseError("malformed pattern " + p.str());
    ContextPattern pat{label_from(p.items[0]), std::nullopt};
    if (p.items.size() == 2 && p.items[1].is_atom("any")) {
    } else if (p.items.size() == 3 && p.items[1].is_atom("conn") && p.items[2].atom) {
      pat.connective = p.items[2].text;
    } else {
      throw ParseError("malformed pattern " + p.str());
    }
    ps.push_back(std::move(pat));
  }
  return ContextRestriction::of(std::move(ps));
}

PremiseTemplate template_from(const SExpr& e) {
  if (!e.headed("premises")) throw ParseError("expected (premises ...), got " + e.str());
  PremiseTemplate t;
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const SExpr& prem = e.items[i];
    if (!prem.headed("premise")) throw ParseError("expected (premise ...), got " + prem.str());
    std::vector<Slot> slots;
    for (std::size_t j = 1; j < prem.items.size(); ++j) {
      const SExpr& s = prem.items[j];
      if (!s.is_list() || s.items.size() != 3 || !s.items[1].is_atom("arg"))
        throw ParseError("malformed slot " + s.str());
      int n = int_from_sexpr(s.items[2]);
      if (n < 1) throw ParseError("argument indices start at 1: " + s.str());
      slots.push_back(Slot{label_from(s.items[0]), n - 1});
    }
    t.premises.push_back(std::move(slots));
  }
  return t;
}

RuleSchema rule_from(const SExpr& e) {
  if (!e.headed("rule") || e.items.size() != 6) throw ParseError("malformed rule " + e.str());
  RuleSchema r;
  if (!e.items[1].atom) throw ParseError("malformed rule id " + e.items[1].str());
  r.id = e.items[1].text;
  if (e.items[2].is_atom("left")) {
    r.side = Side::Left;
  } else if (e.items[2].is_atom("right")) {
    r.side = Side::Right;
  } else {
    throw ParseError("expected left or right in rule '" + r.id + "'");
  }
  if (!e.items[3].atom) throw ParseError("malformed connective in rule '" + r.id + "'");
  r.connective = e.items[3].text;
  r.context = context_from(e.items[4]);
  const SExpr& ts = e.items[5];
  if (!ts.headed("templates") || ts.items.size() < 2)
    throw ParseError("rule '" + r.id + "' needs (templates TEMPLATE+)");
  for (std::size_t i = 1; i < ts.items.size(); ++i) r.templates.push_back(template_from(ts.items[i]));
  return r;
}

}  // namespace

Calculus parse_calculus(std::string_view text) {
  SExpr e = read_sexpr(text);
  if (!e.headed("calculus") || e.items.size() < 4 || !e.items[1].atom)
    throw ParseError("expected (calculus NAME (connectives ...) (consistency ...) RULE*)");
  const SExpr& cs = e.items[2];
  if (!cs.headed("connectives")) throw ParseError("expected (connectives ...)");
  Language lang;
  for (std::size_t i = 1; i < cs.items.size(); ++i) {
    const SExpr& c = cs.items[i];
    if (!c.is_list() || c.items.size() != 2 || !c.items[0].atom)
      throw ParseError("malformed connective declaration " + c.str());
    lang.add(Connective{c.items[0].text, int_from_sexpr(c.items[1])});
  }
  const SExpr& con = e.items[3];
  Consistency consistency;
  if (con.headed("consistency") && con.items.size() == 2 && con.items[1].is_atom("assumed")) {
    consistency = Consistency::Assumed;
  } else if (con.headed("consistency") && con.items.size() == 2 && con.items[1].is_atom("unknown")) {
    consistency = Consistency::Unknown;
  } else {
    throw ParseError("expected (consistency assumed|unknown)");
  }
  std::vector<RuleSchema> rules;
  for (std::size_t i = 4; i < e.items.size(); ++i) rules.push_back(rule_from(e.items[i]));
  return Calculus(e.items[1].text, std::move(lang), consistency, std::move(rules));
}

std::string format_calculus(const Calculus& calc) {
  std::string out = "(calculus " + calc.name() + "\n  (connectives";
  for (const auto& c : calc.language().connectives())
    out += " (" + c.name + " " + std::to_string(c.arity) + ")";
  out += ")\n  (consistency ";
  out += calc.consistency() == Consistency::Assumed ? "assumed" : "unknown";
  out += ")";
  for (const auto& r : calc.rules()) {
    out += "\n  (rule " + r.id + " " + side_name(r.side) + " " + r.connective + " " +
           r.context.str() + " (templates";
    for (const auto& t : r.templates) {
      out += " (premises";
      for (const auto& prem : t.premises) {
        out += " (premise";
        for (const auto& s : prem)
          out += std::string(" (") + label_char(s.label) + " arg " + std::to_string(s.arg + 1) + ")";
        out += ")";
      }
      out += ")";
    }
    out += "))";
  }
  return out + ")\n";
}

RuleInstance instantiate(const RuleSchema& rule, const Formula& principal, int template_index,
                         const Sequent& context) {
  if (principal.is_var() || principal.head() != rule.connective)
    throw CalculusError("rule '" + rule.id + "' expects principal connective '" + rule.connective +
                        "', got " + principal.text());
  if (template_index < 0 || template_index >= static_cast<int>(rule.templates.size()))
    throw CalculusError("rule '" + rule.id + "' has no template " + std::to_string(template_index));
  for (std::size_t i = 0; i < context.size(); ++i)
    if (!rule.context.matches(context[i]))
      throw CalculusError("context occurrence " + std::to_string(i) + " " +
                          format_lformula(context[i]) + " violates " + rule.context.str() +
                          " of rule '" + rule.id + "'");
  RuleInstance inst;
  inst.rule = rule.id;
  inst.principal = LFormula{side_label(rule.side), principal};
  inst.template_index = template_index;
  inst.context = context;
  const auto& t = rule.templates[template_index];
  for (std::size_t m = 0; m < t.premises.size(); ++m) {
    Sequent prem = context;
    prem.append(rule.auxiliaries(principal, template_index, static_cast<int>(m)));
    inst.premises.push_back(std::move(prem));
  }
  inst.conclusion = context;
  inst.conclusion.push_back(inst.principal);
  return inst;
}

}  // namespace cutrx
