#include "cutrx/classifier.hpp"

#include <chrono>
#include <functional>
#include <set>

namespace cutrx {

const char* property_name(Property p) {
  switch (p) {
    case Property::Leftable: return "leftable";
    case Property::Rightable: return "rightable";
    case Property::WeaklyLeftable: return "weakly-leftable";
    case Property::WeaklyRightable: return "weakly-rightable";
    case Property::InverseLeftable: return "inverse-leftable";
    case Property::InverseRightable: return "inverse-rightable";
  }
  return "?";
}

const std::vector<Property>& all_properties() {
  static const std::vector<Property> kAll = {Property::Leftable,        Property::Rightable,
                                             Property::WeaklyLeftable,  Property::WeaklyRightable,
                                             Property::InverseLeftable, Property::InverseRightable};
  return kAll;
}

namespace {

const Connective& require_connective(const Calculus& calc, std::string_view conn) {
  const Connective* c = calc.language().find(conn);
  if (!c) throw CalculusError("unknown connective '" + std::string(conn) + "'");
  return *c;
}

Verdict fail(std::string rule, std::string reason) { return Verdict{false, std::move(rule), std::move(reason)}; }

}  // namespace

Verdict check_substitution_property(const Calculus& calc, std::string_view conn, Property prop) {
  require_connective(calc, conn);
  bool left = prop == Property::Leftable || prop == Property::WeaklyLeftable || prop == Property::InverseLeftable;
  Label label = left ? Label::L : Label::R;
  const ContextRestriction& cl = calc.rule_for(conn, Side::Left).context;
  const ContextRestriction& cr = calc.rule_for(conn, Side::Right).context;
  for (const auto& r : calc.rules()) {
    if (!r.context.admits_principal(label, conn)) continue;
    std::optional<ContextPattern> missing;
    switch (prop) {
      case Property::Leftable:
      case Property::Rightable:
        if (!r.context.is_unrestricted())
          return fail(r.id, std::string(1, label_char(label)) + ":" + std::string(conn) +
                                " may occur in the restricted context " + r.context.str());
        continue;
      case Property::WeaklyLeftable: missing = cr.first_uncovered(r.context); break;
      case Property::WeaklyRightable: missing = cl.first_uncovered(r.context); break;
      case Property::InverseLeftable: missing = cl.flipped().first_uncovered(r.context); break;
      case Property::InverseRightable: missing = cr.flipped().first_uncovered(r.context); break;
    }
    if (missing) return fail(r.id, "pattern " + missing->str() + " is not allowed by " + r.context.str());
  }
  return {};
}

Verdict check_invertibility(const Calculus& calc, std::string_view conn, Side side) {
  require_connective(calc, conn);
  const RuleSchema& own = calc.rule_for(conn, side);
  if (own.templates.size() != 1) return fail(own.id, "premise template is not unique");
  std::vector<ContextPattern> slots;
  for (const auto& prem : own.templates[0].premises)
    for (const auto& s : prem) slots.push_back(ContextPattern{s.label, std::nullopt});
  ContextRestriction slot_set = ContextRestriction::of(slots);
  for (const auto& r : calc.rules()) {
    if (!r.context.admits_principal(side_label(side), conn)) continue;
    if (auto missing = slot_set.first_uncovered(r.context))
      return fail(r.id, "auxiliary pattern " + missing->str() + " is not allowed by " + r.context.str());
  }
  return {};
}

Verdict check_variable_property(const Calculus& calc, Side side) {
  Label label = side_label(side);
  for (const auto& r : calc.rules())
    if (r.context.admits_variable(label) && !r.context.is_unrestricted())
      return fail(r.id, "variables labelled " + std::string(1, label_char(label)) +
                            " may occur in the restricted context " + r.context.str());
  return {};
}

int class_case(const Calculus& calc, std::string_view conn) {
  auto has = [&](Property p) { return check_substitution_property(calc, conn, p).holds; };
  if (check_invertibility(calc, conn, Side::Left).holds && check_invertibility(calc, conn, Side::Right).holds)
    return 1;
  if (has(Property::Leftable) && has(Property::WeaklyRightable)) return 2;
  if (has(Property::Rightable) && has(Property::WeaklyLeftable)) return 3;
  if (has(Property::WeaklyLeftable) && has(Property::InverseRightable)) return 4;
  if (has(Property::WeaklyRightable) && has(Property::InverseLeftable)) return 5;
  return 0;
}

Formula generic_formula(const Calculus& calc, std::string_view conn) {
  const Connective& c = require_connective(calc, conn);
  std::vector<Formula> args;
  for (int i = 1; i <= c.arity; ++i) args.push_back(Formula::var("x" + std::to_string(i)));
  return Formula::app(c.name, std::move(args));
}

std::vector<Sequent> witness_hypotheses(const Calculus& calc, const Formula& principal, int left_template,
                                        int right_template) {
  std::vector<Sequent> out;
  const RuleSchema& l = calc.rule_for(principal.head(), Side::Left);
  const RuleSchema& r = calc.rule_for(principal.head(), Side::Right);
  for (std::size_t m = 0; m < l.templates.at(left_template).premises.size(); ++m)
    out.push_back(l.auxiliaries(principal, left_template, static_cast<int>(m)));
  for (std::size_t n = 0; n < r.templates.at(right_template).premises.size(); ++n)
    out.push_back(r.auxiliaries(principal, right_template, static_cast<int>(n)));
  return out;
}

std::optional<Proof> principal_reduction_witness(const Calculus& calc, std::string_view conn,
                                                 int left_template, int right_template) {
  Formula g = generic_formula(calc, conn);
  std::vector<Sequent> hyps = witness_hypotheses(calc, g, left_template, right_template);

  // Resolution over the supports of the hypotheses.
  struct Clause {
    std::set<LFormula> lits;
    int hyp = -1;
    int left = -1, right = -1;
    Formula atom;
  };
  std::vector<Clause> clauses;
  std::set<std::set<LFormula>> seen;
  auto add = [&](Clause c) -> bool {
    if (!seen.insert(c.lits).second) return false;
    clauses.push_back(std::move(c));
    return clauses.back().lits.empty();
  };
  bool done = false;
  for (std::size_t h = 0; h < hyps.size() && !done; ++h) {
    Clause c;
    c.lits = hyps[h].support();
    c.hyp = static_cast<int>(h);
    done = add(std::move(c));
  }
  const std::size_t kLimit = 4096;
  for (std::size_t next = 0; !done && next < clauses.size() && clauses.size() < kLimit; ++next) {
    for (std::size_t other = 0; other <= next && !done; ++other) {
      for (int dir = 0; dir < 2 && !done; ++dir) {
        std::size_t a = dir ? other : next, b = dir ? next : other;
        const std::set<LFormula> la = clauses[a].lits, lb = clauses[b].lits;
        for (const auto& x : la) {
          if (x.label != Label::R || !lb.count(lf(Label::L, x.formula))) continue;
          Clause c;
          c.lits = la;
          c.lits.erase(x);
          for (const auto& y : lb)
            if (!(y == lf(Label::L, x.formula))) c.lits.insert(y);
          c.left = static_cast<int>(a);
          c.right = static_cast<int>(b);
          c.atom = x.formula;
          if ((done = add(std::move(c)))) break;
        }
      }
    }
  }
  if (!done) return std::nullopt;

  std::function<Proof(int)> build = [&](int i) -> Proof {
    const Clause& c = clauses[i];
    if (c.hyp >= 0) return contract_duplicates(open_leaf(hyps[c.hyp], c.hyp));
    return contract_duplicates(multicut_all(build(c.left), build(c.right), c.atom));
  };
  return build(static_cast<int>(clauses.size()) - 1);
}

std::optional<Proof> AxiomExpander::expand(const Formula& f) {
  if (f.is_var()) return initial(f);
  if (auto it = memo_.find(f); it != memo_.end()) return it->second;
  std::optional<Proof> out = try_order(f, true);
  std::optional<Proof> alt = try_order(f, false);
  if (!out || (alt && node_count(*alt) < node_count(*out))) out = std::move(alt);
  memo_.emplace(f, out);
  return out;
}

Proof AxiomExpander::require(const Formula& f) {
  auto pf = expand(f);
  if (!pf) throw PreconditionError("no axiom expansion found for " + f.text() + " in " + calc_.name());
  return *pf;
}

// Closes `s` with an expansion of a complementary pair, if it has one.
std::optional<Proof> AxiomExpander::close(const Sequent& s) {
  for (const auto& x : s) {
    if (x.label != Label::L || !s.contains(lf(Label::R, x.formula))) continue;
    if (auto pf = expand(x.formula)) return structural_to(std::move(*pf), s);
  }
  return std::nullopt;
}

std::optional<Proof> AxiomExpander::try_order(const Formula& f, bool right_first) {
  Side first = right_first ? Side::Right : Side::Left;
  const RuleSchema& r1 = calc_.rule_for(f.head(), first);
  const RuleSchema& r2 = calc_.rule_for(f.head(), opposite(first));
  LFormula other = lf(side_label(opposite(first)), f);
  Sequent ctx1;
  if (r1.context.matches(other)) ctx1.push_back(other);
  const Sequent goal{lf(Label::L, f), lf(Label::R, f)};

  for (int t1 = 0; t1 < static_cast<int>(r1.templates.size()); ++t1) {
    std::vector<Proof> premises;
    bool ok = true;
    for (std::size_t m = 0; m < r1.templates[t1].premises.size() && ok; ++m) {
      Sequent s = ctx1;
      s.append(r1.auxiliaries(f, t1, static_cast<int>(m)));
      std::optional<Proof> pf = close(s);
      if (!pf && !ctx1.empty()) {
        // Decompose the other occurrence, keeping what its rule allows.
        Sequent rest;
        for (std::size_t i = 1; i < s.size(); ++i)
          if (r2.context.matches(s[i])) rest.push_back(s[i]);
        for (int t2 = 0; t2 < static_cast<int>(r2.templates.size()) && !pf; ++t2) {
          std::vector<Proof> inner;
          bool inner_ok = true;
          for (std::size_t n = 0; n < r2.templates[t2].premises.size() && inner_ok; ++n) {
            Sequent s2 = rest;
            s2.append(r2.auxiliaries(f, t2, static_cast<int>(n)));
            auto c = close(s2);
            if (c) inner.push_back(std::move(*c));
            else inner_ok = false;
          }
          if (inner_ok)
            pf = structural_to(apply_rule(calc_, r2.id, f, t2, std::move(inner), rest), s);
        }
      }
      if (pf) premises.push_back(std::move(*pf));
      else ok = false;
    }
    if (ok) return structural_to(apply_rule(calc_, r1.id, f, t1, std::move(premises), ctx1), goal);
  }
  return std::nullopt;
}

std::optional<Proof> axiom_expansion_proof(const Calculus& calc, const Formula& f) {
  return AxiomExpander(calc).expand(f);
}

Proof substitute_variables(const Proof& pf, const std::map<std::string, Formula>& sigma) {
  Proof out;
  out.end = substitute_variables(pf.end, sigma);
  out.step = pf.step;
  if (out.step.kind == StepKind::Initial) {
    auto it = sigma.find(out.step.var);
    if (it != sigma.end() && it->second.is_var()) out.step.var = it->second.head();
  }
  if (!out.step.cut.is_null()) out.step.cut = substitute_variables(out.step.cut, sigma);
  if (!out.step.principal.is_null()) out.step.principal = substitute_variables(out.step.principal, sigma);
  out.ancestry = pf.ancestry;
  for (const auto& c : pf.premises) out.premises.push_back(substitute_variables(c, sigma));
  return out;
}

const ConnectiveReport& ClassificationReport::connective(std::string_view name) const {
  for (const auto& c : connectives)
    if (c.connective == name) return c;
  throw CalculusError("no report for connective '" + std::string(name) + "'");
}

ClassificationReport classify_calculus(const Calculus& calc) {
  using clock = std::chrono::steady_clock;
  auto secs = [](clock::time_point a) { return std::chrono::duration<double>(clock::now() - a).count(); };
  ClassificationReport rep;
  rep.calculus = calc.name();
  rep.consistency = calc.consistency();
  rep.axiom_expansion = true;
  rep.principal_reductions = true;
  bool all1 = true, all2 = true;
  for (const auto& c : calc.language().connectives()) {
    ConnectiveReport cr;
    cr.connective = c.name;
    for (Property p : all_properties()) cr.properties.emplace_back(p, check_substitution_property(calc, c.name, p));
    cr.left_invertible = check_invertibility(calc, c.name, Side::Left);
    cr.right_invertible = check_invertibility(calc, c.name, Side::Right);
    cr.class_case = class_case(calc, c.name);
    all1 = all1 && class_of_case(cr.class_case) == 1;
    all2 = all2 && class_of_case(cr.class_case) >= 1;
    rep.connectives.push_back(std::move(cr));

    ExpansionReport er;
    er.connective = c.name;
    er.formula = generic_formula(calc, c.name);
    auto t0 = clock::now();
    auto ae = axiom_expansion_proof(calc, er.formula);
    er.seconds = secs(t0);
    er.found = ae && is_valid(calc, *ae) && is_cut_free(*ae);
    er.nodes = ae ? node_count(*ae) : 0;
    rep.axiom_expansion = rep.axiom_expansion && er.found;
    rep.expansions.push_back(std::move(er));

    const auto& lt = calc.rule_for(c.name, Side::Left).templates;
    const auto& rt = calc.rule_for(c.name, Side::Right).templates;
    for (int i = 0; i < static_cast<int>(lt.size()); ++i) {
      for (int j = 0; j < static_cast<int>(rt.size()); ++j) {
        WitnessReport wr;
        wr.connective = c.name;
        wr.left_template = i;
        wr.right_template = j;
        auto t1 = clock::now();
        auto w = principal_reduction_witness(calc, c.name, i, j);
        wr.seconds = secs(t1);
        if (w) {
          auto hyps = witness_hypotheses(calc, generic_formula(calc, c.name), i, j);
          CheckOptions opts;
          opts.hypotheses = &hyps;
          wr.found = w->end.empty() && is_valid(calc, *w, opts);
          wr.nodes = node_count(*w);
        }
        rep.principal_reductions = rep.principal_reductions && wr.found;
        rep.witnesses.push_back(wr);
      }
    }
  }
  rep.leftable_variables = check_variable_property(calc, Side::Left);
  rep.rightable_variables = check_variable_property(calc, Side::Right);
  bool base = rep.axiom_expansion && rep.principal_reductions;
  if (base && all1 && (rep.leftable_variables.holds || rep.rightable_variables.holds)) {
    rep.calculus_class = 1;
  } else if (base && all2 && rep.consistency == Consistency::Assumed) {
    rep.calculus_class = 2;
  }
  return rep;
}

namespace {

std::string verdict_sexp(const Verdict& v) { return v.holds ? "holds" : "fails " + v.rule; }

}  // namespace

std::string format_report_sexp(const ClassificationReport& r) {
  std::string out = "(report (calculus " + r.calculus + ")";
  for (const auto& c : r.connectives) {
    out += "\n  (connective " + c.connective;
    for (const auto& [p, v] : c.properties) out += " (prop " + std::string(property_name(p)) + " " + verdict_sexp(v) + ")";
    out += " (prop left-invertible " + verdict_sexp(c.left_invertible) + ")";
    out += " (prop right-invertible " + verdict_sexp(c.right_invertible) + ")";
    out += " (class " + std::to_string(class_of_case(c.class_case)) + " case " + std::to_string(c.class_case) + "))";
  }
  out += "\n  (axiom-expansion " + std::string(r.axiom_expansion ? "holds" : "unknown") + ")";
  out += "\n  (principal-reductions " + std::string(r.principal_reductions ? "holds" : "unknown") + ")";
  out += "\n  (variables (leftable " + verdict_sexp(r.leftable_variables) + ") (rightable " +
         verdict_sexp(r.rightable_variables) + "))";
  out += "\n  (consistency " + std::string(r.consistency == Consistency::Assumed ? "assumed" : "unknown") + ")";
  out += "\n  (calculus-class " + (r.calculus_class ? std::to_string(r.calculus_class) : std::string("none")) + "))\n";
  return out;
}

std::string format_report_table(const ClassificationReport& r) {
  auto mark = [](const Verdict& v) { return v.holds ? std::string("yes") : "no (" + v.rule + ")"; };
  std::string out = "calculus " + r.calculus + "\n";
  for (const auto& c : r.connectives) {
    out += "  " + c.connective + ": class " +
           (c.class_case ? std::to_string(class_of_case(c.class_case)) + " (case " + std::to_string(c.class_case) + ")"
                         : std::string("none")) +
           "\n";
    for (const auto& [p, v] : c.properties) out += "    " + std::string(property_name(p)) + ": " + mark(v) + "\n";
    out += "    left-invertible: " + mark(c.left_invertible) + "\n";
    out += "    right-invertible: " + mark(c.right_invertible) + "\n";
  }
  out += "  axiom expansion: " + std::string(r.axiom_expansion ? "yes" : "unknown") + "\n";
  out += "  principal reductions: " + std::string(r.principal_reductions ? "yes" : "unknown") + "\n";
  out += "  leftable variables: " + mark(r.leftable_variables) + "\n";
  out += "  rightable variables: " + mark(r.rightable_variables) + "\n";
  out += "  consistency: " + std::string(r.consistency == Consistency::Assumed ? "assumed" : "unknown") + "\n";
  out += "  calculus class: " + (r.calculus_class ? std::to_string(r.calculus_class) : std::string("none")) + "\n";
  return out;
}

}  // namespace cutrx
