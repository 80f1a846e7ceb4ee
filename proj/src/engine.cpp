#include "cutrx/engine.hpp"

#include <algorithm>
#include <set>

namespace cutrx {

namespace {

bool any(const Bits& b) { return std::find(b.begin(), b.end(), true) != b.end(); }

std::vector<int> positions(const Bits& b) {
  std::vector<int> out;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i]) out.push_back(static_cast<int>(i));
  return out;
}

Sequent unmarked(const Sequent& s, const Bits& b) {
  Sequent out;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!b[i]) out.push_back(s[i]);
  return out;
}

Bits either(Bits a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] || b[i];
  return a;
}

Sequent concat(Sequent a, const Sequent& b) {
  a.append(b);
  return a;
}

bool principal_marked(const Proof& node, const Bits& marks) {
  return node.step.kind == StepKind::Rule && node.step.principal_pos >= 0 && marks[node.step.principal_pos];
}

bool initial_marked(const Proof& node, const Bits& marks) {
  return node.step.kind == StepKind::Initial && any(marks);
}

// Lowermost nodes where a marked occurrence is principal.
struct Critical {
  const Proof* node;
  Bits marks;
  Sequent context;
};

void collect_critical(const Proof& node, const Bits& marks, std::vector<Critical>& out) {
  if (!any(marks)) return;
  if (principal_marked(node, marks)) {
    out.push_back(Critical{&node, marks, unmarked(node.end, marks)});
    return;
  }
  for (std::size_t k = 0; k < node.premises.size(); ++k)
    collect_critical(node.premises[k], premise_marks(node, marks, k), out);
}

// Path to the leftmost node, in post-order, that ends in a cut of interest
// and has none above it.
bool find_uppermost(const Proof& pf, bool all_cuts, Path& path) {
  for (std::size_t k = 0; k < pf.premises.size(); ++k) {
    path.push_back(static_cast<int>(k));
    if (find_uppermost(pf.premises[k], all_cuts, path)) return true;
    path.pop_back();
  }
  return pf.step.kind == StepKind::Multicut && (all_cuts || !is_analytic(pf));
}

int count_cuts(const Proof& pf, bool all_cuts) {
  int n = pf.step.kind == StepKind::Multicut && (all_cuts || !is_analytic(pf)) ? 1 : 0;
  for (const auto& c : pf.premises) n += count_cuts(c, all_cuts);
  return n;
}

// Returns whether a relevant cut occurs in pf; records bound violations.
bool bounded(const Proof& pf, int d, int r, bool all_cuts, bool& ok) {
  bool above = false;
  for (const auto& c : pf.premises) above = bounded(c, d, r, all_cuts, ok) || above;
  if (pf.step.kind != StepKind::Multicut || !(all_cuts || !is_analytic(pf))) return above;
  int degree = pf.step.cut.size();
  if (degree > d || (degree == d && (node_count(pf) - 1 >= r || above))) ok = false;
  return true;
}

}  // namespace

Engine::Engine(const Calculus& calc, EngineOptions opts) : calc_(calc), opts_(opts), expander_(calc) {}

const ClassificationReport& Engine::report() {
  if (!report_) report_ = classify_calculus(calc_);
  return *report_;
}

int Engine::case_of(const std::string& conn) {
  auto it = cases_.find(conn);
  if (it != cases_.end()) return it->second;
  return cases_[conn] = class_case(calc_, conn);
}

const Proof& Engine::witness(const std::string& conn, int left_template, int right_template) {
  auto key = std::make_tuple(conn, left_template, right_template);
  auto it = witnesses_.find(key);
  if (it != witnesses_.end()) return it->second;
  auto w = principal_reduction_witness(calc_, conn, left_template, right_template);
  if (!w)
    throw PreconditionError("no principal case reduction for " + conn + " (templates " +
                            std::to_string(left_template) + ", " + std::to_string(right_template) + ")");
  return witnesses_.emplace(key, std::move(*w)).first->second;
}

// The witness with K added to every sequent; open leaf k becomes leaves[k].
Proof Engine::lift(const Proof& w, const Sequent& k, const std::vector<Proof>& leaves) {
  Sequent target = concat(k, w.end);
  switch (w.step.kind) {
    case StepKind::Open: return structural_to(leaves.at(w.step.hypothesis), target);
    case StepKind::Weakening: return weaken_to(lift(w.premises[0], k, leaves), target);
    case StepKind::Contraction: return contract_to(lift(w.premises[0], k, leaves), target);
    case StepKind::Multicut: {
      std::vector<int> cut[2];
      for (int side = 0; side < 2; ++side)
        for (std::size_t i = 0; i < w.ancestry[side].size(); ++i)
          if (w.ancestry[side][i] == -1) cut[side].push_back(static_cast<int>(k.size() + i));
      Proof m = multicut(lift(w.premises[0], k, leaves), lift(w.premises[1], k, leaves), w.step.cut, cut[0],
                         cut[1]);
      return structural_to(std::move(m), target);
    }
    default: throw InvariantError("principal case witness uses a logical inference");
  }
}

// Principal case: `rn` ends in (∘r), `ln` in (∘l), both principal on marked
// occurrences of C. Proves the unmarked parts of both conclusions.
Proof Engine::combine(const Proof& rn, const Bits& rm, const Proof& ln, const Bits& lm, const Formula& c) {
  Sequent K = concat(unmarked(rn.end, rm), unmarked(ln.end, lm));
  const RuleSchema& rr = calc_.rule_for(c.head(), Side::Right);
  const RuleSchema& lr = calc_.rule_for(c.head(), Side::Left);
  std::vector<Proof> leaves;
  // Hypotheses: premises of (∘l) first, then of (∘r).
  for (std::size_t n = 0; n < ln.premises.size(); ++n) {
    Bits pm = premise_marks(ln, lm, n);
    Proof x = any(pm) ? multicut(rn, ln.premises[n], c, positions(rm), positions(pm)) : ln.premises[n];
    leaves.push_back(structural_to(
        std::move(x), concat(K, lr.auxiliaries(c, ln.step.template_index, static_cast<int>(n)))));
  }
  for (std::size_t m = 0; m < rn.premises.size(); ++m) {
    Bits pm = premise_marks(rn, rm, m);
    Proof x = any(pm) ? multicut(rn.premises[m], ln, c, positions(pm), positions(lm)) : rn.premises[m];
    leaves.push_back(structural_to(
        std::move(x), concat(K, rr.auxiliaries(c, rn.step.template_index, static_cast<int>(m)))));
  }
  const Proof& w = witness(c.head(), ln.step.template_index, rn.step.template_index);
  std::map<std::string, Formula> sigma;
  for (std::size_t i = 0; i < c.args().size(); ++i) sigma["x" + std::to_string(i + 1)] = c.arg(i);
  return lift(substitute_variables(w, sigma), K, leaves);
}

Proof Engine::principal(const Proof& cut) {
  Proof out = combine(cut.premises[0], cut_marks(cut, 0), cut.premises[1], cut_marks(cut, 1), cut.step.cut);
  return permute_root(std::move(out), cut.end);
}

Proof Engine::invert_marked(const Proof& pf, const Bits& marks, const Formula& c, Side side, int m) {
  const RuleSchema& rule = calc_.rule_for(c.head(), side);
  Sequent lam = rule.auxiliaries(c, 0, m);
  // The premise of a multicut on C holding cut occurrences with our label.
  const std::size_t same = side == Side::Left ? 1 : 0;
  Intercept icpt = [&](const Proof& node, const Bits& mk, const Sequent& target) -> std::optional<Proof> {
    if (principal_marked(node, mk)) return invert_marked(node.premises.at(m), premise_marks(node, mk, m), c, side, m);
    if (node.step.kind == StepKind::Multicut && node.step.cut == c) {
      Bits pm = either(premise_marks(node, mk, same), cut_marks(node, same));
      return structural_to(invert_marked(node.premises[same], pm, c, side, m), target);
    }
    return std::nullopt;
  };
  return substitute_ancestors(calc_, pf, marks, lam, icpt);
}

std::vector<Proof> Engine::invert(const Proof& pf, int occ) {
  if (occ < 0 || occ >= static_cast<int>(pf.end.size())) throw ProofError("no occurrence " + std::to_string(occ));
  const LFormula& x = pf.end[occ];
  if (x.formula.is_var()) throw PreconditionError("cannot invert the variable " + x.formula.text());
  Side side = x.label == Label::L ? Side::Left : Side::Right;
  Verdict v = check_invertibility(calc_, x.formula.head(), side);
  if (!v.holds)
    throw PreconditionError(x.formula.head() + " is not " + side_name(side) + "-invertible: " + v.reason);
  Bits marks(pf.end.size(), false);
  marks[occ] = true;
  std::vector<Proof> out;
  const RuleSchema& rule = calc_.rule_for(x.formula.head(), side);
  for (std::size_t m = 0; m < rule.templates[0].premises.size(); ++m)
    out.push_back(invert_marked(pf, marks, x.formula, side, static_cast<int>(m)));
  return out;
}

Proof Engine::inversion(const Proof& cut) {
  const Formula& c = cut.step.cut;
  const Sequent& K = cut.end;
  std::vector<Proof> leaves;
  const Side sides[2] = {Side::Left, Side::Right};
  // (∘l) premises come from δ, (∘r) premises from γ.
  for (Side side : sides) {
    const Proof& p = cut.premises[side == Side::Left ? 1 : 0];
    Proof q = structural_to(p, concat(K, Sequent{lf(side_label(side), c)}));
    Bits marks(q.end.size(), false);
    marks.back() = true;
    const RuleSchema& rule = calc_.rule_for(c.head(), side);
    for (std::size_t m = 0; m < rule.templates[0].premises.size(); ++m)
      leaves.push_back(invert_marked(q, marks, c, side, static_cast<int>(m)));
  }
  std::map<std::string, Formula> sigma;
  for (std::size_t i = 0; i < c.args().size(); ++i) sigma["x" + std::to_string(i + 1)] = c.arg(i);
  return permute_root(lift(substitute_variables(witness(c.head(), 0, 0), sigma), K, leaves), K);
}

// Moves the cut into premise `into` (1: antecedent shift, 0: succedent shift).
Proof Engine::shift(const Proof& cut, int into) {
  const Formula& c = cut.step.cut;
  const Proof& top = cut.premises[into];
  const Proof& other = cut.premises[1 - into];
  Bits tm = cut_marks(cut, into), om = cut_marks(cut, 1 - into);
  auto cut_with = [&](const Proof& piece, const Bits& pm) {
    return into == 1 ? multicut(other, piece, c, positions(om), positions(pm))
                     : multicut(piece, other, c, positions(pm), positions(om));
  };
  if (top.step.kind == StepKind::Multicut && top.step.cut == c) {
    Bits pm = either(premise_marks(top, tm, into), cut_marks(top, into));
    return structural_to(cut_with(top.premises[into], pm), cut.end);
  }
  Sequent rest = unmarked(other.end, om);
  std::vector<std::optional<Proof>> premises(top.premises.size());
  for (std::size_t k = 0; k < top.premises.size(); ++k) {
    Bits pm = premise_marks(top, tm, k);
    if (any(pm))
      premises[k] = structural_to(cut_with(top.premises[k], pm), substituted_end(top.premises[k].end, pm, rest));
  }
  // One level of substitution: the marked premises of `top` are replaced by
  // the cuts built above.
  Proof rebuilt = substitute_ancestors(calc_, top, tm, rest,
                                       [&](const Proof& node, const Bits&, const Sequent&) -> std::optional<Proof> {
                                         for (std::size_t k = 0; k < top.premises.size(); ++k)
                                           if (&node == &top.premises[k]) return premises[k];
                                         return std::nullopt;
                                       });
  return structural_to(std::move(rebuilt), cut.end);
}

// The premise `initial_side` is an initial sequent whose cut occurrence is
// principal: the cut is dropped.
Proof Engine::drop_initial(const Proof& cut, int initial_side) {
  return structural_to(cut.premises[1 - initial_side], cut.end);
}

Proof Engine::renaming(const Proof& cut) {
  const std::string& x = cut.step.cut.head();
  std::set<Formula> subs;
  for (const auto& y : cut.end) {
    auto s = subformulas(y.formula);
    subs.insert(s.begin(), s.end());
  }
  if (subs.empty())
    throw InconsistencyError("cut on " + x + " concludes the empty sequent; the calculus proves it");
  Formula a = *std::min_element(subs.begin(), subs.end(), [](const Formula& f, const Formula& g) {
    return f.size() != g.size() ? f.size() < g.size() : f < g;
  });
  std::function<Proof(const Proof&)> go = [&](const Proof& pf) -> Proof {
    if (pf.step.kind == StepKind::Initial && pf.step.var == x) {
      Sequent target = substitute_variable(pf.end, x, a);
      return permute_root(expander_.require(a), target);
    }
    Proof out;
    out.end = substitute_variable(pf.end, x, a);
    out.step = pf.step;
    if (!out.step.cut.is_null()) out.step.cut = substitute_variable(out.step.cut, x, a);
    if (!out.step.principal.is_null()) out.step.principal = substitute_variable(out.step.principal, x, a);
    out.ancestry = pf.ancestry;
    for (const auto& c : pf.premises) out.premises.push_back(go(c));
    return out;
  };
  return go(cut);
}

Proof Engine::analytic_cutting(const Proof& cut0, int near, ReductionOutcome& outcome) {
  const Formula& c = cut0.step.cut;
  Proof cut = cut0;
  for (auto& p : cut.premises) p = remove_redundant_cuts(p);

  Bits marks[2] = {cut_marks(cut, 0), cut_marks(cut, 1)};
  std::vector<Critical> crit[2];
  for (int s = 0; s < 2; ++s) collect_critical(cut.premises[s], marks[s], crit[s]);

  // No critical inference: every ancestor was introduced by weakening.
  for (int s = 0; s < 2; ++s)
    if (crit[s].empty())
      return structural_to(substitute_ancestors(calc_, cut.premises[s], marks[s], {}), cut.end);

  const int far = 1 - near;
  const Proof& near_pf = cut.premises[near];
  const Proof& far_pf = cut.premises[far];
  std::vector<Sequent> contexts;
  for (const auto& cr : crit[near]) contexts.push_back(cr.context);
  outcome.near_context = unmarked(near_pf.end, marks[near]);

  std::map<std::pair<std::size_t, std::size_t>, Proof> tops;
  auto top = [&](std::size_t i, std::size_t j) -> const Proof& {
    auto key = std::make_pair(i, j);
    auto it = tops.find(key);
    if (it != tops.end()) return it->second;
    const Critical& a = crit[near][i];
    const Critical& b = crit[far][j];
    Proof p = near == 0 ? combine(*a.node, a.marks, *b.node, b.marks, c) : combine(*b.node, b.marks, *a.node, a.marks, c);
    return tops.emplace(key, std::move(p)).first->second;
  };
  // bot(far)[Γ_i/C] closed by the top_ij.
  auto matching_side = [&](std::size_t i) {
    return substitute_ancestors(calc_, far_pf, marks[far], contexts[i],
                                [&](const Proof& node, const Bits& mk, const Sequent& target) -> std::optional<Proof> {
                                  if (!principal_marked(node, mk)) return std::nullopt;
                                  for (std::size_t j = 0; j < crit[far].size(); ++j)
                                    if (crit[far][j].node == &node) return structural_to(top(i, j), target);
                                  throw InvariantError("critical inference missing from the split");
                                });
  };

  for (std::size_t i = 0; i < contexts.size(); ++i)
    if (contexts[i].empty()) return structural_to(matching_side(i), cut.end);

  std::vector<Formula> F = distribution_formulas(contexts);
  outcome.distribution = F;
  if (F.size() >= 63 || (std::uint64_t{1} << F.size()) > opts_.max_leaves)
    throw LimitError("distribution tree over " + std::to_string(F.size()) + " formulas exceeds " +
                     std::to_string(opts_.max_leaves) + " leaves");
  const Sequent& K = cut.end;
  return distribution_cut_tree(F, K, [&](const Sequent& D) -> Proof {
    DistributionKind kind = classify_distribution(D, contexts);
    if (kind.representatives) {
      const Sequent& E = *kind.representatives;
      Proof p = substitute_ancestors(
          calc_, near_pf, marks[near], E,
          [&](const Proof& node, const Bits& mk, const Sequent& target) -> std::optional<Proof> {
            if (!principal_marked(node, mk)) return std::nullopt;
            for (const auto& x : unmarked(node.end, mk))
              if (E.contains(flip(x))) return structural_to(expander_.require(x.formula), target);
            throw InvariantError("critical context without a representative");
          });
      return structural_to(std::move(p), concat(K, D));
    }
    if (kind.matching < 0) throw InvariantError("distribution " + format_sequent(D) + " is uncovered");
    return structural_to(matching_side(static_cast<std::size_t>(kind.matching)), concat(K, D));
  });
}

ReductionOutcome Engine::dispatch(const Proof& cut, bool eliminating) {
  if (cut.step.kind != StepKind::Multicut) throw ProofError("reduction target is not a multicut");
  ReductionOutcome out;
  CutInfo info = cut_measures(cut);
  out.degree = info.degree;
  out.rank = info.rank;
  const Formula& c = cut.step.cut;
  const Proof& g = cut.premises[0];
  const Proof& d = cut.premises[1];
  bool gp = principal_marked(g, cut_marks(cut, 0)) || initial_marked(g, cut_marks(cut, 0));
  bool dp = principal_marked(d, cut_marks(cut, 1)) || initial_marked(d, cut_marks(cut, 1));

  if (c.is_var()) {
    if (!eliminating) {
      out.name = "renaming";
      out.proof = renaming(cut);
    } else if (report().rightable_variables.holds) {
      out.name = gp ? "initial" : "succedent-shift";
      out.proof = gp ? drop_initial(cut, 0) : shift(cut, 0);
    } else if (report().leftable_variables.holds) {
      out.name = dp ? "initial" : "antecedent-shift";
      out.proof = dp ? drop_initial(cut, 1) : shift(cut, 1);
    } else {
      throw PreconditionError(calc_.name() + " has neither leftable nor rightable variables");
    }
    return out;
  }
  if (gp && dp) {
    out.name = "principal";
    out.proof = principal(cut);
    return out;
  }
  switch (case_of(c.head())) {
    case 1:
      out.name = "inversion";
      out.proof = inversion(cut);
      break;
    case 2:
      out.name = dp ? "succedent-shift" : "antecedent-shift";
      out.proof = shift(cut, dp ? 0 : 1);
      break;
    case 3:
      out.name = gp ? "antecedent-shift" : "succedent-shift";
      out.proof = shift(cut, gp ? 1 : 0);
      break;
    case 4:
    case 5:
      if (eliminating) throw PreconditionError(c.head() + " is not class 1 in " + calc_.name());
      out.name = case_of(c.head()) == 4 ? "analytic-cut-left" : "analytic-cut-right";
      out.proof = analytic_cutting(cut, case_of(c.head()) == 4 ? 0 : 1, out);
      break;
    default:
      throw PreconditionError(c.head() + " is in neither class in " + calc_.name());
  }
  return out;
}

namespace {

void verify_outcome(const Calculus& calc, const Proof& cut, const ReductionOutcome& out, bool all_cuts) {
  if (!out.proof.end.identical(cut.end))
    throw InvariantError(out.name + " changed the endsequent to " + format_sequent(out.proof.end));
  require_valid(calc, out.proof);
  bool ok = true;
  bounded(out.proof, out.degree, out.rank, all_cuts, ok);
  if (!ok)
    throw InvariantError(out.name + " output is not (" + std::to_string(out.degree) + "," +
                         std::to_string(out.rank) + ")-reduced");
}

}  // namespace

ReductionOutcome Engine::reduce_once(const Proof& cut) {
  if (cut.step.kind != StepKind::Multicut || is_analytic(cut))
    throw PreconditionError("reduce_once needs a final non-analytic multicut");
  ReductionOutcome out = dispatch(cut, false);
  if (opts_.verify) verify_outcome(calc_, cut, out, false);
  return out;
}

ReductionOutcome Engine::reduce_once_eliminating(const Proof& cut) {
  ReductionOutcome out = dispatch(cut, true);
  if (opts_.verify) verify_outcome(calc_, cut, out, true);
  return out;
}

Proof Engine::run(const Proof& pf, bool eliminating) {
  Proof cur = pf;
  for (;;) {
    Path path;
    if (!find_uppermost(cur, eliminating, path)) break;
    if (++steps_ > opts_.max_steps)
      throw LimitError("step cap of " + std::to_string(opts_.max_steps) + " reached");
    Proof& node = at(cur, path);
    ReductionOutcome o = eliminating ? reduce_once_eliminating(node) : reduce_once(node);
    node = std::move(o.proof);
    if (opts_.trace) {
      *opts_.trace << "STEP " << steps_ << " " << o.name << " degree=" << o.degree << " rank=" << o.rank
                   << " cuts=" << count_cuts(cur, eliminating);
      if (o.name.starts_with("analytic")) *opts_.trace << " F=" << o.distribution.size();
      *opts_.trace << "\n";
    }
    if (opts_.on_step) opts_.on_step(cur, o);
  }
  return cur;
}

Proof Engine::restrict(const Proof& pf) {
  const ClassificationReport& r = report();
  if (!r.axiom_expansion || !r.principal_reductions)
    throw PreconditionError(calc_.name() + " lacks axiom expansion or principal case reductions");
  for (const auto& c : r.connectives)
    if (c.class_case == 0) throw PreconditionError(c.connective + " is in neither class in " + calc_.name());
  Proof out = run(pf, false);
  if (opts_.verify) {
    require_valid(calc_, out);
    if (!is_locally_analytic(out)) throw InvariantError("restriction left a non-analytic cut");
  }
  return out;
}

Proof Engine::eliminate(const Proof& pf) {
  if (report().calculus_class != 1) throw PreconditionError(calc_.name() + " is not class 1");
  Proof out = run(pf, true);
  if (opts_.verify) {
    require_valid(calc_, out);
    if (!is_cut_free(out)) throw InvariantError("elimination left a cut");
  }
  return out;
}

Proof restrict(const Calculus& calc, const Proof& pf, const EngineOptions& opts) {
  return Engine(calc, opts).restrict(pf);
}

Proof eliminate(const Calculus& calc, const Proof& pf, const EngineOptions& opts) {
  return Engine(calc, opts).eliminate(pf);
}

std::vector<Proof> invert(const Calculus& calc, const Proof& pf, int occ) { return Engine(calc).invert(pf, occ); }

}  // namespace cutrx
