#include <algorithm>

#include "cutrx/engine.hpp"

namespace cutrx {

Bits premise_marks(const Proof& node, const Bits& marks, std::size_t k) {
  const auto& map = node.ancestry.at(k);
  Bits out(map.size(), false);
  for (std::size_t i = 0; i < map.size(); ++i)
    out[i] = map[i] >= 0 && marks[map[i]] &&
             !(node.step.kind == StepKind::Rule && map[i] == node.step.principal_pos);
  return out;
}

Bits cut_marks(const Proof& cut, std::size_t k) {
  if (cut.step.kind != StepKind::Multicut) throw ProofError("not a multicut node");
  const auto& map = cut.ancestry.at(k);
  Bits out(map.size(), false);
  for (std::size_t i = 0; i < map.size(); ++i) out[i] = map[i] == -1;
  return out;
}

Sequent substituted_end(const Sequent& end, const Bits& marks, const Sequent& gamma) {
  Sequent out;
  for (std::size_t i = 0; i < end.size(); ++i) {
    if (marks[i]) out.append(gamma);
    else out.push_back(end[i]);
  }
  return out;
}

namespace {

bool any(const Bits& b) { return std::find(b.begin(), b.end(), true) != b.end(); }

// Start of each occurrence's block after substitution.
std::vector<int> block_starts(const Bits& marks, std::size_t width) {
  std::vector<int> out(marks.size());
  int at = 0;
  for (std::size_t i = 0; i < marks.size(); ++i) {
    out[i] = at;
    at += marks[i] ? static_cast<int>(width) : 1;
  }
  return out;
}

std::string where(const Proof& node) {
  switch (node.step.kind) {
    case StepKind::Rule: return "rule " + node.step.rule + " concluding " + format_sequent(node.end);
    case StepKind::Initial: return "initial sequent on " + node.step.var;
    case StepKind::Open: return "open leaf " + format_sequent(node.end);
    case StepKind::Multicut: return "multicut on " + node.step.cut.text();
    default: return "structural step concluding " + format_sequent(node.end);
  }
}

// One level of the Substitution Lemma: `premises` are already substituted.
Proof rebuild(const Calculus& calc, const Proof& node, const Bits& marks, const Sequent& gamma,
              std::vector<Proof> premises) {
  const std::size_t w = gamma.size();
  if (node.step.kind == StepKind::Initial) throw SubstitutionError("cannot substitute into the " + where(node));
  if (node.step.kind == StepKind::Rule) {
    if (node.step.principal_pos >= 0 && marks[node.step.principal_pos])
      throw SubstitutionError("marked occurrence is principal in " + where(node));
    const RuleSchema* rule = calc.find_rule(node.step.rule);
    if (!rule) throw SubstitutionError("unknown rule in " + where(node));
    for (const auto& g : gamma)
      if (!rule->context.matches(g))
        throw SubstitutionError(format_lformula(g) + " violates context " + rule->context.str() + " of " +
                                where(node));
  }
  Proof out;
  out.end = substituted_end(node.end, marks, gamma);
  out.step = node.step;
  if (out.step.kind == StepKind::Open) out.step.hypothesis = -1;
  auto cstart = block_starts(marks, w);
  if (out.step.kind == StepKind::Rule) out.step.principal_pos = cstart[node.step.principal_pos];
  for (std::size_t k = 0; k < node.premises.size(); ++k) {
    Bits pm = premise_marks(node, marks, k);
    Sequent want = substituted_end(node.premises[k].end, pm, gamma);
    Proof& p = premises[k];
    if (!p.end.identical(want)) p = permute_root(std::move(p), want);
    auto pstart = block_starts(pm, w);
    const auto& old = node.ancestry[k];
    std::vector<int> map(want.size(), -1);
    for (std::size_t i = 0; i < old.size(); ++i) {
      int j = old[i];
      if (pm[i]) {
        for (std::size_t t = 0; t < w; ++t) map[pstart[i] + t] = cstart[j] + static_cast<int>(t);
      } else if (j < 0) {
        map[pstart[i]] = -1;
      } else {
        map[pstart[i]] = cstart[j];
      }
    }
    out.ancestry.push_back(std::move(map));
  }
  out.premises = std::move(premises);
  return out;
}

Proof substitute(const Calculus& calc, const Proof& node, const Bits& marks, const Sequent& gamma,
                 const Intercept& intercept) {
  if (!any(marks)) return node;
  Sequent target = substituted_end(node.end, marks, gamma);
  if (intercept) {
    if (auto r = intercept(node, marks, target)) {
      if (!(r->end == target))
        throw InvariantError("replacement for " + where(node) + " concludes " + format_sequent(r->end) +
                             " instead of " + format_sequent(target));
      return permute_root(std::move(*r), target);
    }
  }
  std::vector<Proof> premises;
  for (std::size_t k = 0; k < node.premises.size(); ++k)
    premises.push_back(substitute(calc, node.premises[k], premise_marks(node, marks, k), gamma, intercept));
  return rebuild(calc, node, marks, gamma, std::move(premises));
}

}  // namespace

Proof substitute_ancestors(const Calculus& calc, const Proof& pf, const Bits& marks, const Sequent& gamma,
                           const Intercept& intercept) {
  if (marks.size() != pf.end.size()) throw ProofError("marks do not fit the root sequent");
  return substitute(calc, pf, marks, gamma, intercept);
}

Proof remove_redundant_cuts(const Proof& pf) {
  Proof out;
  out.end = pf.end;
  out.step = pf.step;
  out.ancestry = pf.ancestry;
  for (const auto& c : pf.premises) out.premises.push_back(remove_redundant_cuts(c));
  if (out.step.kind != StepKind::Multicut) return out;
  // The premise holding the cut occurrences with the label found below.
  if (out.end.contains(lf(Label::L, out.step.cut))) return structural_to(std::move(out.premises[1]), out.end);
  if (out.end.contains(lf(Label::R, out.step.cut))) return structural_to(std::move(out.premises[0]), out.end);
  return out;
}

std::vector<Formula> distribution_formulas(const std::vector<Sequent>& contexts) {
  std::vector<Formula> out;
  for (const auto& s : contexts)
    for (const auto& x : s)
      if (std::find(out.begin(), out.end(), x.formula) == out.end()) out.push_back(x.formula);
  return out;
}

std::vector<Sequent> distributions(const std::vector<Formula>& F) {
  if (F.size() >= 63) throw LimitError("too many distribution formulas");
  std::vector<Sequent> out;
  const std::uint64_t n = std::uint64_t{1} << F.size();
  for (std::uint64_t leaf = 0; leaf < n; ++leaf) {
    Sequent d;
    for (std::size_t k = 0; k < F.size(); ++k) {
      bool left = (leaf >> (F.size() - 1 - k)) & 1;
      d.push_back(lf(left ? Label::L : Label::R, F[k]));
    }
    out.push_back(std::move(d));
  }
  return out;
}

DistributionKind classify_distribution(const Sequent& D, const std::vector<Sequent>& contexts) {
  DistributionKind out;
  Sequent reps;
  bool orthogonal = true;
  for (const auto& ctx : contexts) {
    auto it = std::find_if(ctx.begin(), ctx.end(), [&](const LFormula& x) { return D.contains(flip(x)); });
    if (it == ctx.end()) {
      orthogonal = false;
      break;
    }
    if (!reps.contains(flip(*it))) reps.push_back(flip(*it));
  }
  if (orthogonal) out.representatives = reps;
  for (std::size_t i = 0; i < contexts.size() && out.matching < 0; ++i) {
    const auto& ctx = contexts[i];
    if (std::all_of(ctx.begin(), ctx.end(), [&](const LFormula& x) { return D.contains(x); }))
      out.matching = static_cast<int>(i);
  }
  return out;
}

namespace {

Proof cut_tree(const std::vector<Formula>& F, std::size_t k, const Sequent& K, const Sequent& S,
               const std::function<Proof(const Sequent&)>& leaf) {
  Sequent here = K;
  here.append(S);
  if (k == F.size()) {
    Proof p = leaf(S);
    return p.end.identical(here) ? p : structural_to(std::move(p), here);
  }
  Sequent sl = S, sr = S;
  sl.push_back(lf(Label::R, F[k]));
  sr.push_back(lf(Label::L, F[k]));
  Proof left = cut_tree(F, k + 1, K, sl, leaf);
  Proof right = cut_tree(F, k + 1, K, sr, leaf);
  int li = static_cast<int>(left.end.size()) - 1, ri = static_cast<int>(right.end.size()) - 1;
  return structural_to(multicut(std::move(left), std::move(right), F[k], {li}, {ri}), here);
}

}  // namespace

Proof distribution_cut_tree(const std::vector<Formula>& F, const Sequent& K,
                            const std::function<Proof(const Sequent& D)>& leaf) {
  return cut_tree(F, 0, K, {}, leaf);
}

}  // namespace cutrx
