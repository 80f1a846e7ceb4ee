#include "cutrx/proof.hpp"

#include <algorithm>
#include <map>

namespace cutrx {

std::string format_path(const Path& path) {
  if (path.empty()) return "/";
  std::string out;
  for (int i : path) out += "/" + std::to_string(i);
  return out;
}

const Proof& at(const Proof& pf, const Path& path) {
  const Proof* p = &pf;
  for (int i : path) {
    if (i < 0 || i >= static_cast<int>(p->premises.size()))
      throw ProofError("no node at " + format_path(path));
    p = &p->premises[i];
  }
  return *p;
}

Proof& at(Proof& pf, const Path& path) {
  return const_cast<Proof&>(at(static_cast<const Proof&>(pf), path));
}

namespace {

// Pairs each occurrence of `from` with the first unused equal occurrence of
// `to`; unpaired occurrences get -1.
std::vector<int> greedy_pairing(const Sequent& from, const Sequent& to,
                                std::vector<bool>* used_out = nullptr) {
  std::vector<bool> used(to.size(), false);
  std::vector<int> out(from.size(), -1);
  for (std::size_t i = 0; i < from.size(); ++i) {
    for (std::size_t j = 0; j < to.size(); ++j) {
      if (!used[j] && to[j] == from[i]) {
        used[j] = true;
        out[i] = static_cast<int>(j);
        break;
      }
    }
  }
  if (used_out) *used_out = std::move(used);
  return out;
}

Proof unary(StepKind kind, Proof pf, Sequent end, std::vector<int> map) {
  Proof out;
  out.end = std::move(end);
  out.step.kind = kind;
  out.ancestry.push_back(std::move(map));
  out.premises.push_back(std::move(pf));
  return out;
}

}  // namespace

Proof initial(const Formula& var) {
  if (!var.is_var()) throw ProofError("initial sequents are on variables, got " + var.text());
  Proof out;
  out.end = Sequent{lf(Label::L, var), lf(Label::R, var)};
  out.step.kind = StepKind::Initial;
  out.step.var = var.head();
  return out;
}

Proof open_leaf(Sequent s, int hypothesis) {
  Proof out;
  out.end = std::move(s);
  out.step.kind = StepKind::Open;
  out.step.hypothesis = hypothesis;
  return out;
}

Proof weaken_to(Proof pf, const Sequent& target) {
  auto map = greedy_pairing(pf.end, target);
  for (std::size_t i = 0; i < map.size(); ++i)
    if (map[i] < 0)
      throw ProofError("weakening target " + format_sequent(target) + " lacks " +
                       format_lformula(pf.end[i]));
  return unary(StepKind::Weakening, std::move(pf), target, std::move(map));
}

Proof contract_to(Proof pf, const Sequent& target) {
  if (pf.end.support() != target.support() || !target.submultiset_of(pf.end))
    throw ProofError(format_sequent(target) + " is not a contraction of " + format_sequent(pf.end));
  std::map<LFormula, std::vector<int>> slots;
  for (std::size_t j = 0; j < target.size(); ++j) slots[target[j]].push_back(static_cast<int>(j));
  std::map<LFormula, std::size_t> seen;
  std::vector<int> map(pf.end.size());
  for (std::size_t i = 0; i < pf.end.size(); ++i) {
    const auto& s = slots[pf.end[i]];
    std::size_t k = seen[pf.end[i]]++;
    map[i] = s[std::min(k, s.size() - 1)];
  }
  return unary(StepKind::Contraction, std::move(pf), target, std::move(map));
}

Proof permute_root(Proof pf, const Sequent& target) {
  if (pf.end.identical(target)) return pf;
  auto perm = greedy_pairing(pf.end, target);
  if (target.size() != pf.end.size() || std::find(perm.begin(), perm.end(), -1) != perm.end())
    throw ProofError(format_sequent(target) + " is not a permutation of " + format_sequent(pf.end));
  for (auto& m : pf.ancestry)
    for (int& e : m)
      if (e >= 0) e = perm[e];
  if (pf.step.kind == StepKind::Rule && pf.step.principal_pos >= 0)
    pf.step.principal_pos = perm[pf.step.principal_pos];
  pf.end = target;
  return pf;
}

Proof structural_to(Proof pf, const Sequent& target) {
  std::map<LFormula, int> want;
  for (const auto& x : target) ++want[x];
  std::map<LFormula, int> keep;
  Sequent mid;
  for (const auto& x : pf.end) {
    auto it = want.find(x);
    if (it == want.end())
      throw ProofError("cannot reach " + format_sequent(target) + " from " + format_sequent(pf.end) +
                       ": " + format_lformula(x) + " would be lost");
    if (keep[x]++ < it->second) mid.push_back(x);
  }
  if (mid.size() != pf.end.size()) pf = contract_to(std::move(pf), mid);
  if (mid.size() != target.size()) return weaken_to(std::move(pf), target);
  return permute_root(std::move(pf), target);
}

Proof contract_duplicates(Proof pf) {
  Sequent mid;
  for (const auto& x : pf.end)
    if (!mid.contains(x)) mid.push_back(x);
  if (mid.size() == pf.end.size()) return pf;
  return contract_to(std::move(pf), mid);
}

Proof multicut(Proof left, Proof right, const Formula& cut, const std::vector<int>& left_cut,
               const std::vector<int>& right_cut) {
  if (left_cut.empty() || right_cut.empty())
    throw ProofError("multicut on " + cut.text() + " needs p, q >= 1");
  Proof out;
  out.step.kind = StepKind::Multicut;
  out.step.cut = cut;
  out.step.p = static_cast<int>(left_cut.size());
  out.step.q = static_cast<int>(right_cut.size());
  auto side = [&](const Proof& pf, const std::vector<int>& cut_occ, Label label) {
    std::vector<int> map(pf.end.size(), -2);
    for (int i : cut_occ) {
      if (i < 0 || i >= static_cast<int>(pf.end.size()) || map[i] == -1 ||
          !(pf.end[i] == lf(label, cut)))
        throw ProofError("occurrence " + std::to_string(i) + " of " + format_sequent(pf.end) +
                         " is not a distinct " + std::string(1, label_char(label)) + ":" + cut.text());
      map[i] = -1;
    }
    for (std::size_t i = 0; i < pf.end.size(); ++i) {
      if (map[i] == -1) continue;
      map[i] = static_cast<int>(out.end.size());
      out.end.push_back(pf.end[i]);
    }
    out.ancestry.push_back(std::move(map));
  };
  side(left, left_cut, Label::R);
  side(right, right_cut, Label::L);
  out.premises.push_back(std::move(left));
  out.premises.push_back(std::move(right));
  return out;
}

Proof multicut_all(Proof left, Proof right, const Formula& cut) {
  std::vector<int> lc, rc;
  for (std::size_t i = 0; i < left.end.size(); ++i)
    if (left.end[i] == lf(Label::R, cut)) lc.push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < right.end.size(); ++i)
    if (right.end[i] == lf(Label::L, cut)) rc.push_back(static_cast<int>(i));
  return multicut(std::move(left), std::move(right), cut, lc, rc);
}

Proof apply_rule(const Calculus& calc, std::string_view rule_id, const Formula& principal,
                 int template_index, std::vector<Proof> premises, const Sequent& context) {
  const RuleSchema* rule = calc.find_rule(rule_id);
  if (!rule) throw ProofError("unknown rule '" + std::string(rule_id) + "'");
  if (template_index < 0 || template_index >= static_cast<int>(rule->templates.size()))
    throw ProofError("rule '" + rule->id + "' has no template " + std::to_string(template_index));
  const auto& tmpl = rule->templates[template_index];
  if (premises.size() != tmpl.premises.size())
    throw ProofError("rule '" + rule->id + "' expects " + std::to_string(tmpl.premises.size()) +
                     " premises, got " + std::to_string(premises.size()));

  // Split each premise into context (first occurrences) and auxiliaries.
  std::vector<std::vector<bool>> is_aux;
  std::vector<Sequent> contexts;
  for (std::size_t m = 0; m < premises.size(); ++m) {
    Sequent aux = rule->auxiliaries(principal, template_index, static_cast<int>(m));
    const Sequent& s = premises[m].end;
    std::map<LFormula, int> need;
    for (const auto& x : aux) ++need[x];
    std::vector<bool> flag(s.size(), false);
    for (std::size_t i = s.size(); i-- > 0;) {
      auto it = need.find(s[i]);
      if (it != need.end() && it->second > 0) {
        --it->second;
        flag[i] = true;
      }
    }
    for (const auto& [x, n] : need)
      if (n > 0)
        throw ProofError("premise " + std::to_string(m) + " of '" + rule->id + "' lacks auxiliary " +
                         format_lformula(x));
    Sequent ctx;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (!flag[i]) ctx.push_back(s[i]);
    is_aux.push_back(std::move(flag));
    contexts.push_back(std::move(ctx));
  }
  Sequent ctx = premises.empty() ? context : contexts[0];
  for (std::size_t m = 1; m < contexts.size(); ++m)
    if (!(contexts[m] == ctx))
      throw ProofError("premises of '" + rule->id + "' have different contexts " +
                       format_sequent(ctx) + " and " + format_sequent(contexts[m]));
  RuleInstance inst = instantiate(*rule, principal, template_index, ctx);

  Proof out;
  out.end = inst.conclusion;
  out.step.kind = StepKind::Rule;
  out.step.rule = rule->id;
  out.step.principal = principal;
  out.step.template_index = template_index;
  out.step.principal_pos = static_cast<int>(ctx.size());
  for (std::size_t m = 0; m < premises.size(); ++m) {
    const Sequent& s = premises[m].end;
    auto ctx_map = greedy_pairing(contexts[m], ctx);
    std::vector<int> map(s.size());
    std::size_t c = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      map[i] = is_aux[m][i] ? out.step.principal_pos : ctx_map[c++];
    out.ancestry.push_back(std::move(map));
  }
  out.premises = std::move(premises);
  return out;
}

Marks propagate_marks(const Proof& pf, std::vector<bool> root_marks) {
  Marks m;
  m.occ = std::move(root_marks);
  for (std::size_t k = 0; k < pf.premises.size(); ++k) {
    const auto& map = pf.ancestry[k];
    std::vector<bool> child(map.size(), false);
    for (std::size_t i = 0; i < map.size(); ++i)
      child[i] = map[i] >= 0 && map[i] < static_cast<int>(m.occ.size()) && m.occ[map[i]] &&
                 !(pf.step.kind == StepKind::Rule && map[i] == pf.step.principal_pos);
    m.premises.push_back(propagate_marks(pf.premises[k], std::move(child)));
  }
  return m;
}

std::vector<Marks> multicut_ancestors(const Proof& cut) {
  if (cut.step.kind != StepKind::Multicut) throw ProofError("not a multicut node");
  std::vector<Marks> out;
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& map = cut.ancestry[k];
    std::vector<bool> marks(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) marks[i] = map[i] == -1;
    out.push_back(propagate_marks(cut.premises[k], std::move(marks)));
  }
  return out;
}

int node_count(const Proof& pf) {
  int n = 1;
  for (const auto& c : pf.premises) n += node_count(c);
  return n;
}

int depth(const Proof& pf) {
  int d = 0;
  for (const auto& c : pf.premises) d = std::max(d, depth(c));
  return d + 1;
}

bool is_analytic(const Proof& cut_node) {
  if (cut_node.step.kind != StepKind::Multicut) throw ProofError("not a multicut node");
  return std::any_of(cut_node.end.begin(), cut_node.end.end(), [&](const LFormula& x) {
    return is_subformula(cut_node.step.cut, x.formula);
  });
}

CutInfo cut_measures(const Proof& cut_node, Path path) {
  CutInfo info;
  info.analytic = is_analytic(cut_node);
  info.path = std::move(path);
  info.formula = cut_node.step.cut;
  info.degree = cut_node.step.cut.size();
  info.rank = node_count(cut_node) - 1;
  return info;
}

namespace {

void collect_cuts(const Proof& pf, Path& path, std::vector<CutInfo>& out) {
  if (pf.step.kind == StepKind::Multicut) out.push_back(cut_measures(pf, path));
  for (std::size_t k = 0; k < pf.premises.size(); ++k) {
    path.push_back(static_cast<int>(k));
    collect_cuts(pf.premises[k], path, out);
    path.pop_back();
  }
}

bool has_non_analytic_cut(const Proof& pf) {
  if (pf.step.kind == StepKind::Multicut && !is_analytic(pf)) return true;
  return std::any_of(pf.premises.begin(), pf.premises.end(), has_non_analytic_cut);
}

bool dr_reduced(const Proof& pf, int d, int r) {
  if (pf.step.kind == StepKind::Multicut && !is_analytic(pf)) {
    int degree = pf.step.cut.size();
    if (degree > d) return false;
    if (degree == d) {
      if (node_count(pf) - 1 >= r) return false;
      if (std::any_of(pf.premises.begin(), pf.premises.end(), has_non_analytic_cut)) return false;
    }
  }
  return std::all_of(pf.premises.begin(), pf.premises.end(),
                     [&](const Proof& c) { return dr_reduced(c, d, r); });
}

}  // namespace

std::vector<CutInfo> cuts(const Proof& pf) {
  std::vector<CutInfo> out;
  Path path;
  collect_cuts(pf, path, out);
  return out;
}

bool is_cut_free(const Proof& pf) {
  if (pf.step.kind == StepKind::Multicut) return false;
  return std::all_of(pf.premises.begin(), pf.premises.end(), is_cut_free);
}

bool is_locally_analytic(const Proof& pf) { return !has_non_analytic_cut(pf); }

bool is_dr_reduced(const Proof& pf, int d, int r) { return dr_reduced(pf, d, r); }

bool has_open_leaves(const Proof& pf) {
  if (pf.step.kind == StepKind::Open) return true;
  return std::any_of(pf.premises.begin(), pf.premises.end(), has_open_leaves);
}

Proof substitute_variable(const Proof& pf, std::string_view x, const Formula& g) {
  Proof out;
  out.end = substitute_variable(pf.end, x, g);
  out.step = pf.step;
  if (!out.step.cut.is_null()) out.step.cut = substitute_variable(out.step.cut, x, g);
  if (!out.step.principal.is_null())
    out.step.principal = substitute_variable(out.step.principal, x, g);
  out.ancestry = pf.ancestry;
  for (const auto& c : pf.premises) out.premises.push_back(substitute_variable(c, x, g));
  return out;
}

}  // namespace cutrx
