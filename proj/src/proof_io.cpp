#include <algorithm>
#include <map>

#include "cutrx/proof.hpp"
#include "cutrx/sexpr.hpp"
#include "text_util.hpp"

namespace cutrx {

namespace {

std::vector<int> pair_into(const Sequent& from, const Sequent& to, const std::vector<bool>& blocked) {
  std::vector<bool> used = blocked;
  std::vector<int> out(from.size(), -1);
  for (std::size_t i = 0; i < from.size(); ++i)
    for (std::size_t j = 0; j < to.size(); ++j)
      if (!used[j] && to[j] == from[i]) {
        used[j] = true;
        out[i] = static_cast<int>(j);
        break;
      }
  return out;
}

// Weakening pairs equal occurrences in order. Contraction sends the first
// copies to distinct conclusion occurrences and the rest to the last one.
std::vector<int> canonical_structural_map(const Sequent& prem, const Sequent& concl, bool weak) {
  if (weak) return pair_into(prem, concl, std::vector<bool>(concl.size(), false));
  std::map<LFormula, std::vector<int>> slots;
  for (std::size_t j = 0; j < concl.size(); ++j) slots[concl[j]].push_back(static_cast<int>(j));
  std::map<LFormula, std::size_t> seen;
  std::vector<int> map;
  for (const auto& x : prem) {
    auto it = slots.find(x);
    if (it == slots.end()) {
      map.push_back(-1);
      continue;
    }
    std::size_t k = seen[x]++;
    map.push_back(it->second[std::min(k, it->second.size() - 1)]);
  }
  return map;
}

std::vector<int> map_from(const SExpr& e, const Sequent& premise, const Sequent& conclusion) {
  if (!e.headed("map")) throw ParseError("expected (map (I J)*), got " + e.str());
  std::vector<int> map(premise.size(), -1);
  for (std::size_t k = 1; k < e.items.size(); ++k) {
    const SExpr& pr = e.items[k];
    if (!pr.is_list() || pr.items.size() != 2) throw ParseError("malformed map entry " + pr.str());
    int i = int_from_sexpr(pr.items[0]);
    int j = int_from_sexpr(pr.items[1]);
    if (i >= static_cast<int>(premise.size()) || j >= static_cast<int>(conclusion.size()))
      throw ParseError("map entry " + pr.str() + " out of range");
    if (map[i] != -1) throw ParseError("map entry for occurrence " + std::to_string(i) + " given twice");
    if (!(premise[i] == conclusion[j]))
      throw ParseError("map entry " + pr.str() + " relates different formulas");
    map[i] = j;
  }
  for (int j : map)
    if (j < 0) throw ParseError("map " + e.str() + " is not total");
  return map;
}

class ProofReader {
 public:
  explicit ProofReader(const Calculus& calc) : calc_(calc), lang_(calc.language()) {}

  Proof read(const SExpr& e) {
    if (!e.headed("node") || e.items.size() < 3)
      throw ParseError("line " + std::to_string(e.line) + ": expected (node SEQ BY CHILD*)");
    Proof pf;
    pf.end = sequent_from_sexpr(e.items[1], lang_);
    for (std::size_t i = 3; i < e.items.size(); ++i) pf.premises.push_back(read(e.items[i]));
    const SExpr& by = e.items[2];
    if (!by.is_list() || by.items.empty() || !by.items[0].atom)
      throw ParseError("line " + std::to_string(by.line) + ": malformed justification " + by.str());
    const std::string& kind = by.items[0].text;
    try {
      if (kind == "id") {
        initial(pf, by);
      } else if (kind == "open") {
        pf.step.kind = StepKind::Open;
        if (by.items.size() > 2) throw ParseError("malformed (open)");
        if (by.items.size() == 2) pf.step.hypothesis = int_from_sexpr(by.items[1]);
      } else if (kind == "weak" || kind == "contr") {
        structural(pf, by, kind == "weak");
      } else if (kind == "mcut") {
        multicut(pf, by);
      } else if (kind == "rule") {
        rule(pf, by);
      } else {
        throw ParseError("unknown justification '" + kind + "'");
      }
    } catch (const ParseError& err) {
      throw ParseError("line " + std::to_string(by.line) + ": " + err.what());
    }
    return pf;
  }

 private:
  void initial(Proof& pf, const SExpr& by) {
    if (by.items.size() != 2 || !by.items[1].atom) throw ParseError("malformed (id VAR)");
    pf.step.kind = StepKind::Initial;
    pf.step.var = by.items[1].text;
  }

  void structural(Proof& pf, const SExpr& by, bool weak) {
    pf.step.kind = weak ? StepKind::Weakening : StepKind::Contraction;
    if (pf.premises.size() != 1) throw ParseError(std::string(weak ? "weak" : "contr") + " needs one premise");
    if (by.items.size() > 2) throw ParseError("malformed structural justification " + by.str());
    const Sequent& prem = pf.premises[0].end;
    std::vector<int> map;
    if (by.items.size() == 2) {
      map = map_from(by.items[1], prem, pf.end);
      std::vector<int> hits(pf.end.size(), 0);
      for (int j : map) ++hits[j];
      for (int h : hits) {
        if (weak && h > 1) throw ParseError("weakening map is not injective");
        if (!weak && h == 0) throw ParseError("contraction map is not surjective");
      }
    } else {
      map = canonical_structural_map(prem, pf.end, weak);
    }
    pf.ancestry.push_back(std::move(map));
  }

  void multicut(Proof& pf, const SExpr& by) {
    if (by.items.size() != 4) throw ParseError("malformed (mcut FORMULA P Q)");
    pf.step.kind = StepKind::Multicut;
    pf.step.cut = formula_from_sexpr(by.items[1], lang_);
    pf.step.p = int_from_sexpr(by.items[2]);
    pf.step.q = int_from_sexpr(by.items[3]);
    if (pf.premises.size() != 2) throw ParseError("mcut needs two premises");
    std::vector<bool> used(pf.end.size(), false);
    const int n[2] = {pf.step.p, pf.step.q};
    const Label label[2] = {Label::R, Label::L};
    for (int k = 0; k < 2; ++k) {
      const Sequent& s = pf.premises[k].end;
      std::vector<bool> is_cut(s.size(), false);
      int left = n[k];
      LFormula c = lf(label[k], pf.step.cut);
      for (std::size_t i = s.size(); i-- > 0 && left > 0;)
        if (s[i] == c) {
          is_cut[i] = true;
          --left;
        }
      Sequent rest;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (!is_cut[i]) rest.push_back(s[i]);
      auto paired = pair_into(rest, pf.end, used);
      std::vector<int> map(s.size(), -1);
      std::size_t r = 0;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (is_cut[i]) continue;
        map[i] = paired[r++];
        if (map[i] >= 0) used[map[i]] = true;
      }
      pf.ancestry.push_back(std::move(map));
    }
  }

  void rule(Proof& pf, const SExpr& by) {
    if (by.items.size() != 4 || !by.items[1].atom) throw ParseError("malformed (rule ID FORMULA TIDX)");
    pf.step.kind = StepKind::Rule;
    pf.step.rule = by.items[1].text;
    pf.step.principal = formula_from_sexpr(by.items[2], lang_);
    pf.step.template_index = int_from_sexpr(by.items[3]);
    const RuleSchema* r = calc_.find_rule(pf.step.rule);
    std::vector<bool> blocked(pf.end.size(), false);
    if (r) {
      LFormula principal = lf(side_label(r->side), pf.step.principal);
      for (std::size_t j = pf.end.size(); j-- > 0;)
        if (pf.end[j] == principal) {
          pf.step.principal_pos = static_cast<int>(j);
          blocked[j] = true;
          break;
        }
    }
    for (const auto& c : pf.premises) {
      auto map = pair_into(c.end, pf.end, blocked);
      for (int& j : map)
        if (j < 0) j = pf.step.principal_pos;
      pf.ancestry.push_back(std::move(map));
    }
  }

  const Calculus& calc_;
  const Language& lang_;
};

bool canonical_map(const Proof& pf) {
  return canonical_structural_map(pf.premises[0].end, pf.end, pf.step.kind == StepKind::Weakening) ==
         pf.ancestry[0];
}

void write(const Proof& pf, int indent, std::string& out) {
  out += std::string(indent, ' ') + "(node " + format_sequent(pf.end) + " ";
  const Step& s = pf.step;
  switch (s.kind) {
    case StepKind::Initial: out += "(id " + s.var + ")"; break;
    case StepKind::Open:
      out += s.hypothesis >= 0 ? "(open " + std::to_string(s.hypothesis) + ")" : std::string("(open)");
      break;
    case StepKind::Weakening:
    case StepKind::Contraction: {
      out += s.kind == StepKind::Weakening ? "(weak" : "(contr";
      if (!canonical_map(pf)) {
        out += " (map";
        for (std::size_t i = 0; i < pf.ancestry[0].size(); ++i)
          out += " (" + std::to_string(i) + " " + std::to_string(pf.ancestry[0][i]) + ")";
        out += ")";
      }
      out += ")";
      break;
    }
    case StepKind::Multicut:
      out += "(mcut " + s.cut.text() + " " + std::to_string(s.p) + " " + std::to_string(s.q) + ")";
      break;
    case StepKind::Rule:
      out += "(rule " + s.rule + " " + s.principal.text() + " " + std::to_string(s.template_index) + ")";
      break;
  }
  for (const auto& c : pf.premises) {
    out += "\n";
    write(c, indent + 2, out);
  }
  out += ")";
}

}  // namespace

Proof parse_proof(std::string_view text, const Calculus& calc) {
  return ProofReader(calc).read(read_sexpr(text));
}

std::string serialize_proof(const Proof& pf) {
  std::string out;
  write(pf, 0, out);
  return out + "\n";
}

}  // namespace cutrx
