#include <algorithm>
#include <map>

#include "cutrx/proof.hpp"

namespace cutrx {

std::string CheckError::str() const { return "ERROR " + format_path(path) + " " + code + " " + message; }

namespace {

class Checker {
 public:
  Checker(const Calculus& calc, const CheckOptions& opts) : calc_(calc), opts_(opts) {}

  std::vector<CheckError> run(const Proof& pf) {
    visit(pf);
    return std::move(errors_);
  }

 private:
  void error(std::string code, std::string message) {
    errors_.push_back(CheckError{path_, std::move(code), std::move(message)});
  }

  void visit(const Proof& pf) {
    if (pf.ancestry.size() != pf.premises.size()) {
      error("bad-ancestry", "expected one ancestry map per premise");
    } else {
      bool sizes_ok = true;
      for (std::size_t k = 0; k < pf.premises.size(); ++k) {
        if (pf.ancestry[k].size() != pf.premises[k].end.size()) {
          error("bad-ancestry", "map for premise " + std::to_string(k) + " has the wrong length");
          sizes_ok = false;
        }
        for (int e : pf.ancestry[k])
          if (e < -1 || e >= static_cast<int>(pf.end.size())) {
            error("bad-ancestry", "map for premise " + std::to_string(k) + " points outside the conclusion");
            sizes_ok = false;
            break;
          }
      }
      if (sizes_ok) node(pf);
    }
    for (std::size_t k = 0; k < pf.premises.size(); ++k) {
      path_.push_back(static_cast<int>(k));
      visit(pf.premises[k]);
      path_.pop_back();
    }
  }

  bool arity(const Proof& pf, std::size_t n, const char* what) {
    if (pf.premises.size() == n) return true;
    error("bad-arity", std::string(what) + " needs " + std::to_string(n) + " premises, has " +
                           std::to_string(pf.premises.size()));
    return false;
  }

  // Every entry maps to an equal conclusion occurrence (cut entries aside).
  bool preserving(const Proof& pf, std::size_t k) {
    const auto& map = pf.ancestry[k];
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (map[i] < 0) continue;
      if (!(pf.premises[k].end[i] == pf.end[map[i]])) {
        error("bad-ancestry", "premise " + std::to_string(k) + " occurrence " + std::to_string(i) + " " +
                                  format_lformula(pf.premises[k].end[i]) + " mapped to " +
                                  format_lformula(pf.end[map[i]]));
        return false;
      }
    }
    return true;
  }

  void node(const Proof& pf) {
    switch (pf.step.kind) {
      case StepKind::Initial: return initial(pf);
      case StepKind::Open: return open(pf);
      case StepKind::Weakening: return weakening(pf);
      case StepKind::Contraction: return contraction(pf);
      case StepKind::Multicut: return multicut(pf);
      case StepKind::Rule: return rule(pf);
    }
  }

  void initial(const Proof& pf) {
    if (!arity(pf, 0, "initial sequent")) return;
    Formula x = Formula::var(pf.step.var);
    if (pf.step.var.empty() || calc_.language().find(pf.step.var) ||
        !(pf.end == Sequent{lf(Label::L, x), lf(Label::R, x)}))
      error("bad-initial", format_sequent(pf.end) + " is not the initial sequent on " + pf.step.var);
  }

  void open(const Proof& pf) {
    if (!arity(pf, 0, "open leaf")) return;
    const auto* hyps = opts_.hypotheses;
    if (!hyps) return error("open-leaf", "unexpected open leaf " + format_sequent(pf.end));
    int h = pf.step.hypothesis;
    if (h >= 0) {
      if (h >= static_cast<int>(hyps->size()) || !((*hyps)[h] == pf.end))
        error("open-leaf", "leaf " + format_sequent(pf.end) + " is not hypothesis " + std::to_string(h));
      return;
    }
    if (std::find(hyps->begin(), hyps->end(), pf.end) == hyps->end())
      error("open-leaf", "leaf " + format_sequent(pf.end) + " is not a hypothesis");
  }

  void weakening(const Proof& pf) {
    if (!arity(pf, 1, "weakening") || !preserving(pf, 0)) return;
    std::vector<bool> hit(pf.end.size(), false);
    for (int e : pf.ancestry[0]) {
      if (e < 0 || hit[e]) return error("bad-weakening", "ancestry map is not an injective function");
      hit[e] = true;
    }
  }

  void contraction(const Proof& pf) {
    if (!arity(pf, 1, "contraction") || !preserving(pf, 0)) return;
    std::vector<bool> hit(pf.end.size(), false);
    for (int e : pf.ancestry[0]) {
      if (e < 0) return error("bad-contraction", "ancestry map is not total");
      hit[e] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
      error("bad-contraction", "ancestry map is not surjective");
  }

  void multicut(const Proof& pf) {
    if (!arity(pf, 2, "multicut")) return;
    const Formula& c = pf.step.cut;
    if (c.is_null()) return error("bad-multicut", "missing cut formula");
    if (pf.step.p < 1 || pf.step.q < 1) return error("bad-multicut", "p and q must be at least 1");
    std::vector<bool> hit(pf.end.size(), false);
    const int expect[2] = {pf.step.p, pf.step.q};
    const Label label[2] = {Label::R, Label::L};
    for (std::size_t k = 0; k < 2; ++k) {
      if (!preserving(pf, k)) return;
      int cut = 0;
      const auto& map = pf.ancestry[k];
      for (std::size_t i = 0; i < map.size(); ++i) {
        if (map[i] == -1) {
          if (!(pf.premises[k].end[i] == lf(label[k], c)))
            return error("bad-multicut", "cut occurrence " + format_lformula(pf.premises[k].end[i]) +
                                             " is not " + format_lformula(lf(label[k], c)));
          ++cut;
        } else {
          if (hit[map[i]]) return error("bad-multicut", "two premise occurrences share a conclusion occurrence");
          hit[map[i]] = true;
        }
      }
      if (cut != expect[k])
        return error("bad-multicut", "premise " + std::to_string(k) + " cuts " + std::to_string(cut) +
                                         " occurrences, expected " + std::to_string(expect[k]));
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
      error("bad-multicut", "conclusion has an occurrence from neither premise");
  }

  void rule(const Proof& pf) {
    const RuleSchema* r = calc_.find_rule(pf.step.rule);
    if (!r) return error("unknown-rule", "no rule '" + pf.step.rule + "' in " + calc_.name());
    const Formula& f = pf.step.principal;
    if (f.is_null() || f.is_var() || f.head() != r->connective)
      return error("principal-mismatch", "rule '" + r->id + "' needs a principal with connective " + r->connective);
    if (pf.step.template_index < 0 || pf.step.template_index >= static_cast<int>(r->templates.size()))
      return error("bad-template", "rule '" + r->id + "' has no template " + std::to_string(pf.step.template_index));
    int pos = pf.step.principal_pos;
    LFormula principal = lf(side_label(r->side), f);
    if (pos < 0 || pos >= static_cast<int>(pf.end.size()) || !(pf.end[pos] == principal))
      return error("principal-mismatch", format_sequent(pf.end) + " has no principal occurrence " +
                                             format_lformula(principal));
    for (std::size_t i = 0; i < pf.end.size(); ++i) {
      if (static_cast<int>(i) == pos) continue;
      if (!r->context.matches(pf.end[i]))
        return error("context-violation", "context occurrence " + std::to_string(i) + " " +
                                              format_lformula(pf.end[i]) + " violates " + r->context.str() +
                                              " of rule '" + r->id + "'");
    }
    const auto& tmpl = r->templates[pf.step.template_index];
    if (!arity(pf, tmpl.premises.size(), ("rule '" + r->id + "'").c_str())) return;
    for (std::size_t m = 0; m < pf.premises.size(); ++m) {
      if (!preserving_rule(pf, m, pos)) return;
      std::vector<bool> hit(pf.end.size(), false);
      Sequent aux;
      const auto& map = pf.ancestry[m];
      for (std::size_t i = 0; i < map.size(); ++i) {
        if (map[i] < 0) return error("bad-ancestry", "rule premise occurrence with no image");
        if (map[i] == pos) {
          aux.push_back(pf.premises[m].end[i]);
        } else {
          if (hit[map[i]]) return error("bad-ancestry", "context occurrence mapped twice");
          hit[map[i]] = true;
        }
      }
      for (std::size_t j = 0; j < hit.size(); ++j)
        if (static_cast<int>(j) != pos && !hit[j])
          return error("premise-mismatch", "premise " + std::to_string(m) + " lacks context occurrence " +
                                               format_lformula(pf.end[j]));
      Sequent want = r->auxiliaries(f, pf.step.template_index, static_cast<int>(m));
      if (!(aux == want))
        return error("premise-mismatch", "premise " + std::to_string(m) + " has auxiliaries " +
                                             format_sequent(aux) + ", expected " + format_sequent(want));
    }
  }

  // Context occurrences map to equal occurrences; auxiliaries are checked
  // against the template instead.
  bool preserving_rule(const Proof& pf, std::size_t m, int pos) {
    const auto& map = pf.ancestry[m];
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (map[i] < 0 || map[i] == pos) continue;
      if (!(pf.premises[m].end[i] == pf.end[map[i]])) {
        error("bad-ancestry", "premise " + std::to_string(m) + " occurrence " + std::to_string(i) +
                                  " mapped to a different formula");
        return false;
      }
    }
    return true;
  }

  const Calculus& calc_;
  const CheckOptions& opts_;
  Path path_;
  std::vector<CheckError> errors_;
};

}  // namespace

std::vector<CheckError> check(const Calculus& calc, const Proof& pf, const CheckOptions& opts) {
  return Checker(calc, opts).run(pf);
}

bool is_valid(const Calculus& calc, const Proof& pf, const CheckOptions& opts) {
  return check(calc, pf, opts).empty();
}

void require_valid(const Calculus& calc, const Proof& pf, const CheckOptions& opts) {
  auto errs = check(calc, pf, opts);
  if (!errs.empty()) throw InvariantError("invalid proof: " + errs.front().str());
}

}  // namespace cutrx
