// Proof trees with immediate-ancestry maps, the checker, and cut measures.

#ifndef CUTRX_PROOF_HPP
#define CUTRX_PROOF_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cutrx/calculus.hpp"
#include "cutrx/formula.hpp"

namespace cutrx {

enum class StepKind { Initial, Weakening, Contraction, Multicut, Rule, Open };

struct Step {
  StepKind kind = StepKind::Open;
  std::string var;            // Initial
  Formula cut;                // Multicut
  int p = 0, q = 0;           // Multicut multiplicities
  std::string rule;           // Rule
  Formula principal;          // Rule
  int template_index = 0;     // Rule
  int principal_pos = -1;     // Rule: index of the principal occurrence in the conclusion
  int hypothesis = -1;        // Open: index into the hypothesis list, if known
};

// ancestry[k][i] is the conclusion index of occurrence i of premise k, or -1
// for a cut occurrence of a multicut.
struct Proof {
  Sequent end;
  Step step;
  std::vector<Proof> premises;
  std::vector<std::vector<int>> ancestry;
};

using Path = std::vector<int>;
std::string format_path(const Path& path);
const Proof& at(const Proof& pf, const Path& path);
Proof& at(Proof& pf, const Path& path);

// ---- builders; each computes canonical ancestry ----

Proof initial(const Formula& var);
Proof open_leaf(Sequent s, int hypothesis = -1);
// Conclusion `target` must contain the premise as a multiset. Equal formulas
// are paired in order.
Proof weaken_to(Proof pf, const Sequent& target);
// Conclusion `target` must have the premise's support with counts no larger.
Proof contract_to(Proof pf, const Sequent& target);
// Reorders the root sequent in place; `target` must be a permutation.
Proof permute_root(Proof pf, const Sequent& target);
// Contraction and/or weakening (at most one node each) so that the root
// becomes `target`; requires supp(root) ⊆ supp(target).
Proof structural_to(Proof pf, const Sequent& target);
// Contracts duplicates away, keeping the first occurrence of each formula.
Proof contract_duplicates(Proof pf);
// Multicut on C cutting the listed occurrences: r:C in `left`, l:C in `right`.
Proof multicut(Proof left, Proof right, const Formula& cut, const std::vector<int>& left_cut,
               const std::vector<int>& right_cut);
// Multicut cutting every r:C of `left` and every l:C of `right`.
Proof multicut_all(Proof left, Proof right, const Formula& cut);
// Applies a simple rule. Auxiliaries in premise m are the last occurrences
// matching Λ_m; the rest must be the same context in every premise.
// `context` is only consulted for rules without premises.
Proof apply_rule(const Calculus& calc, std::string_view rule_id, const Formula& principal,
                 int template_index, std::vector<Proof> premises, const Sequent& context = {});

// ---- checking ----

struct CheckError {
  Path path;
  std::string code;
  std::string message;
  std::string str() const;
};

struct CheckOptions {
  // Open leaves are accepted only if hypotheses are given and the leaf equals
  // one of them (or the one its index names).
  const std::vector<Sequent>* hypotheses = nullptr;
};

std::vector<CheckError> check(const Calculus& calc, const Proof& pf, const CheckOptions& opts = {});
bool is_valid(const Calculus& calc, const Proof& pf, const CheckOptions& opts = {});
// Throws InvariantError with the first diagnostic.
void require_valid(const Calculus& calc, const Proof& pf, const CheckOptions& opts = {});

// ---- ancestry ----

// Occurrence marks parallel to a proof tree.
struct Marks {
  std::vector<bool> occ;
  std::vector<Marks> premises;
};

// Marks the root occurrences in `root_marks` and all their ancestors. Ancestry
// stops at principal formulas: auxiliaries are not ancestors.
Marks propagate_marks(const Proof& pf, std::vector<bool> root_marks);
// Ancestors of the cut occurrences of the multicut at the root of `cut`:
// one mark tree per premise.
std::vector<Marks> multicut_ancestors(const Proof& cut);

// ---- measures ----

struct CutInfo {
  Path path;
  Formula formula;
  int degree = 0;
  int rank = 0;
  bool analytic = false;
};

int node_count(const Proof& pf);
int depth(const Proof& pf);
CutInfo cut_measures(const Proof& cut_node, Path path = {});
bool is_analytic(const Proof& cut_node);
std::vector<CutInfo> cuts(const Proof& pf);
bool is_cut_free(const Proof& pf);
bool is_locally_analytic(const Proof& pf);
bool is_dr_reduced(const Proof& pf, int d, int r);
bool has_open_leaves(const Proof& pf);
// Replaces every variable x by g in all sequents and steps. Initial(x) nodes
// keep their kind, so the result may fail to check until they are expanded.
Proof substitute_variable(const Proof& pf, std::string_view x, const Formula& g);

// ---- text format ----

Proof parse_proof(std::string_view text, const Calculus& calc);
std::string serialize_proof(const Proof& pf);

}  // namespace cutrx

#endif  // CUTRX_PROOF_HPP
