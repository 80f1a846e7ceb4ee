// Cut-restriction and cut-elimination by local proof transformations.

#ifndef CUTRX_ENGINE_HPP
#define CUTRX_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "cutrx/calculus.hpp"
#include "cutrx/classifier.hpp"
#include "cutrx/proof.hpp"

namespace cutrx {

using Bits = std::vector<bool>;

struct ReductionOutcome {
  Proof proof;
  std::string name;
  int degree = 0, rank = 0;
  // Analytic cutting only: the cut formulas of the distribution tree and the
  // context of the premise they were taken from.
  std::vector<Formula> distribution;
  Sequent near_context;
};

struct EngineOptions {
  std::uint64_t max_leaves = std::uint64_t{1} << 16;
  long max_steps = 1000000;
  std::ostream* trace = nullptr;
  // Kernel-check every reduction output and assert the (d,r) bound.
  bool verify = true;
  // Called after each main-loop step with the whole proof; the outcome's
  // proof has already been moved into place.
  std::function<void(const Proof&, const ReductionOutcome&)> on_step;
};

// ---- Substitution Lemma ----

// Marks of premise k induced by marks on the node's conclusion.
Bits premise_marks(const Proof& node, const Bits& marks, std::size_t k);
// Marks of the cut occurrences in premise k of a multicut node.
Bits cut_marks(const Proof& cut, std::size_t k);
// `end` with every marked occurrence replaced, in place, by `gamma`.
Sequent substituted_end(const Sequent& end, const Bits& marks, const Sequent& gamma);

// Called at every node that carries marks; a returned proof replaces the
// whole subtree and must conclude `target` up to order.
using Intercept = std::function<std::optional<Proof>(const Proof& node, const Bits& marks, const Sequent& target)>;

// Replaces every marked root occurrence and its ancestors by `gamma`. Throws
// SubstitutionError where a marked occurrence is principal or initial, or
// where `gamma` violates a context restriction.
Proof substitute_ancestors(const Calculus& calc, const Proof& pf, const Bits& marks, const Sequent& gamma,
                           const Intercept& intercept = {});

// Replaces each multicut whose cut formula occurs in its own conclusion by
// contraction and weakening of one premise.
Proof remove_redundant_cuts(const Proof& pf);

// ---- distributions ----

// Distinct formulas of the contexts, labels stripped, in serialized order.
std::vector<Formula> distribution_formulas(const std::vector<Sequent>& contexts);
// All labellings of F in leaf order of distribution_cut_tree.
std::vector<Sequent> distributions(const std::vector<Formula>& F);

struct DistributionKind {
  // For each context, the first occurrence whose inverse is in D, inverted.
  std::optional<Sequent> representatives;
  // Smallest i with supp(contexts[i]) ⊆ D, or -1.
  int matching = -1;
};
DistributionKind classify_distribution(const Sequent& D, const std::vector<Sequent>& contexts);

// Multicuts on F[0], F[1], ... in that order, each with p = q = 1, over the
// conclusion K. The leaf for distribution D must prove K, D.
Proof distribution_cut_tree(const std::vector<Formula>& F, const Sequent& K,
                            const std::function<Proof(const Sequent& D)>& leaf);

// ---- the engine ----

class Engine {
 public:
  explicit Engine(const Calculus& calc, EngineOptions opts = {});

  // `cut` ends in a non-analytic multicut and is otherwise locally analytic.
  ReductionOutcome reduce_once(const Proof& cut);
  // `cut` ends in a multicut and is otherwise cut-free.
  ReductionOutcome reduce_once_eliminating(const Proof& cut);

  Proof restrict(const Proof& pf);
  Proof eliminate(const Proof& pf);

  // Inverts occurrence `occ`, a compound λ:C: one proof of the rest plus Λ_m
  // for every premise m of the λ-rule for C.
  std::vector<Proof> invert(const Proof& pf, int occ);
  // Inverts all marked occurrences of λ:C at once onto premise m.
  Proof invert_marked(const Proof& pf, const Bits& marks, const Formula& c, Side side, int m);

  long steps() const { return steps_; }
  const ClassificationReport& report();

 private:
  ReductionOutcome dispatch(const Proof& cut, bool eliminating);
  Proof renaming(const Proof& cut);
  Proof principal(const Proof& cut);
  Proof inversion(const Proof& cut);
  Proof shift(const Proof& cut, int into);
  Proof drop_initial(const Proof& cut, int initial_side);
  Proof analytic_cutting(const Proof& cut, int near, ReductionOutcome& out);
  Proof combine(const Proof& right_node, const Bits& rm, const Proof& left_node, const Bits& lm,
                const Formula& c);
  Proof lift(const Proof& w, const Sequent& k, const std::vector<Proof>& leaves);
  const Proof& witness(const std::string& conn, int left_template, int right_template);
  int case_of(const std::string& conn);
  Proof run(const Proof& pf, bool eliminating);

  const Calculus& calc_;
  EngineOptions opts_;
  AxiomExpander expander_;
  std::optional<ClassificationReport> report_;
  std::map<std::string, int> cases_;
  std::map<std::tuple<std::string, int, int>, Proof> witnesses_;
  long steps_ = 0;
};

Proof restrict(const Calculus& calc, const Proof& pf, const EngineOptions& opts = {});
Proof eliminate(const Calculus& calc, const Proof& pf, const EngineOptions& opts = {});
std::vector<Proof> invert(const Calculus& calc, const Proof& pf, int occ);

}  // namespace cutrx

#endif  // CUTRX_ENGINE_HPP
