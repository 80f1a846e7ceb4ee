// Syntactic sufficient conditions: substitution properties, invertibility,
// variable properties, axiom expansion and principal-case witnesses.

#ifndef CUTRX_CLASSIFIER_HPP
#define CUTRX_CLASSIFIER_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cutrx/calculus.hpp"
#include "cutrx/proof.hpp"

namespace cutrx {

enum class Property { Leftable, Rightable, WeaklyLeftable, WeaklyRightable, InverseLeftable, InverseRightable };

const char* property_name(Property p);
const std::vector<Property>& all_properties();

struct Verdict {
  bool holds = true;
  std::string rule;    // first violating rule when !holds
  std::string reason;  // human-readable detail when !holds
};

Verdict check_substitution_property(const Calculus& calc, std::string_view conn, Property prop);
Verdict check_invertibility(const Calculus& calc, std::string_view conn, Side side);
// Leftable variables for Side::Left, rightable variables for Side::Right.
Verdict check_variable_property(const Calculus& calc, Side side);

// 1..5 for the class cases (1 invertible, 2 leftable + weakly rightable,
// 3 rightable + weakly leftable, 4 weakly leftable + inverse rightable,
// 5 weakly rightable + inverse leftable), 0 if none applies.
int class_case(const Calculus& calc, std::string_view conn);
inline int class_of_case(int c) { return c == 0 ? 0 : c <= 3 ? 1 : 2; }

// Generic principal formula: the connective applied to fresh variables.
Formula generic_formula(const Calculus& calc, std::string_view conn);

// A deduction of the empty sequent from Λ_1..Λ_M, Σ_1..Σ_N at the generic
// formula, using only weakening, contraction and multicut. Open leaf k is
// hypothesis k in that order.
std::optional<Proof> principal_reduction_witness(const Calculus& calc, std::string_view conn,
                                                 int left_template, int right_template);
// Hypotheses of the witness above, instantiated at `principal`.
std::vector<Sequent> witness_hypotheses(const Calculus& calc, const Formula& principal, int left_template,
                                        int right_template);

// Cut-free proof of {l:f, r:f}, or nullopt when the search fails.
class AxiomExpander {
 public:
  explicit AxiomExpander(const Calculus& calc) : calc_(calc) {}
  std::optional<Proof> expand(const Formula& f);
  // Like expand, but throws PreconditionError on failure.
  Proof require(const Formula& f);

 private:
  std::optional<Proof> try_order(const Formula& f, bool right_first);
  std::optional<Proof> close(const Sequent& s);
  const Calculus& calc_;
  std::map<Formula, std::optional<Proof>> memo_;
};

std::optional<Proof> axiom_expansion_proof(const Calculus& calc, const Formula& f);

struct ConnectiveReport {
  std::string connective;
  std::vector<std::pair<Property, Verdict>> properties;
  Verdict left_invertible, right_invertible;
  int class_case = 0;
};

struct WitnessReport {
  std::string connective;
  int left_template = 0, right_template = 0;
  bool found = false;
  int nodes = 0;
  double seconds = 0;
};

struct ExpansionReport {
  std::string connective;
  Formula formula;
  bool found = false;
  int nodes = 0;
  double seconds = 0;
};

struct ClassificationReport {
  std::string calculus;
  std::vector<ConnectiveReport> connectives;
  std::vector<ExpansionReport> expansions;
  std::vector<WitnessReport> witnesses;
  Verdict leftable_variables, rightable_variables;
  Consistency consistency = Consistency::Unknown;
  bool axiom_expansion = false;
  bool principal_reductions = false;
  // 1, 2, or 0 for neither.
  int calculus_class = 0;

  const ConnectiveReport& connective(std::string_view name) const;
};

ClassificationReport classify_calculus(const Calculus& calc);
std::string format_report_sexp(const ClassificationReport& r);
std::string format_report_table(const ClassificationReport& r);

// Simultaneous substitution of variables in every sequent and step of a proof.
Proof substitute_variables(const Proof& pf, const std::map<std::string, Formula>& sigma);

}  // namespace cutrx

#endif  // CUTRX_CLASSIFIER_HPP
