// Standard calculi: simple rule schemas with context restrictions.

#ifndef CUTRX_CALCULUS_HPP
#define CUTRX_CALCULUS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cutrx/formula.hpp"

namespace cutrx {

// (label, Any) or (label, Conn c): "principal connective is c".
struct ContextPattern {
  Label label = Label::L;
  std::optional<std::string> connective;

  bool operator==(const ContextPattern&) const = default;
  bool matches(const LFormula& x) const;
  // Denotation inclusion for single patterns.
  bool covered_by(const ContextPattern& other) const;
  std::string str() const;
};

class ContextRestriction {
 public:
  // No restriction: every labelled formula.
  static ContextRestriction unrestricted() { return ContextRestriction(); }
  static ContextRestriction of(std::vector<ContextPattern> patterns);

  bool is_unrestricted() const { return unrestricted_; }
  const std::vector<ContextPattern>& patterns() const { return patterns_; }

  bool matches(const LFormula& x) const;
  // Denotation of *this contained in that of `other`.
  bool subsumed_by(const ContextRestriction& other) const;
  bool admits_principal(Label label, std::string_view connective) const;
  bool admits_variable(Label label) const;
  ContextRestriction flipped() const;
  // The first pattern of *this not covered by `other`, for diagnostics.
  std::optional<ContextPattern> first_uncovered(const ContextRestriction& other) const;
  std::string str() const;

  // Pattern order is irrelevant.
  bool operator==(const ContextRestriction& other) const;

 private:
  ContextRestriction() = default;
  bool unrestricted_ = true;
  std::vector<ContextPattern> patterns_;
};

inline bool matches(const ContextRestriction& c, const LFormula& x) { return c.matches(x); }
inline bool subsumes(const ContextRestriction& a, const ContextRestriction& b) {
  return a.subsumed_by(b);
}
inline bool admits_principal(const ContextRestriction& c, Label l, std::string_view conn) {
  return c.admits_principal(l, conn);
}
inline ContextRestriction flip_set(const ContextRestriction& c) { return c.flipped(); }

// Auxiliary slot: the `arg`-th (0-based) immediate argument of the principal
// formula with the given label.
struct Slot {
  Label label = Label::L;
  int arg = 0;

  bool operator==(const Slot&) const = default;
};

// One way of decomposing the principal formula: premises Λ_1..Λ_M.
struct PremiseTemplate {
  std::vector<std::vector<Slot>> premises;
};

enum class Side { Left, Right };

inline Label side_label(Side s) { return s == Side::Left ? Label::L : Label::R; }
inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
inline const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

struct RuleSchema {
  std::string id;
  Side side = Side::Left;
  std::string connective;
  std::vector<PremiseTemplate> templates;
  ContextRestriction context = ContextRestriction::unrestricted();

  // Λ_m instantiated at `principal` for template `t`.
  Sequent auxiliaries(const Formula& principal, int t, int premise) const;
};

enum class Consistency { Assumed, Unknown };

class Calculus {
 public:
  Calculus(std::string name, Language lang, Consistency consistency, std::vector<RuleSchema> rules);

  const std::string& name() const { return name_; }
  const Language& language() const { return lang_; }
  Consistency consistency() const { return consistency_; }
  const std::vector<RuleSchema>& rules() const { return rules_; }

  const RuleSchema* find_rule(std::string_view id) const;
  // The (∘l) or (∘r) schema; throws CalculusError for an unknown connective.
  const RuleSchema& rule_for(std::string_view connective, Side side) const;

 private:
  std::string name_;
  Language lang_;
  Consistency consistency_;
  std::vector<RuleSchema> rules_;
};

Calculus parse_calculus(std::string_view text);
std::string format_calculus(const Calculus& calc);

struct RuleInstance {
  std::string rule;
  LFormula principal;
  int template_index = 0;
  Sequent context;
  std::vector<Sequent> premises;  // context followed by Λ_m
  Sequent conclusion;             // context followed by the principal
};

// Throws CalculusError on connective mismatch or a context occurrence outside
// the rule's restriction.
RuleInstance instantiate(const RuleSchema& rule, const Formula& principal, int template_index,
                         const Sequent& context);

}  // namespace cutrx

#endif  // CUTRX_CALCULUS_HPP
