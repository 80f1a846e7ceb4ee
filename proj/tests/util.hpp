// Shared fixtures and independent oracles for the test suites.

#ifndef CUTRX_TEST_UTIL_HPP
#define CUTRX_TEST_UTIL_HPP

#include <functional>
#include <map>
#include <set>
#include <string>

#include "cutrx/catalog.hpp"
#include "cutrx/formula.hpp"
#include "cutrx/proof.hpp"

namespace testutil {

using namespace cutrx;

inline Formula F(const Calculus& c, const std::string& t) { return parse_formula(t, c.language()); }
inline Sequent S(const Calculus& c, const std::string& t) { return parse_sequent("(seq " + t + ")", c.language()); }

// Subformula test by walking the tree, independent of the library's set.
inline bool sub_oracle(const Formula& g, const Formula& f) {
  if (g.text() == f.text()) return true;
  for (const auto& a : f.args())
    if (sub_oracle(g, a)) return true;
  return false;
}

// A cut is analytic iff its formula occurs inside some conclusion formula.
inline bool analytic_oracle(const Proof& node) {
  for (const auto& x : node.end)
    if (sub_oracle(node.step.cut, x.formula)) return true;
  return false;
}

inline void walk(const Proof& pf, const std::function<void(const Proof&)>& f) {
  f(pf);
  for (const auto& c : pf.premises) walk(c, f);
}

inline bool all_cuts_analytic(const Proof& pf) {
  bool ok = true;
  walk(pf, [&](const Proof& n) {
    if (n.step.kind == StepKind::Multicut && !analytic_oracle(n)) ok = false;
  });
  return ok;
}

inline int cut_count(const Proof& pf) {
  int n = 0;
  walk(pf, [&](const Proof& x) { n += x.step.kind == StepKind::Multicut; });
  return n;
}

inline int nodes(const Proof& pf) {
  int n = 0;
  walk(pf, [&](const Proof&) { ++n; });
  return n;
}

// Classical truth value of an LK/S5-language formula without modalities.
inline bool truth(const Formula& f, const std::map<std::string, bool>& v) {
  if (f.is_var()) return v.at(f.head());
  const std::string& h = f.head();
  if (h == "bot") return false;
  if (h == "and") return truth(f.arg(0), v) && truth(f.arg(1), v);
  if (h == "or") return truth(f.arg(0), v) || truth(f.arg(1), v);
  if (h == "imp") return !truth(f.arg(0), v) || truth(f.arg(1), v);
  if (h == "neg") return !truth(f.arg(0), v);
  throw std::logic_error("no truth table for " + h);
}

}  // namespace testutil

#endif  // CUTRX_TEST_UTIL_HPP
