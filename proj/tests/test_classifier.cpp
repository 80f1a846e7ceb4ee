#include <gtest/gtest.h>

#include <chrono>

#include "cutrx/classifier.hpp"
#include "util.hpp"

using namespace cutrx;
using testutil::F;
using testutil::S;

namespace {

const char* kAndVariants = R"((calculus AndI
  (connectives (and 2))
  (consistency unknown)
  (rule and-l left and (context any) (templates (premises (premise (l arg 1))) (premises (premise (l arg 2)))))
  (rule and-r right and (context any) (templates (premises (premise (r arg 1)) (premise (r arg 2)))))
))";

TEST(SubstitutionProperties, Examples) {
  Calculus s5 = builtin("S5");
  Verdict v = check_substitution_property(s5, "box", Property::WeaklyRightable);
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(v.rule, "5");
  EXPECT_TRUE(check_substitution_property(s5, "box", Property::WeaklyLeftable).holds);
  EXPECT_TRUE(check_substitution_property(s5, "box", Property::InverseRightable).holds);

  Calculus bi = builtin("BiInt");
  Verdict r = check_substitution_property(bi, "imp", Property::Rightable);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.rule, "coimp-l");
  EXPECT_TRUE(check_substitution_property(bi, "imp", Property::InverseRightable).holds);
  EXPECT_TRUE(check_substitution_property(bi, "imp", Property::WeaklyLeftable).holds);
  EXPECT_TRUE(check_substitution_property(bi, "coimp", Property::InverseLeftable).holds);
  EXPECT_TRUE(check_substitution_property(bi, "coimp", Property::WeaklyRightable).holds);

  Calculus m = builtin("Maehara");
  EXPECT_TRUE(check_substitution_property(m, "imp", Property::Rightable).holds);
  Verdict l = check_substitution_property(m, "imp", Property::Leftable);
  EXPECT_FALSE(l.holds);
  EXPECT_EQ(l.rule, "imp-r-M");
  EXPECT_TRUE(check_substitution_property(m, "imp", Property::WeaklyLeftable).holds);
}

TEST(SubstitutionProperties, G3BoxFailsBothLeftSideConditions) {
  Calculus g3 = builtin("G3");
  EXPECT_FALSE(check_substitution_property(g3, "box", Property::WeaklyLeftable).holds);
  EXPECT_FALSE(check_substitution_property(g3, "box", Property::InverseLeftable).holds);
  EXPECT_FALSE(check_substitution_property(g3, "box", Property::WeaklyRightable).holds);
}

// Leftable means every rule admitting l:C in its context is unrestricted;
// recompute that directly from the rule list.
TEST(SubstitutionProperties, LeftableAgreesWithDirectDefinition) {
  for (const auto& name : builtin_names()) {
    Calculus c = builtin(name);
    for (const auto& conn : c.language().connectives()) {
      for (Label lab : {Label::L, Label::R}) {
        bool expect = true;
        for (const auto& r : c.rules())
          if (r.context.admits_principal(lab, conn.name) && !r.context.is_unrestricted()) expect = false;
        Property p = lab == Label::L ? Property::Leftable : Property::Rightable;
        EXPECT_EQ(check_substitution_property(c, conn.name, p).holds, expect) << name << " " << conn.name;
      }
    }
  }
}

TEST(Invertibility, Examples) {
  Calculus lk = builtin("LK");
  EXPECT_TRUE(check_invertibility(lk, "and", Side::Left).holds);
  EXPECT_TRUE(check_invertibility(lk, "imp", Side::Right).holds);
  Calculus variant = parse_calculus(kAndVariants);
  EXPECT_FALSE(check_invertibility(variant, "and", Side::Left).holds);
  EXPECT_TRUE(check_invertibility(variant, "and", Side::Right).holds);
  Calculus s5 = builtin("S5");
  EXPECT_FALSE(check_invertibility(s5, "box", Side::Right).holds);
  EXPECT_FALSE(check_invertibility(s5, "box", Side::Left).holds);
}

TEST(VariableProperties, Examples) {
  Calculus m = builtin("Maehara");
  EXPECT_TRUE(check_variable_property(m, Side::Right).holds);
  Verdict v = check_variable_property(m, Side::Left);
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(v.rule, "imp-r-M");
  Calculus lk = builtin("LK");
  EXPECT_TRUE(check_variable_property(lk, Side::Left).holds);
  EXPECT_TRUE(check_variable_property(lk, Side::Right).holds);
  // (5) never admits a variable in its context, so it imposes nothing here.
  Calculus s5 = builtin("S5");
  EXPECT_TRUE(check_variable_property(s5, Side::Left).holds);
}

int count_kind(const Proof& pf, StepKind k) {
  int n = 0;
  testutil::walk(pf, [&](const Proof& x) { n += x.step.kind == k; });
  return n;
}

void expect_witness(const Calculus& c, const std::string& conn, int cuts) {
  auto w = principal_reduction_witness(c, conn, 0, 0);
  ASSERT_TRUE(w.has_value()) << conn;
  auto hyps = witness_hypotheses(c, generic_formula(c, conn), 0, 0);
  CheckOptions opts;
  opts.hypotheses = &hyps;
  EXPECT_TRUE(is_valid(c, *w, opts)) << conn;
  EXPECT_TRUE(w->end.empty());
  if (cuts >= 0) EXPECT_EQ(count_kind(*w, StepKind::Multicut), cuts) << conn;
  testutil::walk(*w, [&](const Proof& n) { EXPECT_NE(n.step.kind, StepKind::Rule); });
}

TEST(PrincipalWitness, AndInLK) {
  Calculus lk = builtin("LK");
  auto hyps = witness_hypotheses(lk, generic_formula(lk, "and"), 0, 0);
  ASSERT_EQ(hyps.size(), 3u);
  EXPECT_EQ(hyps[0], S(lk, "(l x1) (l x2)"));
  EXPECT_EQ(hyps[1], S(lk, "(r x1)"));
  EXPECT_EQ(hyps[2], S(lk, "(r x2)"));
  expect_witness(lk, "and", 2);
}

TEST(PrincipalWitness, BotInLKNeedsNoCut) { expect_witness(builtin("LK"), "bot", 0); }

TEST(PrincipalWitness, ImpInMaehara) { expect_witness(builtin("Maehara"), "imp", 2); }

TEST(PrincipalWitness, EveryConnectiveOfEveryCalculus) {
  for (const auto& name : builtin_names()) {
    Calculus c = builtin(name);
    for (const auto& conn : c.language().connectives()) expect_witness(c, conn.name, -1);
  }
}

TEST(AxiomExpansion, Examples) {
  Calculus lk = builtin("LK");
  auto p = axiom_expansion_proof(lk, F(lk, "(and p q)"));
  ASSERT_TRUE(p);
  EXPECT_TRUE(is_valid(lk, *p));
  EXPECT_TRUE(is_cut_free(*p));
  EXPECT_EQ(p->end, S(lk, "(l (and p q)) (r (and p q))"));
  EXPECT_EQ(testutil::nodes(*p), 6);

  Calculus s5 = builtin("S5");
  auto b = axiom_expansion_proof(s5, F(s5, "(box p)"));
  ASSERT_TRUE(b);
  EXPECT_TRUE(is_valid(s5, *b));
  EXPECT_EQ(b->step.rule, "5");
  ASSERT_EQ(b->premises.size(), 1u);
  EXPECT_EQ(b->premises[0].step.rule, "T");
  EXPECT_EQ(b->premises[0].end, S(s5, "(l (box p)) (r p)"));

  auto x = axiom_expansion_proof(s5, F(s5, "x"));
  ASSERT_TRUE(x);
  EXPECT_EQ(x->step.kind, StepKind::Initial);
}

TEST(AxiomExpansion, NestedFormulasInEveryCalculus) {
  for (const auto& name : builtin_names()) {
    Calculus c = builtin(name);
    AxiomExpander ax(c);
    for (const auto& conn : c.language().connectives()) {
      Formula g = generic_formula(c, conn.name);
      std::map<std::string, Formula> sigma;
      for (int i = 1; i <= conn.arity; ++i) sigma["x" + std::to_string(i)] = g;
      Formula nested = conn.arity ? substitute_variables(g, sigma) : g;
      auto p = ax.expand(nested);
      ASSERT_TRUE(p) << name << " " << nested.text();
      EXPECT_TRUE(is_valid(c, *p)) << name << " " << nested.text();
      EXPECT_TRUE(is_cut_free(*p));
      EXPECT_EQ(p->end, (Sequent{lf(Label::L, nested), lf(Label::R, nested)}));
    }
  }
}

TEST(Classify, CalculusLevelVerdicts) {
  EXPECT_EQ(classify_calculus(builtin("LK")).calculus_class, 1);
  EXPECT_EQ(classify_calculus(builtin("Maehara")).calculus_class, 1);
  auto s5 = classify_calculus(builtin("S5"));
  EXPECT_EQ(s5.calculus_class, 2);
  EXPECT_EQ(s5.connective("box").class_case, 4);
  auto g3 = classify_calculus(builtin("G3"));
  EXPECT_EQ(g3.calculus_class, 0);
  EXPECT_EQ(g3.connective("box").class_case, 0);
  EXPECT_TRUE(g3.axiom_expansion);
  EXPECT_TRUE(g3.principal_reductions);
}

TEST(Classify, ReportFormats) {
  auto r = classify_calculus(builtin("BiInt"));
  std::string sexp = format_report_sexp(r);
  EXPECT_NE(sexp.find("(calculus BiInt)"), std::string::npos);
  std::string table = format_report_table(r);
  EXPECT_NE(table.find("calculus class: 2"), std::string::npos);
  EXPECT_NE(table.find("imp: class 2 (case 4)"), std::string::npos);
}

}  // namespace
