#include <gtest/gtest.h>

#include "cutrx/sexpr.hpp"
#include "util.hpp"

using namespace cutrx;
using testutil::F;
using testutil::S;

namespace {

const Calculus& s5() {
  static Calculus c = builtin("S5");
  return c;
}

TEST(SExpr, ReadsNestedListsAndSkipsComments) {
  SExpr e = read_sexpr("; note\n(a (b c) d)");
  ASSERT_TRUE(e.headed("a"));
  ASSERT_EQ(e.items.size(), 3u);
  EXPECT_EQ(e.items[1].str(), "(b c)");
  EXPECT_EQ(e.items[1].line, 2);
}

TEST(SExpr, RejectsTrailingAndUnbalancedInput) {
  EXPECT_THROW(read_sexpr("(a b"), ParseError);
  EXPECT_THROW(read_sexpr("(a) b"), ParseError);
  EXPECT_THROW(read_sexpr(")"), ParseError);
  EXPECT_EQ(read_sexprs("(a) (b)").size(), 2u);
}

TEST(Formula, ParsesVariablesAndApplications) {
  Formula p = F(s5(), "p");
  EXPECT_TRUE(p.is_var());
  EXPECT_EQ(p.head(), "p");
  Formula a = F(s5(), "(and p q)");
  EXPECT_EQ(a.head(), "and");
  ASSERT_EQ(a.args().size(), 2u);
  EXPECT_EQ(a.arg(0), Formula::var("p"));
  EXPECT_EQ(a.arg(1), Formula::var("q"));
  Formula nested = F(s5(), "(box (neg (box (neg p))))");
  EXPECT_EQ(nested.text(), "(box (neg (box (neg p))))");
  EXPECT_EQ(nested.size(), 5);
}

TEST(Formula, RejectsArityAndUnknownConnectives) {
  EXPECT_THROW(F(s5(), "(and p)"), ParseError);
  EXPECT_THROW(F(s5(), "(xor p q)"), ParseError);
  EXPECT_THROW(F(builtin("LK"), "(box p)"), ParseError);
  EXPECT_THROW(F(s5(), "(p)"), ParseError);
}

TEST(Formula, NullaryConnectiveIsNotAVariable) {
  Formula b = F(s5(), "bot");
  EXPECT_FALSE(b.is_var());
  EXPECT_EQ(b.size(), 1);
}

TEST(Formula, Size) {
  EXPECT_EQ(F(s5(), "p").size(), 1);
  EXPECT_EQ(F(s5(), "(and p q)").size(), 3);
  EXPECT_EQ(F(s5(), "(box (neg p))").size(), 3);
}

TEST(Formula, Subformulas) {
  Formula big = F(s5(), "(box (neg (box (neg p))))");
  EXPECT_TRUE(is_subformula(F(s5(), "(box (neg p))"), big));
  EXPECT_TRUE(is_subformula(F(s5(), "p"), F(s5(), "p")));
  EXPECT_FALSE(is_proper_subformula(F(s5(), "p"), F(s5(), "p")));
  auto subs = subformulas(F(s5(), "(and p q)"));
  std::set<Formula> want{F(s5(), "p"), F(s5(), "q"), F(s5(), "(and p q)")};
  EXPECT_EQ(subs, want);
  EXPECT_FALSE(is_subformula(F(s5(), "(neg p)"), F(s5(), "(box p)")));
}

TEST(Formula, SubformulaAgreesWithTreeWalkOracle) {
  std::vector<Formula> fs;
  for (auto t : {"p", "q", "(neg p)", "(box (neg p))", "(and p (box (neg p)))", "(imp (and p q) (or q p))"})
    fs.push_back(F(s5(), t));
  for (const auto& f : fs)
    for (const auto& s : subformulas(f)) EXPECT_TRUE(testutil::sub_oracle(s, f));
  for (const auto& g : fs)
    for (const auto& f : fs) EXPECT_EQ(is_subformula(g, f), testutil::sub_oracle(g, f)) << g.text() << " in " << f.text();
}

TEST(LabelledFormula, Flip) {
  LFormula x = lf(Label::L, F(s5(), "p"));
  EXPECT_EQ(flip(x), lf(Label::R, F(s5(), "p")));
  std::set<LFormula> s{lf(Label::L, F(s5(), "(box p)")), lf(Label::R, F(s5(), "(box q)"))};
  std::set<LFormula> want{lf(Label::R, F(s5(), "(box p)")), lf(Label::L, F(s5(), "(box q)"))};
  EXPECT_EQ(flip_set(s), want);
  EXPECT_EQ(flip_set(flip_set(s)), s);
}

TEST(LabelledFormula, FlippingTheFiveContextIsIdentity) {
  const RuleSchema* five = s5().find_rule("5");
  ASSERT_NE(five, nullptr);
  EXPECT_EQ(five->context.flipped(), five->context);
  EXPECT_TRUE(five->context.subsumed_by(five->context.flipped()));
  EXPECT_TRUE(five->context.flipped().subsumed_by(five->context));
}

TEST(Substitution, ReplacesVariables) {
  EXPECT_EQ(substitute_variable(F(s5(), "(box p)"), "p", F(s5(), "(and q r)")), F(s5(), "(box (and q r))"));
  EXPECT_EQ(substitute_variable(F(s5(), "p"), "p", F(s5(), "q")), F(s5(), "q"));
  EXPECT_EQ(substitute_variable(F(s5(), "(and p q)"), "r", F(s5(), "q")), F(s5(), "(and p q)"));
}

TEST(Substitution, InitialSequentBecomesNonInitialLeaf) {
  Proof id = initial(Formula::var("x"));
  Formula a = F(s5(), "(and p q)");
  Proof sub = substitute_variable(id, "x", a);
  EXPECT_EQ(sub.end, (Sequent{lf(Label::L, a), lf(Label::R, a)}));
  EXPECT_FALSE(is_valid(s5(), sub));
}

TEST(Substitution, SimultaneousDoesNotCascade) {
  std::map<std::string, Formula> sigma{{"p", F(s5(), "q")}, {"q", F(s5(), "p")}};
  EXPECT_EQ(substitute_variables(F(s5(), "(and p q)"), sigma), F(s5(), "(and q p)"));
}

TEST(Sequent, MultisetEqualityIgnoresOrder) {
  Sequent a = S(s5(), "(l p) (r q) (l p)");
  Sequent b = S(s5(), "(l p) (l p) (r q)");
  Sequent c = S(s5(), "(l p) (r q)");
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a.identical(b));
  EXPECT_FALSE(a == c);
  EXPECT_TRUE(c.submultiset_of(a));
  EXPECT_FALSE(a.submultiset_of(c));
  EXPECT_EQ(a.count(lf(Label::L, Formula::var("p"))), 2u);
  EXPECT_EQ(a.support().size(), 2u);
}

TEST(Sequent, FormatRoundTrip) {
  Sequent a = S(s5(), "(l (box p)) (r (neg q))");
  EXPECT_EQ(format_sequent(a), "(seq (l (box p)) (r (neg q)))");
  EXPECT_TRUE(parse_sequent(format_sequent(a), s5().language()).identical(a));
}

}  // namespace
