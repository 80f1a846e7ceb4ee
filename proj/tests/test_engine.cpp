#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cutrx/classifier.hpp"
#include "cutrx/engine.hpp"
#include "cutrx/search.hpp"
#include "util.hpp"

using namespace cutrx;
using testutil::F;
using testutil::S;

namespace {

const Calculus& lk() {
  static Calculus c = builtin("LK");
  return c;
}

Proof ax(const Calculus& c, const std::string& f) { return AxiomExpander(c).require(F(c, f)); }

int index_of(const Sequent& s, const LFormula& x) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == x) return static_cast<int>(i);
  return -1;
}

Bits mark(const Sequent& s, const LFormula& x) {
  Bits b(s.size(), false);
  b[index_of(s, x)] = true;
  return b;
}

std::vector<std::string> trace_names(const std::string& trace) {
  std::vector<std::string> out;
  std::istringstream in(trace);
  std::string step, n, name;
  while (in >> step >> n >> name) {
    out.push_back(name);
    in.ignore(1 << 20, '\n');
  }
  return out;
}

// ---- inversion ----

TEST(Invert, AxiomExpansionOnTheLeft) {
  Proof pf = ax(lk(), "(and p q)");
  auto out = invert(lk(), pf, index_of(pf.end, lf(Label::L, F(lk(), "(and p q)"))));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(is_valid(lk(), out[0]));
  EXPECT_EQ(out[0].end, S(lk(), "(r (and p q)) (l p) (l q)"));
  EXPECT_LE(node_count(out[0]), node_count(pf));
  EXPECT_TRUE(is_cut_free(out[0]));
}

TEST(Invert, PrincipalLastRuleGivesItsPremise) {
  Proof prem = weaken_to(initial(Formula::var("p")), S(lk(), "(l p) (r p) (l q)"));
  Proof pf = apply_rule(lk(), "and-l", F(lk(), "(and p q)"), 0, {prem});
  auto out = invert(lk(), pf, pf.step.principal_pos);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(serialize_proof(permute_root(out[0], prem.end)), serialize_proof(prem));
}

TEST(Invert, RightRuleWithTwoPremises) {
  Proof pf = ax(lk(), "(and p q)");
  auto out = invert(lk(), pf, index_of(pf.end, lf(Label::R, F(lk(), "(and p q)"))));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].end, S(lk(), "(l (and p q)) (r p)"));
  EXPECT_EQ(out[1].end, S(lk(), "(l (and p q)) (r q)"));
  for (const auto& o : out) {
    EXPECT_TRUE(is_valid(lk(), o));
    EXPECT_LE(node_count(o), node_count(pf));
  }
}

TEST(Invert, ThroughAMulticutOnTheSameFormula) {
  Formula c = F(lk(), "(and p q)");
  Proof pf = multicut_all(ax(lk(), "(and p q)"), ax(lk(), "(and p q)"), c);
  ASSERT_TRUE(is_valid(lk(), pf));
  auto out = invert(lk(), pf, index_of(pf.end, lf(Label::L, c)));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(is_valid(lk(), out[0]));
  EXPECT_EQ(out[0].end, S(lk(), "(r (and p q)) (l p) (l q)"));
  EXPECT_LE(node_count(out[0]), node_count(pf));
}

TEST(Invert, RejectsNonInvertible) {
  Calculus s5 = builtin("S5");
  Proof pf = ax(s5, "(box p)");
  EXPECT_THROW(invert(s5, pf, index_of(pf.end, lf(Label::R, F(s5, "(box p)")))), PreconditionError);
}

// ---- substitution lemma ----

TEST(SubstituteAncestors, SingletonOfItselfIsIdentity) {
  Calculus bi = builtin("BiInt");
  Proof pf = example_proof("biint-fig2").premises[0];
  LFormula c = lf(Label::R, F(bi, "c"));
  Proof out = substitute_ancestors(bi, pf, mark(pf.end, c), Sequent{c});
  EXPECT_EQ(serialize_proof(out), serialize_proof(pf));
}

TEST(SubstituteAncestors, EmptyGammaErases) {
  Calculus s5 = builtin("S5");
  Proof left = example_proof("s5-nonanalytic").premises[0];
  LFormula c = lf(Label::R, F(s5, "(box q)"));
  Proof out = substitute_ancestors(s5, left, mark(left.end, c), {});
  EXPECT_TRUE(is_valid(s5, out));
  EXPECT_EQ(out.end, S(s5, "(l (box p)) (r (box p))"));
}

TEST(SubstituteAncestors, ContextViolation) {
  Calculus s5 = builtin("S5");
  Proof left = example_proof("s5-nonanalytic").premises[0];
  LFormula c = lf(Label::R, F(s5, "(box q)"));
  EXPECT_THROW(substitute_ancestors(s5, left, mark(left.end, c), S(s5, "(l p)")), SubstitutionError);
  EXPECT_NO_THROW(substitute_ancestors(s5, left, mark(left.end, c), S(s5, "(l (box s))")));
}

TEST(SubstituteAncestors, PrincipalAncestorNeedsIntercept) {
  Calculus bi = builtin("BiInt");
  Proof left = example_proof("biint-fig2").premises[0];
  LFormula c = lf(Label::R, F(bi, "(imp a b)"));
  EXPECT_THROW(substitute_ancestors(bi, left, mark(left.end, c), S(bi, "(l (and a b))")), SubstitutionError);
}

// ---- redundant cuts ----

TEST(RedundantCuts, ReplacedByStructuralSteps) {
  Formula p = Formula::var("p");
  Proof right = weaken_to(initial(p), S(lk(), "(l p) (r p) (l p)"));
  Proof pf = multicut(initial(p), right, p, {1}, {2});
  ASSERT_TRUE(is_valid(lk(), pf));
  ASSERT_TRUE(pf.end.contains(lf(Label::L, p)));
  Proof out = remove_redundant_cuts(pf);
  EXPECT_TRUE(is_valid(lk(), out));
  EXPECT_TRUE(out.end.identical(pf.end));
  EXPECT_TRUE(is_cut_free(out));
}

TEST(RedundantCuts, NoneMeansIdentity) {
  Proof pf = example_proof("s5-analytic");
  EXPECT_EQ(serialize_proof(remove_redundant_cuts(pf)), serialize_proof(pf));
}

TEST(RedundantCuts, NestedReachFixpointWithoutRaisingRanks) {
  Formula p = Formula::var("p"), q = Formula::var("q");
  Proof inner = multicut(initial(p), weaken_to(initial(p), S(lk(), "(l p) (r p) (l p)")), p, {1}, {2});
  Sequent t = inner.end;
  t.push_back(lf(Label::R, q));
  Proof left = weaken_to(inner, t);
  Proof right = weaken_to(initial(q), S(lk(), "(l q) (r q) (l q)"));
  Proof pf = multicut(left, right, q, {static_cast<int>(t.size()) - 1}, {2});
  ASSERT_TRUE(is_valid(lk(), pf));
  Proof out = remove_redundant_cuts(pf);
  EXPECT_TRUE(is_valid(lk(), out));
  EXPECT_TRUE(is_cut_free(out));
  EXPECT_EQ(serialize_proof(remove_redundant_cuts(out)), serialize_proof(out));
  EXPECT_LE(node_count(out), node_count(pf));
}

// ---- distributions ----

TEST(Distribution, EmptyFamilyIsOneLeaf) {
  int leaves = 0;
  Proof t = distribution_cut_tree({}, S(lk(), "(l p) (r p)"), [&](const Sequent& d) {
    ++leaves;
    EXPECT_TRUE(d.empty());
    return initial(Formula::var("p"));
  });
  EXPECT_EQ(leaves, 1);
  EXPECT_TRUE(is_cut_free(t));
}

TEST(Distribution, TwoFormulasGiveFourLeaves) {
  std::vector<Formula> fs{F(lk(), "a"), F(lk(), "b")};
  Sequent k = S(lk(), "(l p) (r p)");
  int leaves = 0;
  Proof t = distribution_cut_tree(fs, k, [&](const Sequent& d) {
    ++leaves;
    Sequent want = k;
    want.append(d);
    return weaken_to(initial(Formula::var("p")), want);
  });
  EXPECT_EQ(leaves, 4);
  EXPECT_TRUE(is_valid(lk(), t));
  EXPECT_EQ(t.end, k);
  for (const auto& c : cuts(t)) EXPECT_TRUE(c.formula == fs[0] || c.formula == fs[1]);
  EXPECT_EQ(cuts(t).size(), 3u);
}

TEST(Distribution, LeafOrderMatchesEnumeration) {
  std::vector<Formula> fs{F(lk(), "a"), F(lk(), "b"), F(lk(), "c")};
  auto all = distributions(fs);
  ASSERT_EQ(all.size(), 8u);
  std::vector<Sequent> seen;
  Sequent k = S(lk(), "(l p) (r p)");
  Proof t = distribution_cut_tree(fs, k, [&](const Sequent& d) {
    seen.push_back(d);
    Sequent want = k;
    want.append(d);
    return weaken_to(initial(Formula::var("p")), want);
  });
  EXPECT_TRUE(is_valid(lk(), t));
  ASSERT_EQ(seen.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(seen[i], all[i]) << i;
}

// Brute force: with F covering all context formulas, every labelling is
// orthogonal or matching.
TEST(Distribution, EveryLabellingIsOrthogonalOrMatching) {
  std::vector<Formula> atoms{F(lk(), "a"), F(lk(), "b"), F(lk(), "c")};
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 3);
    std::vector<Sequent> ctx(n);
    for (auto& g : ctx) {
      int k = static_cast<int>(rng() % 3);
      for (int j = 0; j < k; ++j) g.push_back(lf(rng() % 2 ? Label::L : Label::R, atoms[rng() % 3]));
    }
    auto fs = distribution_formulas(ctx);
    for (const auto& d : distributions(fs)) {
      auto kind = classify_distribution(d, ctx);
      EXPECT_TRUE(kind.representatives.has_value() || kind.matching >= 0);
    }
  }
}

// ---- reductions ----

TEST(ReduceOnce, FigureThreeShape) {
  Calculus bi = builtin("BiInt");
  Proof pf = example_proof("biint-fig2");
  CutInfo in = cut_measures(pf);
  Engine e(bi);
  ReductionOutcome o = e.reduce_once(pf);
  EXPECT_EQ(o.name, "analytic-cut-left");
  ASSERT_EQ(o.distribution.size(), 1u);
  EXPECT_EQ(o.distribution[0], F(bi, "(and a b)"));
  EXPECT_TRUE(is_valid(bi, o.proof));
  EXPECT_TRUE(o.proof.end.identical(pf.end));
  EXPECT_TRUE(is_dr_reduced(o.proof, in.degree, in.rank));
  EXPECT_TRUE(o.proof.step.kind == StepKind::Multicut || o.proof.premises.at(0).step.kind == StepKind::Multicut);
  bool on_gamma = false;
  for (const auto& c : cuts(o.proof)) on_gamma = on_gamma || c.formula == F(bi, "(and a b)");
  EXPECT_TRUE(on_gamma);
  EXPECT_TRUE(testutil::all_cuts_analytic(o.proof));
}

TEST(ReduceOnce, PrincipalInBothPremises) {
  Formula c = F(lk(), "(and p q)");
  auto w = [&](const char* v) { return weaken_to(initial(Formula::var(v)), S(lk(), std::string("(l p) (l q) (r ") + v + ")")); };
  Proof left = apply_rule(lk(), "and-r", c, 0, {w("p"), w("q")});
  Proof right = apply_rule(lk(), "and-l", c, 0, {w("p")});
  Proof pf = multicut_all(left, right, c);
  ASSERT_TRUE(is_valid(lk(), pf));
  ASSERT_FALSE(is_analytic(pf));
  Engine e(lk());
  ReductionOutcome o = e.reduce_once(pf);
  EXPECT_EQ(o.name, "principal");
  EXPECT_TRUE(is_valid(lk(), o.proof));
  EXPECT_TRUE(o.proof.end.identical(pf.end));
  for (const auto& ci : cuts(o.proof)) EXPECT_TRUE(ci.formula == F(lk(), "p") || ci.formula == F(lk(), "q"));
}

TEST(ReduceOnce, VariableCutIsRenamed) {
  Formula x = Formula::var("x");
  Proof left = weaken_to(initial(Formula::var("q")), S(lk(), "(l q) (r q) (r x)"));
  Proof right = weaken_to(initial(Formula::var("q")), S(lk(), "(l q) (r q) (l x)"));
  Proof pf = multicut(left, right, x, {2}, {2});
  ASSERT_TRUE(is_valid(lk(), pf));
  ASSERT_FALSE(is_analytic(pf));
  Engine e(lk());
  ReductionOutcome o = e.reduce_once(pf);
  EXPECT_EQ(o.name, "renaming");
  EXPECT_TRUE(is_valid(lk(), o.proof));
  EXPECT_TRUE(testutil::all_cuts_analytic(o.proof));
  EXPECT_EQ(serialize_proof(o.proof).find(" x)"), std::string::npos);
}

TEST(ReduceOnce, RejectsNonCut) {
  Engine e(lk());
  EXPECT_THROW(e.reduce_once(initial(Formula::var("p"))), PreconditionError);
}

// ---- main loops ----

TEST(Restrict, CatalogProofs) {
  for (const char* name : {"s5-nonanalytic", "biint-fig2"}) {
    Calculus c = example_calculus(name);
    Proof pf = example_proof(name);
    Proof out = restrict(c, pf);
    EXPECT_TRUE(is_valid(c, out)) << name;
    EXPECT_TRUE(out.end.identical(pf.end)) << name;
    EXPECT_TRUE(testutil::all_cuts_analytic(out)) << name;
  }
}

TEST(Restrict, LocallyAnalyticInputIsUnchanged) {
  Calculus s5 = builtin("S5");
  Proof pf = example_proof("s5-analytic");
  EXPECT_EQ(serialize_proof(restrict(s5, pf)), serialize_proof(pf));
}

TEST(Restrict, RefusesG3) {
  Calculus g3 = builtin("G3");
  EXPECT_THROW(restrict(g3, initial(Formula::var("p"))), PreconditionError);
}

TEST(Restrict, TraceLines) {
  Calculus bi = builtin("BiInt");
  std::ostringstream tr;
  EngineOptions o;
  o.trace = &tr;
  restrict(bi, example_proof("biint-fig2"), o);
  EXPECT_EQ(tr.str(), "STEP 1 analytic-cut-left degree=3 rank=12 cuts=0 F=1\n");
}

TEST(Restrict, LeafThreshold) {
  Calculus bi = builtin("BiInt");
  EngineOptions o;
  o.max_leaves = 1;
  EXPECT_THROW(restrict(bi, example_proof("biint-fig2"), o), LimitError);
}

TEST(Eliminate, LKProofThroughADetour) {
  auto base = prove(lk(), S(lk(), "(r (or p (imp p bot)))"), {});
  ASSERT_TRUE(base);
  Formula c = F(lk(), "(and p p)");
  Sequent l = base->end, r = base->end;
  l.push_back(lf(Label::R, c));
  r.push_back(lf(Label::L, c));
  Proof pf = structural_to(compose_cut(weaken_to(*base, l), weaken_to(*base, r), c, 1, 1), base->end);
  ASSERT_TRUE(is_valid(lk(), pf));
  Proof out = eliminate(lk(), pf);
  EXPECT_TRUE(is_valid(lk(), out));
  EXPECT_TRUE(is_cut_free(out));
  EXPECT_TRUE(out.end.identical(pf.end));
}

TEST(Eliminate, MaeharaVariableCutShiftsThenDrops) {
  Calculus m = builtin("Maehara");
  Formula p = Formula::var("p");
  Proof left = apply_rule(m, "and-l", F(m, "(and p q)"), 0, {weaken_to(initial(p), S(m, "(l p) (r p) (l q)"))});
  Proof right = apply_rule(m, "or-r", F(m, "(or p q)"), 0, {weaken_to(initial(p), S(m, "(l p) (r p) (r q)"))});
  Proof pf = multicut_all(left, right, p);
  ASSERT_TRUE(is_valid(m, pf));
  std::ostringstream tr;
  EngineOptions o;
  o.trace = &tr;
  Proof out = eliminate(m, pf, o);
  EXPECT_TRUE(is_valid(m, out));
  EXPECT_TRUE(is_cut_free(out));
  auto names = trace_names(tr.str());
  ASSERT_FALSE(names.empty());
  EXPECT_EQ(names.back(), "initial");
}

TEST(Eliminate, CutFreeInputIsUnchanged) {
  Proof pf = ax(lk(), "(imp p (or q bot))");
  EXPECT_EQ(serialize_proof(eliminate(lk(), pf)), serialize_proof(pf));
}

TEST(Eliminate, RefusesClassTwo) {
  EXPECT_THROW(eliminate(builtin("S5"), example_proof("s5-nonanalytic")), PreconditionError);
}

// ---- properties over generated corpora ----

// Distribution formulas come from the near premise's side or sit strictly
// inside the cut formula; every new cut is on one of them or smaller than C.
TEST(AnalyticCutting, DistributionFormulasAreBounded) {
  int seen = 0;
  for (const char* name : {"BiInt", "S5", "G4", "BiIntS5", "S5multi(3)"}) {
    Calculus c = builtin(name);
    Engine e(c);
    const ClassificationReport& report = e.report();
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
      RandomOptions ro;
      ro.max_nodes = 40;
      auto pf = random_cut_proof(c, ro, seed);
      if (!pf) continue;
      const Formula& cf = pf->step.cut;
      if (cf.is_var()) continue;
      int kase = report.connective(cf.head()).class_case;
      if (kase != 4 && kase != 5) continue;
      ReductionOutcome o = e.reduce_once(*pf);
      if (!o.name.starts_with("analytic")) continue;
      ++seen;
      Sequent side;
      const Proof& near = pf->premises[o.name == "analytic-cut-left" ? 0 : 1];
      Label cut_label = o.name == "analytic-cut-left" ? Label::R : Label::L;
      for (const auto& x : near.end)
        if (!(x == lf(cut_label, cf))) side.push_back(x);
      for (const auto& f : o.distribution) {
        bool in_side = false;
        for (const auto& x : side) in_side = in_side || testutil::sub_oracle(f, x.formula);
        bool inside_c = testutil::sub_oracle(f, cf) && !(f == cf);
        EXPECT_TRUE(in_side || inside_c) << name << " " << seed << " " << f.text();
      }
      for (const auto& ci : cuts(o.proof)) {
        bool in_f = std::find(o.distribution.begin(), o.distribution.end(), ci.formula) != o.distribution.end();
        bool smaller = testutil::sub_oracle(ci.formula, cf) && !(ci.formula == cf);
        EXPECT_TRUE(in_f || smaller || ci.analytic) << name << " " << seed << " " << ci.formula.text();
      }
    }
  }
  EXPECT_GT(seen, 20);
}

TEST(Substitution, IdentityOnGeneratedProofs) {
  for (const char* name : {"LK", "S5", "BiInt"}) {
    Calculus c = builtin(name);
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      Proof pf = random_proof(c, RandomOptions{}, seed);
      for (std::size_t i = 0; i < pf.end.size(); ++i) {
        Bits b(pf.end.size(), false);
        b[i] = true;
        try {
          Proof out = substitute_ancestors(c, pf, b, Sequent{pf.end[i]});
          EXPECT_EQ(serialize_proof(out), serialize_proof(pf)) << name << " " << seed;
        } catch (const SubstitutionError&) {
          // Some ancestor is principal or initial; nothing to compare.
        }
      }
    }
  }
}

}  // namespace
