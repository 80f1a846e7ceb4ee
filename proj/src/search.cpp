#include "cutrx/search.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "cutrx/classifier.hpp"

namespace cutrx {

namespace {

Sequent of_set(const std::set<LFormula>& s) { return Sequent(std::vector<LFormula>(s.begin(), s.end())); }

std::string key_of(const std::set<LFormula>& s) {
  std::string k;
  for (const auto& x : s) {
    k += label_char(x.label);
    k += x.formula.text();
    k += ';';
  }
  return k;
}

class Prover {
 public:
  Prover(const Calculus& calc, const SearchOptions& opts) : calc_(calc), opts_(opts), rng_(opts.seed) {}

  std::optional<Proof> run(const std::set<LFormula>& goal) {
    for (int d = 1; d <= opts_.depth; ++d)
      if (auto p = search(goal, d)) return p;
    return std::nullopt;
  }

 private:
  std::optional<Proof> search(const std::set<LFormula>& s, int depth) {
    if (depth <= 0) return std::nullopt;
    std::string key = key_of(s);
    if (auto it = proved_.find(key); it != proved_.end()) return it->second;
    if (auto it = failed_.find(key); it != failed_.end() && it->second >= depth) return std::nullopt;
    auto found = attempt(s, depth);
    if (found) proved_.emplace(key, *found);
    else failed_[key] = std::max(failed_[key], depth);
    return found;
  }

  std::optional<Proof> attempt(const std::set<LFormula>& s, int depth) {
    Sequent goal = of_set(s);
    for (const auto& x : s)
      if (x.formula.is_var() && x.label == Label::L && s.count(flip(x)))
        return structural_to(initial(x.formula), goal);

    std::vector<LFormula> occurrences(s.begin(), s.end());
    if (opts_.seed != 0) std::shuffle(occurrences.begin(), occurrences.end(), rng_);
    for (const auto& x : occurrences) {
      if (x.formula.is_var()) continue;
      for (const auto& rule : calc_.rules()) {
        if (rule.connective != x.formula.head() || side_label(rule.side) != x.label) continue;
        if (auto p = by_rule(s, goal, x, rule, depth)) return p;
      }
    }

    if (opts_.analytic_cuts || opts_.arbitrary_cuts) {
      std::set<Formula> pool;
      if (opts_.analytic_cuts)
        for (const auto& x : s) {
          auto sub = subformulas(x.formula);
          pool.insert(sub.begin(), sub.end());
        }
      if (opts_.arbitrary_cuts) pool.insert(opts_.cut_pool.begin(), opts_.cut_pool.end());
      for (const auto& c : pool) {
        if (s.count(lf(Label::R, c)) || s.count(lf(Label::L, c))) continue;
        auto sl = s, sr = s;
        sl.insert(lf(Label::R, c));
        sr.insert(lf(Label::L, c));
        auto left = search(sl, depth - 1);
        if (!left) continue;
        auto right = search(sr, depth - 1);
        if (!right) continue;
        auto pos = [](const Proof& p, const LFormula& y) {
          const auto& items = p.end.items();
          return static_cast<int>(std::find(items.begin(), items.end(), y) - items.begin());
        };
        int li = pos(*left, lf(Label::R, c)), ri = pos(*right, lf(Label::L, c));
        return structural_to(multicut(std::move(*left), std::move(*right), c, {li}, {ri}), goal);
      }
    }
    return std::nullopt;
  }

  std::optional<Proof> by_rule(const std::set<LFormula>& s, const Sequent& goal, const LFormula& x,
                               const RuleSchema& rule, int depth) {
    Sequent ctx;
    for (const auto& y : s)
      if (!(y == x) && rule.context.matches(y)) ctx.push_back(y);
    std::vector<Sequent> variants{ctx};
    if (rule.context.matches(x)) {
      Sequent with = ctx;
      with.push_back(x);
      variants.push_back(with);
    }
    for (const auto& c : variants) {
      for (int t = 0; t < static_cast<int>(rule.templates.size()); ++t) {
        std::vector<Proof> premises;
        bool ok = true;
        for (int m = 0; ok && m < static_cast<int>(rule.templates[t].premises.size()); ++m) {
          Sequent want = c;
          want.append(rule.auxiliaries(x.formula, t, m));
          auto sub = search(want.support(), depth - 1);
          if (!sub) ok = false;
          else premises.push_back(structural_to(std::move(*sub), want));
        }
        if (!ok) continue;
        return structural_to(apply_rule(calc_, rule.id, x.formula, t, std::move(premises), c), goal);
      }
    }
    return std::nullopt;
  }

  const Calculus& calc_;
  const SearchOptions& opts_;
  std::mt19937_64 rng_;
  std::map<std::string, Proof> proved_;
  std::map<std::string, int> failed_;
};

}  // namespace

std::optional<Proof> prove(const Calculus& calc, const Sequent& goal, const SearchOptions& opts) {
  Prover prover(calc, opts);
  auto p = prover.run(goal.support());
  if (!p) return std::nullopt;
  return structural_to(std::move(*p), goal);
}

Proof compose_cut(Proof p1, Proof p2, const Formula& c, int p, int q) {
  auto last = [](const Sequent& s, const LFormula& x, int n) {
    std::vector<int> out;
    for (int i = static_cast<int>(s.size()); i-- > 0 && static_cast<int>(out.size()) < n;)
      if (s[i] == x) out.push_back(i);
    std::reverse(out.begin(), out.end());
    return out;
  };
  if (p < 1 || q < 1) throw PreconditionError("multicut multiplicities must be positive");
  auto left = last(p1.end, lf(Label::R, c), p);
  auto right = last(p2.end, lf(Label::L, c), q);
  if (static_cast<int>(left.size()) < p)
    throw PreconditionError("left premise has fewer than " + std::to_string(p) + " occurrences of r:" + c.text());
  if (static_cast<int>(right.size()) < q)
    throw PreconditionError("right premise has fewer than " + std::to_string(q) + " occurrences of l:" + c.text());
  return multicut(std::move(p1), std::move(p2), c, left, right);
}

namespace {

const char* const kVariables[] = {"p", "q", "r", "s", "t", "u"};

class Generator {
 public:
  Generator(const Calculus& calc, const RandomOptions& opts, std::uint64_t seed)
      : calc_(calc), opts_(opts), rng_(seed) {
    int n = std::clamp(opts.variables, 1, 6);
    for (int i = 0; i < n; ++i) {
      vars_.push_back(Formula::var(kVariables[i]));
      pool_.push_back(initial(vars_.back()));
    }
    for (const auto& rule : calc.rules())
      for (int t = 0; t < static_cast<int>(rule.templates.size()); ++t) {
        if (!rule.templates[t].premises.empty()) continue;
        try {
          pool_.push_back(apply_rule(calc, rule.id, principal_for(rule, rule.templates[t], {}), t, {}));
        } catch (const Error&) {
        }
      }
  }

  const std::vector<Proof>& pool() const { return pool_; }

  // One forward move; false when the attempt was discarded.
  bool step() {
    double u = std::uniform_real_distribution<double>(0, 1)(rng_);
    if (u < 0.12) return weaken();
    if (u < 0.18) return contract();
    return rule_step();
  }

  int uniform(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool coin(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }

  Formula random_variable() { return vars_[uniform(static_cast<int>(vars_.size()))]; }

 private:
  int max_nodes() const { return opts_.max_nodes; }

  // Arguments are drawn from formulas of the chosen premises that sit in a
  // matching auxiliary slot, so the auxiliaries mostly exist already.
  Formula principal_for(const RuleSchema& rule, const PremiseTemplate& tmpl, const std::vector<const Proof*>& chosen) {
    const Connective* conn = calc_.language().find(rule.connective);
    std::vector<Formula> args;
    for (int j = 0; j < (conn ? conn->arity : 0); ++j) {
      std::vector<Formula> candidates;
      for (std::size_t m = 0; m < chosen.size(); ++m)
        for (const auto& slot : tmpl.premises[m])
          if (slot.arg == j)
            for (const auto& x : chosen[m]->end)
              if (x.label == slot.label) candidates.push_back(x.formula);
      if (!candidates.empty() && coin(0.85)) args.push_back(candidates[uniform(static_cast<int>(candidates.size()))]);
      else args.push_back(random_variable());
    }
    return Formula::app(rule.connective, std::move(args));
  }

  bool rule_step() {
    const auto& rules = calc_.rules();
    const RuleSchema& rule = rules[uniform(static_cast<int>(rules.size()))];
    int t = uniform(static_cast<int>(rule.templates.size()));
    const auto& tmpl = rule.templates[t];
    if (tmpl.premises.empty()) return false;
    std::vector<const Proof*> chosen;
    for (std::size_t m = 0; m < tmpl.premises.size(); ++m) chosen.push_back(&pool_[uniform(static_cast<int>(pool_.size()))]);

    Formula principal = principal_for(rule, tmpl, chosen);
    if (principal.size() > opts_.max_formula) return false;

    // Context: the union, with multiplicities, of what each premise holds
    // beyond its auxiliaries.
    std::map<LFormula, std::size_t> ctx_count;
    for (std::size_t m = 0; m < tmpl.premises.size(); ++m) {
      Sequent aux = rule.auxiliaries(principal, t, static_cast<int>(m));
      std::map<LFormula, std::size_t> here;
      for (const auto& x : chosen[m]->end) ++here[x];
      for (const auto& x : aux)
        if (here[x] > 0) --here[x];
      for (const auto& [x, n] : here) ctx_count[x] = std::max(ctx_count[x], n);
    }
    Sequent ctx;
    for (const auto& [x, n] : ctx_count)
      for (std::size_t i = 0; i < n; ++i) {
        if (!rule.context.matches(x)) return false;
        ctx.push_back(x);
      }
    if (static_cast<int>(ctx.size()) + 1 > opts_.max_sequent) return false;

    std::vector<Proof> premises;
    int nodes = 1;
    for (std::size_t m = 0; m < tmpl.premises.size(); ++m) {
      Sequent want = ctx;
      want.append(rule.auxiliaries(principal, t, static_cast<int>(m)));
      premises.push_back(structural_to(*chosen[m], want));
      nodes += node_count(premises.back());
    }
    if (nodes > max_nodes()) return false;
    pool_.push_back(apply_rule(calc_, rule.id, principal, t, std::move(premises)));
    return true;
  }

  bool weaken() {
    const Proof& base = pool_[uniform(static_cast<int>(pool_.size()))];
    if (static_cast<int>(base.end.size()) + 1 > opts_.max_sequent || node_count(base) + 1 > max_nodes()) return false;
    // A formula already around, so that later rules can use it.
    const Proof& other = pool_[uniform(static_cast<int>(pool_.size()))];
    LFormula x = other.end.empty() ? lf(Label::L, random_variable()) : other.end[uniform(static_cast<int>(other.end.size()))];
    if (coin(0.3)) x = flip(x);
    Sequent target = base.end;
    target.push_back(x);
    pool_.push_back(weaken_to(base, target));
    return true;
  }

  bool contract() {
    const Proof& base = pool_[uniform(static_cast<int>(pool_.size()))];
    if (base.end.support().size() == base.end.size() || node_count(base) + 1 > max_nodes()) return false;
    pool_.push_back(contract_duplicates(base));
    return true;
  }

  const Calculus& calc_;
  RandomOptions opts_;
  std::mt19937_64 rng_;
  std::vector<Formula> vars_;
  std::vector<Proof> pool_;
};

constexpr int kAttempts = 400;

// Is C a subformula of some formula of s other than the given occurrences?
bool occurs_in_rest(const Formula& c, const Sequent& s, const LFormula& skip) {
  for (const auto& x : s)
    if (!(x == skip) && is_subformula(c, x.formula)) return true;
  return false;
}

}  // namespace

Proof random_proof(const Calculus& calc, const RandomOptions& opts, std::uint64_t seed) {
  Generator gen(calc, opts, seed);
  for (int i = 0; i < kAttempts; ++i) gen.step();
  // Prefer the latest large proof: it has seen the most rule applications.
  const auto& pool = gen.pool();
  const Proof* best = &pool.front();
  for (const auto& p : pool)
    if (node_count(p) >= node_count(*best) && node_count(p) <= opts.max_nodes) best = &p;
  return *best;
}

std::optional<Proof> random_cut_proof(const Calculus& calc, const RandomOptions& opts, std::uint64_t seed) {
  RandomOptions half = opts;
  half.max_nodes = std::max(3, (opts.max_nodes - 1) / 2);
  Generator gen(calc, half, seed);
  for (int i = 0; i < kAttempts; ++i) gen.step();
  const auto& pool = gen.pool();

  struct Candidate {
    std::size_t left, right;
    Formula c;
  };
  std::vector<Candidate> found;
  std::map<Formula, std::vector<std::size_t>> lefts, rights;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (const auto& x : pool[i].end.support()) {
      if (x.formula.is_var()) continue;
      (x.label == Label::R ? lefts : rights)[x.formula].push_back(i);
    }
  for (const auto& [c, ls] : lefts) {
    auto it = rights.find(c);
    if (it == rights.end()) continue;
    for (auto i : ls)
      for (auto j : it->second) {
        if (occurs_in_rest(c, pool[i].end, lf(Label::R, c)) || occurs_in_rest(c, pool[j].end, lf(Label::L, c)))
          continue;
        if (node_count(pool[i]) + node_count(pool[j]) + 1 > opts.max_nodes) continue;
        found.push_back({i, j, c});
      }
  }
  // Fall back to weakening the cut formula into one side.
  if (found.empty()) {
    for (const auto& [c, ls] : lefts)
      for (auto i : ls) {
        if (occurs_in_rest(c, pool[i].end, lf(Label::R, c))) continue;
        for (std::size_t j = 0; j < pool.size(); ++j) {
          if (pool[j].end.contains(lf(Label::L, c))) continue;
          bool clash = false;
          for (const auto& x : pool[j].end) clash = clash || is_subformula(c, x.formula);
          if (clash || node_count(pool[i]) + node_count(pool[j]) + 2 > opts.max_nodes) continue;
          found.push_back({i, j, c});
        }
      }
  }
  if (found.empty()) return std::nullopt;
  const Candidate& pick = found[gen.uniform(static_cast<int>(found.size()))];
  Proof left = pool[pick.left], right = pool[pick.right];
  if (!right.end.contains(lf(Label::L, pick.c))) {
    Sequent t = right.end;
    t.push_back(lf(Label::L, pick.c));
    right = weaken_to(std::move(right), t);
  }
  int p = static_cast<int>(left.end.count(lf(Label::R, pick.c)));
  int q = static_cast<int>(right.end.count(lf(Label::L, pick.c)));
  Proof out = compose_cut(std::move(left), std::move(right), pick.c, p, q);
  if (is_analytic(out)) return std::nullopt;
  return out;
}

std::string digest(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<CorpusEntry> write_corpus(const Calculus& calc, const std::string& dir, std::uint64_t first_seed,
                                      int count, const RandomOptions& opts, bool with_cut) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<CorpusEntry> out;
  for (int i = 0; i < count; ++i) {
    std::uint64_t seed = first_seed + static_cast<std::uint64_t>(i);
    std::optional<Proof> pf = with_cut ? random_cut_proof(calc, opts, seed) : random_proof(calc, opts, seed);
    if (!pf) continue;
    std::string text = serialize_proof(*pf);
    CorpusEntry e;
    e.seed = seed;
    e.file = "seed-" + std::to_string(seed) + ".proof";
    e.nodes = node_count(*pf);
    e.valid = is_valid(calc, *pf);
    e.digest = digest(text);
    std::ofstream(fs::path(dir) / e.file) << text;
    out.push_back(std::move(e));
  }
  std::ofstream manifest(fs::path(dir) / "manifest.tsv");
  manifest << "seed\tcalculus\tfile\tnodes\tvalid\tdigest\n";
  for (const auto& e : out)
    manifest << e.seed << '\t' << calc.name() << '\t' << e.file << '\t' << e.nodes << '\t'
             << (e.valid ? "valid" : "invalid") << '\t' << e.digest << '\n';
  return out;
}

}  // namespace cutrx
