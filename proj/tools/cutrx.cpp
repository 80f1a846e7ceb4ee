// cutrx: classify calculi, check proofs, restrict or eliminate cuts.
//
// Exit codes: 0 success, 1 negative verdict (invalid proof, wrong class, no
// proof found), 2 usage or malformed input, 3 internal assertion.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cutrx/catalog.hpp"
#include "cutrx/classifier.hpp"
#include "cutrx/engine.hpp"
#include "cutrx/search.hpp"

namespace fs = std::filesystem;
using namespace cutrx;

namespace {

struct Usage : Error {
  using Error::Error;
};

// builtin:NAME, catalog/NAME, a bare builtin name, or a .calc file.
Calculus load_calculus(const std::string& sel) {
  if (sel.starts_with("builtin:")) return builtin(sel.substr(8));
  if (fs::is_regular_file(sel)) return parse_calculus(read_file(sel));
  std::string stem = sel.starts_with("catalog/") ? sel.substr(8) : sel;
  if (fs::is_regular_file(catalog_dir() + "/" + stem + ".calc")) return builtin(stem);
  for (const auto& n : builtin_names())
    if (n == stem) return builtin(stem);
  if (stem.starts_with("S5multi")) return builtin(stem);
  throw Usage("unknown calculus '" + sel + "'");
}

// A proof file, or catalog/NAME for a catalog proof.
Proof load_proof(const std::string& sel, const Calculus& calc) {
  if (fs::is_regular_file(sel)) return parse_proof(read_file(sel), calc);
  std::string stem = sel.starts_with("catalog/") ? sel.substr(8) : sel;
  std::string path = catalog_dir() + "/" + stem + ".proof";
  if (fs::is_regular_file(path)) return parse_proof(read_file(path), calc);
  throw Usage("no proof file '" + sel + "'");
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Usage("cannot write " + out);
  f << text;
}

// Invalid inputs are a negative verdict, reported with every diagnostic.
bool report_check(const Calculus& calc, const Proof& pf, const std::string& what) {
  auto errors = check(calc, pf);
  for (const auto& e : errors) std::cerr << what << ": " << e.str() << "\n";
  return errors.empty();
}

struct Flags {
  int depth = 6;
  std::uint64_t seed = 0;
  bool trace = false;
  std::uint64_t max_leaves = std::uint64_t{1} << 16;
  std::string out;
  std::string format = "sexp";
  int count = 20;
  int size = 20;
  bool with_cut = false;
};

int cmd_classify(const std::string& sel, const Flags& f) {
  Calculus calc = load_calculus(sel);
  ClassificationReport r = classify_calculus(calc);
  emit(f.format == "table" ? format_report_table(r) : format_report_sexp(r), f.out);
  return r.calculus_class == 0 ? 1 : 0;
}

int cmd_check(const std::string& csel, const std::vector<std::string>& proofs) {
  Calculus calc = load_calculus(csel);
  int rc = 0;
  for (const auto& p : proofs) {
    Proof pf;
    try {
      pf = load_proof(p, calc);
    } catch (const ParseError& e) {
      std::cerr << p << ": " << e.what() << "\n";
      rc = 1;
      continue;
    } catch (const ProofError& e) {
      std::cerr << p << ": " << e.what() << "\n";
      rc = 1;
      continue;
    }
    if (report_check(calc, pf, p)) std::cout << p << ": ok nodes=" << node_count(pf) << " cuts=" << cuts(pf).size()
                                             << " locally-analytic=" << (is_locally_analytic(pf) ? "yes" : "no") << "\n";
    else rc = 1;
  }
  return rc;
}

int cmd_transform(const std::string& csel, const std::string& psel, const Flags& f, bool eliminating) {
  Calculus calc = load_calculus(csel);
  Proof pf = load_proof(psel, calc);
  if (!report_check(calc, pf, psel)) return 1;
  EngineOptions opts;
  opts.max_leaves = f.max_leaves;
  if (f.trace) opts.trace = &std::cerr;
  Engine engine(calc, opts);
  Proof out = eliminating ? engine.eliminate(pf) : engine.restrict(pf);
  emit(serialize_proof(out), f.out);
  return 0;
}

int cmd_prove(const std::string& csel, const std::string& goal, const Flags& f) {
  Calculus calc = load_calculus(csel);
  SearchOptions opts;
  opts.depth = f.depth;
  opts.seed = f.seed;
  if (opts.depth < 1) throw Usage("--depth must be at least 1");
  // "(seq ...)" or just the labelled formulas.
  std::string text = goal.starts_with("(seq") ? goal : "(seq " + (goal == "()" ? std::string() : goal) + ")";
  auto pf = prove(calc, parse_sequent(text, calc.language()), opts);
  if (!pf) {
    std::cerr << "no proof within depth " << f.depth << "\n";
    return 1;
  }
  emit(serialize_proof(*pf), f.out);
  return 0;
}

int cmd_demo(const std::string& name, const Flags& f) {
  Calculus calc = example_calculus(name);
  Proof pf = example_proof(name);
  ClassificationReport r = classify_calculus(calc);
  std::cout << "calculus " << calc.name() << ": class " << r.calculus_class << "\n";
  std::cout << "input " << name << ": " << node_count(pf) << " nodes, " << cuts(pf).size() << " cuts, "
            << (is_locally_analytic(pf) ? "locally analytic" : "not locally analytic") << "\n";
  if (!report_check(calc, pf, name)) return 1;
  std::ostringstream trace;
  EngineOptions opts;
  opts.max_leaves = f.max_leaves;
  opts.trace = &trace;
  Engine engine(calc, opts);
  Proof out = engine.restrict(pf);
  std::cout << trace.str();
  bool ok = is_valid(calc, out) && out.end == pf.end && is_locally_analytic(out);
  std::cout << "output: " << node_count(out) << " nodes, cuts on";
  for (const auto& c : cuts(out)) std::cout << " " << c.formula.text();
  std::cout << "\n" << (ok ? "verified" : "VERIFICATION FAILED") << "\n";
  if (!f.out.empty()) emit(serialize_proof(out), f.out);
  else std::cout << serialize_proof(out);
  return ok ? 0 : 3;
}

int cmd_corpus(const std::string& csel, const Flags& f) {
  Calculus calc = load_calculus(csel);
  if (f.out.empty()) throw Usage("corpus needs --out DIR");
  RandomOptions ro;
  ro.max_nodes = f.size;
  auto entries = write_corpus(calc, f.out, f.seed, f.count, ro, f.with_cut);
  int invalid = 0;
  for (const auto& e : entries) invalid += !e.valid;
  std::cout << entries.size() << " proofs written to " << f.out << ", " << invalid << " invalid\n";
  return invalid ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cut-restriction for propositional sequent calculi"};
  app.require_subcommand(1);
  Flags f;
  std::string calc, proof, goal, name;
  std::vector<std::string> proofs;

  auto* classify = app.add_subcommand("classify", "Classify a calculus");
  classify->add_option("calculus", calc)->required();
  classify->add_option("--format", f.format)->check(CLI::IsMember({"sexp", "table"}));
  classify->add_option("--out", f.out);

  auto* chk = app.add_subcommand("check", "Check proofs");
  chk->add_option("calculus", calc)->required();
  chk->add_option("proofs", proofs)->required();

  auto* restrict_ = app.add_subcommand("restrict", "Restrict cuts to analytic cuts");
  auto* eliminate_ = app.add_subcommand("eliminate", "Eliminate cuts (class 1 calculi)");
  for (auto* sub : {restrict_, eliminate_}) {
    sub->add_option("calculus", calc)->required();
    sub->add_option("proof", proof)->required();
    sub->add_flag("--trace", f.trace, "Engine steps to stderr");
    sub->add_option("--max-leaves", f.max_leaves, "Distribution tree threshold");
    sub->add_option("--out", f.out);
  }

  auto* prv = app.add_subcommand("prove", "Bounded cut-free proof search");
  prv->add_option("calculus", calc)->required();
  prv->add_option("sequent", goal)->required();
  prv->add_option("--depth", f.depth);
  prv->add_option("--seed", f.seed);
  prv->add_option("--out", f.out);

  auto* demo = app.add_subcommand("demo", "Run a catalog scenario end to end");
  demo->add_option("name", name)->required();
  demo->add_option("--max-leaves", f.max_leaves);
  demo->add_option("--out", f.out);

  auto* corpus = app.add_subcommand("corpus", "Generate random proofs");
  corpus->add_option("calculus", calc)->required();
  corpus->add_option("--out", f.out)->required();
  corpus->add_option("--seed", f.seed);
  corpus->add_option("--count", f.count);
  corpus->add_option("--size", f.size, "Node bound");
  corpus->add_flag("--cut", f.with_cut, "End each proof in a non-analytic multicut");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*classify) return cmd_classify(calc, f);
    if (*chk) return cmd_check(calc, proofs);
    if (*restrict_) return cmd_transform(calc, proof, f, false);
    if (*eliminate_) return cmd_transform(calc, proof, f, true);
    if (*prv) return cmd_prove(calc, goal, f);
    if (*demo) return cmd_demo(name, f);
    if (*corpus) return cmd_corpus(calc, f);
  } catch (const InvariantError& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return 3;
  } catch (const LimitError& e) {
    std::cerr << "limit: " << e.what() << "\n";
    return 3;
  } catch (const SubstitutionError& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return 3;
  } catch (const InconsistencyError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const ProofError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
