#include "cutrx/catalog.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef CUTRX_CATALOG_DIR
#define CUTRX_CATALOG_DIR "catalog"
#endif

namespace cutrx {

std::string catalog_dir() {
  if (const char* env = std::getenv("CUTRX_CATALOG"); env && *env) return env;
  return CUTRX_CATALOG_DIR;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

const std::vector<std::string> kFiles = {"LK", "Maehara", "BiInt", "S5", "G4", "BiIntS5", "G3"};

RuleSchema one_slot_rule(std::string id, Side side, std::string conn, Label label,
                         ContextRestriction context) {
  RuleSchema r;
  r.id = std::move(id);
  r.side = side;
  r.connective = std::move(conn);
  r.templates = {PremiseTemplate{{{Slot{label, 0}}}}};
  r.context = std::move(context);
  return r;
}

}  // namespace

Calculus s5multi(int n) {
  if (n < 1) throw CalculusError("S5multi needs at least one modality");
  Calculus lk = builtin("LK");
  Language lang = lk.language();
  std::vector<RuleSchema> rules = lk.rules();
  lang.add(Connective{"neg", 1});
  rules.push_back(one_slot_rule("neg-l", Side::Left, "neg", Label::R, ContextRestriction::unrestricted()));
  rules.push_back(one_slot_rule("neg-r", Side::Right, "neg", Label::L, ContextRestriction::unrestricted()));
  for (int i = 1; i <= n; ++i) {
    std::string box = "box" + std::to_string(i);
    lang.add(Connective{box, 1});
    rules.push_back(one_slot_rule("T" + std::to_string(i), Side::Left, box, Label::L,
                                  ContextRestriction::unrestricted()));
    rules.push_back(one_slot_rule("5-" + std::to_string(i), Side::Right, box, Label::R,
                                  ContextRestriction::of({ContextPattern{Label::L, box},
                                                          ContextPattern{Label::R, box}})));
  }
  // The name must stay a single atom in the text formats.
  return Calculus("S5multi" + std::to_string(n), std::move(lang), Consistency::Assumed,
                  std::move(rules));
}

Calculus builtin(std::string_view name) {
  if (name == "S5multi") return s5multi(3);
  if (name.starts_with("S5multi")) {
    std::string_view rest = name.substr(7);
    if (rest.starts_with("(") && rest.ends_with(")")) rest = rest.substr(1, rest.size() - 2);
    std::string digits(rest);
    if (digits.empty() || digits.size() > 3 ||
        digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error("bad modality count in '" + std::string(name) + "'");
    return s5multi(std::stoi(digits));
  }
  for (const auto& f : kFiles)
    if (f == name) return parse_calculus(read_file(catalog_dir() + "/" + f + ".calc"));
  throw Error("unknown calculus '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() {
  return {"LK", "Maehara", "BiInt", "S5", "S5multi(3)", "G4", "BiIntS5", "G3"};
}

const std::vector<ExampleProof>& example_proofs() {
  static const std::vector<ExampleProof> kExamples = {
      {"s5-analytic", "S5"}, {"s5-nonanalytic", "S5"}, {"biint-fig2", "BiInt"}};
  return kExamples;
}

Calculus example_calculus(std::string_view name) {
  for (const auto& e : example_proofs())
    if (e.name == name) return builtin(e.calculus);
  throw Error("unknown example proof '" + std::string(name) + "'");
}

Proof example_proof(std::string_view name) {
  Calculus calc = example_calculus(name);
  return parse_proof(read_file(catalog_dir() + "/" + std::string(name) + ".proof"), calc);
}

}  // namespace cutrx
