// Bounded backward proof search and random proof generation.

#ifndef CUTRX_SEARCH_HPP
#define CUTRX_SEARCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cutrx/calculus.hpp"
#include "cutrx/proof.hpp"

namespace cutrx {

struct SearchOptions {
  int depth = 6;
  // Cuts on subformulas of the goal.
  bool analytic_cuts = false;
  // Cuts on formulas of `cut_pool`.
  bool arbitrary_cuts = false;
  std::vector<Formula> cut_pool;
  std::uint64_t seed = 0;
};

std::optional<Proof> prove(const Calculus& calc, const Sequent& goal, const SearchOptions& opts = {});

struct RandomOptions {
  int max_nodes = 20;
  int variables = 3;
  int max_sequent = 6;
  int max_formula = 9;
};

// Forward generation from initial sequents. Deterministic per seed.
Proof random_proof(const Calculus& calc, const RandomOptions& opts, std::uint64_t seed);

// A proof ending in a non-analytic multicut whose premises are cut-free
// random proofs, or nullopt if none was found for this seed.
std::optional<Proof> random_cut_proof(const Calculus& calc, const RandomOptions& opts, std::uint64_t seed);

// Multicut of the last p occurrences of r:C in p1 with the last q of l:C in p2.
Proof compose_cut(Proof p1, Proof p2, const Formula& c, int p, int q);

struct CorpusEntry {
  std::uint64_t seed = 0;
  std::string file;
  int nodes = 0;
  bool valid = false;
  // FNV-1a of the serialized proof, hex.
  std::string digest;
};

// Writes one proof file per seed in [first_seed, first_seed + count) that
// yields a proof, plus `manifest.tsv`. With `with_cut`, proofs end in a
// non-analytic multicut.
std::vector<CorpusEntry> write_corpus(const Calculus& calc, const std::string& dir, std::uint64_t first_seed,
                                      int count, const RandomOptions& opts, bool with_cut);

std::string digest(std::string_view text);

}  // namespace cutrx

#endif  // CUTRX_SEARCH_HPP
