// Built-in calculi and worked proofs, loaded from the catalog directory.

#ifndef CUTRX_CATALOG_HPP
#define CUTRX_CATALOG_HPP

#include <string>
#include <string_view>
#include <vector>

#include "cutrx/calculus.hpp"
#include "cutrx/proof.hpp"

namespace cutrx {

// $CUTRX_CATALOG if set, else the directory configured at build time.
std::string catalog_dir();

// LK, Maehara, BiInt, S5, S5multi(N) (also S5multiN), G4, BiIntS5, G3. "S5multi" alone means
// three modalities.
Calculus builtin(std::string_view name);
std::vector<std::string> builtin_names();

// LK plus negation and modalities box1..boxN, each with its own (T) and (5).
Calculus s5multi(int n);

struct ExampleProof {
  std::string name;
  std::string calculus;
};
const std::vector<ExampleProof>& example_proofs();
Proof example_proof(std::string_view name);
// Calculus the named example is written in.
Calculus example_calculus(std::string_view name);

std::string read_file(const std::string& path);

}  // namespace cutrx

#endif  // CUTRX_CATALOG_HPP
