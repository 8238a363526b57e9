#pragma once

#include "crossed/analyzer.hpp"

namespace crossed {

/// Combinatorial model of a Dedekind-over-DVR scenario: finitely many labeled
/// components permuted transitively by G, with residue-level data attached to
/// the stabilizer of the first label.
struct GlobalScenario {
  GroupPtr group;
  int components = 1;
  std::vector<std::vector<int>> perm;  // per element: images of labels 0..k-1
  FieldPtr field;
  // data on the stabilizer of label 0, keyed by parent element index
  std::map<int, uint32_t> local_frob;
  std::map<int, FieldElement> local_character;
  std::map<std::pair<int, int>, FieldElement> local_cocycle;
};

/// Permutation action well-formedness plus transitivity.
struct GlobalValidation {
  bool valid = true;
  std::vector<std::string> violations;
};
GlobalValidation validate_global(const GlobalScenario& gs);

/// Stabilizer of a label; all of them are conjugate (checked).
Subgroup decomposition_group(const GlobalScenario& gs, int label);

/// The local scenario at the first label. The analysis verdict of the result
/// is, by contract, the verdict for the global order; the count of maximal
/// two-sided ideals transfers unchanged.
RamifiedScenario reduce_to_local(const GlobalScenario& gs);

}  // namespace crossed
