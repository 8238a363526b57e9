#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crossed/algebra.hpp"

namespace crossed {

/// Residue-level data of a crossed product order over a discrete valuation
/// ring: the residue field, the acting group, the ramification character on
/// the inertia subgroup, and the reduced cocycle.
struct RamifiedScenario {
  FieldPtr field;
  GroupPtr group;
  GroupAction action;
  std::map<int, FieldElement> character;  // inertia element -> unit value
  TwoCocycle cocycle;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};
ValidationReport validate_scenario(const RamifiedScenario& s);

/// Inertia structure: P = ker(character), e0 = |image|, sigma0 a deterministic
/// preimage of the least generator of the image inside the prime-to-p part.
struct InertiaSplit {
  Subgroup inertia;
  Subgroup P;
  Subgroup C;  // the cyclic complement <sigma0>
  int sigma0 = 0;
  uint64_t e0 = 1;
  bool tame = false;
};
InertiaSplit inertia_split(const RamifiedScenario& s);

struct HeredityResult {
  bool hereditary = false;
  bool tame = false;
  std::string evidence;
  std::vector<std::string> tower;
  std::optional<std::string> witness;  // rendered nilpotent / obstruction
};
HeredityResult heredity_verdict(const RamifiedScenario& s, const InertiaSplit& split);

struct GammaData {
  FieldElement alpha0;
  uint64_t d = 1;
  uint64_t c = 1;
  Subgroup gamma;  // <sigma0^c>, order d
};
GammaData gamma_f(const RamifiedScenario& s, const InertiaSplit& split);

struct ConductorData {
  Subgroup conductor;             // H_f
  uint64_t component_count = 1;   // d / |im pi|
  uint64_t pi_image_order = 1;
  std::vector<Character> pi_image;       // the image subgroup, deterministic order
  FieldElement zeta_d;
  std::vector<std::string> idempotent_strs;
  std::vector<std::vector<int>> orbits;  // idempotent indices per orbit
};

struct AnalyzeOptions {
  std::optional<std::string> sigma0_label;   // alternative generator choice
  std::optional<FieldElement> zeta_override; // alternative root choice for the idempotents
  bool with_inflation_oracle = false;        // cross-check the conductor definition
  uint64_t oracle_budget = 10000000;         // candidate cochains, fail-closed
};

struct AnalysisReport {
  std::string field_name;
  bool valid = true;

  InertiaSplit split;
  HeredityResult heredity;
  std::optional<GammaData> gamma;
  std::optional<ConductorData> conductor;

  std::optional<int> oracle_component_count;      // finite fields, hereditary
  std::optional<int> oracle_conductor_order;      // with the inflation oracle
  bool oracle_agrees = true;

  bool maximal = false;
  std::optional<uint64_t> maximal_order_count;    // |H_f| when hereditary
  std::vector<std::string> notes;
};

/// Full pipeline: validation, inertia split, heredity, conductor, counts.
/// Hereditary finite-field scenarios are cross-checked against the
/// center-splitting oracle; any mismatch aborts with a diagnostic.
AnalysisReport analyze(const RamifiedScenario& s, const AnalyzeOptions& opts = {});

/// The conductor found directly from its definition: the unique maximal
/// subgroup H of the inertia, normal in G, with the cocycle class inflated
/// from the quotient. Exhaustive; budget-limited.
Subgroup conductor_by_inflation_search(const RamifiedScenario& s, uint64_t budget);

}  // namespace crossed
