#include "crossed/reduction.hpp"

#include <algorithm>

namespace crossed {

GlobalValidation validate_global(const GlobalScenario& gs) {
  GlobalValidation rep;
  auto fail = [&](const std::string& m) {
    rep.valid = false;
    rep.violations.push_back(m);
  };
  const int k = gs.components;
  const int n = gs.group->order();
  if (k < 1) {
    fail("component count must be positive");
    return rep;
  }
  if ((int)gs.perm.size() != n) {
    fail("permutation must be assigned to every group element");
    return rep;
  }
  for (int g = 0; g < n; ++g) {
    if ((int)gs.perm[g].size() != k) {
      fail("permutation row has the wrong length");
      return rep;
    }
    std::vector<bool> seen(k, false);
    for (int img : gs.perm[g]) {
      if (img < 0 || img >= k || seen[img]) {
        fail("permutation row is not a bijection");
        return rep;
      }
      seen[img] = true;
    }
  }
  for (int j = 0; j < k; ++j) {
    if (gs.perm[gs.group->identity()][j] != j) fail("identity must act trivially on labels");
  }
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      for (int j = 0; j < k; ++j) {
        if (gs.perm[gs.group->mul(g, h)][j] != gs.perm[g][gs.perm[h][j]]) {
          fail("label permutation is not an action");
          return rep;
        }
      }
    }
  }
  // transitivity
  std::vector<bool> orbit(k, false);
  orbit[0] = true;
  for (int g = 0; g < n; ++g) orbit[gs.perm[g][0]] = true;
  if (std::count(orbit.begin(), orbit.end(), true) != k) {
    fail("reduce each orbit separately: the label action is not transitive");
  }
  return rep;
}

Subgroup decomposition_group(const GlobalScenario& gs, int label) {
  CROSSED_CHECK(label >= 0 && label < gs.components, "label out of range");
  std::vector<int> elems;
  for (int g = 0; g < gs.group->order(); ++g) {
    if (gs.perm[g][label] == label) elems.push_back(g);
  }
  Subgroup s{gs.group, elems};
  CROSSED_CHECK(is_subgroup(s), "stabilizer must be a subgroup");
  // conjugacy across labels (transitivity)
  Subgroup s0 = label == 0 ? s : decomposition_group(gs, 0);
  if (label != 0) {
    int carrier = -1;
    for (int g = 0; g < gs.group->order(); ++g) {
      if (gs.perm[g][0] == label) {
        carrier = g;
        break;
      }
    }
    CROSSED_CHECK(carrier >= 0, "no group element carries label 0 to the target");
    CROSSED_CHECK(conjugate_subgroup(s0, carrier).elems == s.elems,
                  "stabilizers are not conjugate");
  }
  return s;
}

RamifiedScenario reduce_to_local(const GlobalScenario& gs) {
  auto v = validate_global(gs);
  if (!v.valid) {
    std::string msg = "invalid global scenario:";
    for (const auto& m : v.violations) msg += "\n  - " + m;
    throw invalid_input(msg);
  }
  Subgroup stab = decomposition_group(gs, 0);
  // the attached data must cover the stabilizer exactly
  for (int g : stab.elems) {
    if (!gs.local_frob.count(g)) {
      throw invalid_input("local action missing on stabilizer element " + gs.group->label(g));
    }
  }
  for (const auto& [g, k] : gs.local_frob) {
    if (!stab.contains(g)) {
      throw invalid_input("local action defined outside the stabilizer at " +
                          gs.group->label(g));
    }
    (void)k;
  }
  EmbeddedGroup e = as_group(stab);
  const int m = stab.order();
  std::vector<uint32_t> powers;
  for (int i = 0; i < m; ++i) powers.push_back(gs.local_frob.at(e.to_parent[i]));
  GroupAction act = GroupAction::from_powers(e.group, gs.field, std::move(powers));

  std::vector<std::vector<FieldElement>> table(m, std::vector<FieldElement>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      auto it = gs.local_cocycle.find({e.to_parent[i], e.to_parent[j]});
      if (it == gs.local_cocycle.end()) {
        throw invalid_input("local cocycle table incomplete");
      }
      table[i][j] = it->second;
    }
  }
  for (const auto& [key, val] : gs.local_cocycle) {
    if (!stab.contains(key.first) || !stab.contains(key.second)) {
      throw invalid_input("local cocycle defined outside the stabilizer");
    }
    (void)val;
  }
  TwoCocycle coc = TwoCocycle::from_table(e.group, act, std::move(table));

  std::map<int, FieldElement> xbar;
  for (const auto& [g, val] : gs.local_character) {
    if (!stab.contains(g)) {
      throw invalid_input("local character defined outside the stabilizer");
    }
    xbar[e.from_parent[g]] = val;
  }
  return RamifiedScenario{gs.field, e.group, act, std::move(xbar), std::move(coc)};
}

}  // namespace crossed
