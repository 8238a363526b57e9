#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crossed/group.hpp"

namespace crossed {

/// Unit-valued 2-cocycle table f : G x G -> K*, satisfying
///   f(g,h) f(gh,k) = g(f(h,k)) f(g,hk)  and  f(1,g) = f(g,1) = 1.
struct TwoCocycle {
  GroupPtr group;
  GroupAction action;
  std::vector<std::vector<FieldElement>> val;  // [g][h]

  const FieldPtr& field() const { return action.field; }
  const FieldElement& operator()(int g, int h) const { return val[g][h]; }

  static TwoCocycle trivial(GroupPtr g, GroupAction action);
  /// Validated table constructor.
  static TwoCocycle from_table(GroupPtr g, GroupAction action,
                               std::vector<std::vector<FieldElement>> table);
  /// On a cyclic group with canonical generator a (least index of full order):
  /// f(a^i, a^j) = alpha^floor((i+j)/n). alpha must be fixed by the action.
  static TwoCocycle cyclic_power(GroupPtr g, GroupAction action, const FieldElement& alpha);
  /// Product of cyclic_power cocycles pulled back along the factor projections
  /// of a product-of-cyclics group.
  static TwoCocycle cyclic_product(GroupPtr g, GroupAction action,
                                   const std::vector<FieldElement>& alphas);
  /// f(x, y) = zeta^(sum_ij E[i][j] x_i y_j) on a product-of-cyclics group;
  /// requires ord(zeta^E[i][j]) | gcd(n_i, n_j).
  static TwoCocycle bimultiplicative(GroupPtr g, GroupAction action, const FieldElement& zeta,
                                     const std::vector<std::vector<uint32_t>>& exponents);

  /// Coefficient of U_g^k relative to U_{g^k}: the product f(g, g) f(g^2, g)
  /// ... f(g^(k-1), g).
  FieldElement unit_power_coeff(int g, uint32_t k) const;
  /// Pointwise product (same group, same action).
  TwoCocycle product(const TwoCocycle& other) const;
};

struct CocycleValidation {
  bool ok = true;
  std::string message;
  std::optional<std::array<int, 3>> witness;  // first violating triple
};
CocycleValidation validate_cocycle(const TwoCocycle& f);

/// c : G -> K*, c(1) = 1.
struct OneCochain {
  GroupPtr group;
  std::vector<FieldElement> c;

  static OneCochain constant_one(GroupPtr g, const FieldPtr& f);
};

/// f * dc with dc(x, y) = c(x) x(c(y)) c(xy)^-1.
TwoCocycle apply_coboundary(const TwoCocycle& f, const OneCochain& c);

/// Right-coset invariance in the second argument: f(g1, g2 a) = f(g1, g2)
/// for all a in A. (Implies f is trivial on A x A.)
bool is_coset_invariant(const TwoCocycle& f, const Subgroup& A);
bool is_coset_invariant_both(const TwoCocycle& f, const Subgroup& A);

/// Rewrites f to a cohomologous cocycle that is coset-invariant for the
/// cyclic normal subgroup A (which must act trivially). Requires the
/// restriction to A to be cohomologically trivial, certified by an |A|-th
/// root of the basis-unit power U_a^|A|.
struct NormalizeResult {
  TwoCocycle cocycle;
  OneCochain cochain;  // relating cochain: result = input * d(cochain)
  int generator;       // the chosen generator of A
  FieldElement root;   // the certifying root
};
NormalizeResult normalize_on_cyclic_subgroup(const TwoCocycle& f, const Subgroup& A);

struct RestrictedCocycle {
  TwoCocycle cocycle;   // on the subgroup materialized as its own group
  EmbeddedGroup embed;
};
RestrictedCocycle restrict_cocycle(const TwoCocycle& f, const Subgroup& H);

/// Pullback along the quotient projection; the result is coset-invariant in
/// both arguments for the kernel.
TwoCocycle inflate_cocycle(const TwoCocycle& f_quot, const Quotient& q, GroupAction action_on_g);

/// Character of an abelian subgroup with values in field units.
struct Character {
  GroupPtr parent;
  std::vector<int> domain;           // subgroup elements, sorted
  std::vector<FieldElement> values;  // aligned with domain

  const FieldElement& eval(int parent_element) const;
  bool is_trivial() const;
  Character times(const Character& o) const;
  Character inverse() const;
  bool operator==(const Character& o) const;
};

/// All |A| characters of an abelian subgroup, deterministically ordered by
/// exponent tuples over the cyclic basis. Requires the needed roots of unity.
std::vector<Character> character_group(const Subgroup& A, const FieldPtr& field);

/// Diagonal action: <g(chi), a> = g( chi(g^-1 a g) ).
Character twist_character(const Character& chi, int g, const GroupAction& action);

/// The map sending a coset of A to the character a -> f(a, g). Requires f
/// coset-invariant for A; postconditions (values are characters, independence
/// of representative, the 1-cocycle identity) are verified on construction.
struct PiMap {
  Subgroup A;
  Quotient cosets;
  std::vector<Character> chi;  // per coset index

  const Character& at_coset(int coset) const { return chi[coset]; }
  const Character& at(int g) const { return chi[cosets.projection[g]]; }
};
PiMap pi_map(const TwoCocycle& f, const Subgroup& A);

/// Exhaustive searches over 1-cochains; the candidate count |K*|^(|G|-1) must
/// stay within the budget or a budget_error is thrown (fail-closed).
std::optional<OneCochain> brute_force_is_coboundary(const TwoCocycle& f, uint64_t budget);
std::optional<OneCochain> brute_force_inflation_witness(const TwoCocycle& f, const Subgroup& A,
                                                        uint64_t budget);

}  // namespace crossed
