#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crossed/field.hpp"

namespace crossed {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Finite group by explicit multiplication table. Identity law, associativity
/// and unique inverses are checked exhaustively at construction (order <= 64).
class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  /// Cyclic factor decomposition carried by the named constructions; needed by
  /// the bimultiplicative cocycle family.
  struct Decomposition {
    std::vector<int> generators;
    std::vector<int> orders;
  };

  static GroupPtr from_table(std::vector<std::vector<int>> table,
                             std::vector<std::string> labels);
  static GroupPtr cyclic(int n);
  static GroupPtr klein_four();
  static GroupPtr symmetric3();
  static GroupPtr product_of_cyclics(const std::vector<int>& orders);

  int order() const { return n_; }
  int identity() const { return id_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  int conjugate(int g, int a) const { return mul(mul(g, a), inv(g)); }  // g a g^-1
  int power(int a, int64_t e) const;
  int element_order(int a) const;
  bool is_abelian() const;
  const std::string& label(int a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> index_of_label(const std::string& s) const;
  const std::optional<Decomposition>& decomposition() const { return decomp_; }

 private:
  FiniteGroup() = default;
  int n_ = 0;
  int id_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  std::vector<std::string> labels_;
  std::optional<Decomposition> decomp_;
};

/// Sorted element-index set, closed under the parent's operations.
struct Subgroup {
  GroupPtr parent;
  std::vector<int> elems;  // sorted, unique

  int order() const { return (int)elems.size(); }
  bool contains(int g) const;
  bool operator==(const Subgroup& o) const;
};

Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup full_subgroup(const GroupPtr& g);
Subgroup subgroup_generated(const GroupPtr& g, const std::vector<int>& gens);
bool is_subgroup(const Subgroup& h);
bool is_normal(const Subgroup& h);
bool is_abelian(const Subgroup& h);
Subgroup conjugate_subgroup(const Subgroup& h, int g);

/// Materializes a subgroup as its own group; to_parent maps new indices back.
struct EmbeddedGroup {
  GroupPtr group;
  std::vector<int> to_parent;
  std::vector<int> from_parent;  // parent index -> local index, -1 outside
};
EmbeddedGroup as_group(const Subgroup& h);

/// Quotient by a normal subgroup. Cosets are ordered by least element index;
/// labels come from the least representative.
struct Quotient {
  GroupPtr group;
  std::vector<int> projection;  // parent index -> coset index
  std::vector<int> rep;         // coset index -> least parent representative
};
Quotient quotient_group(const GroupPtr& g, const Subgroup& normal);

/// Elements of p-power order, closed under multiplication. For p = 0 (the
/// characteristic-zero sentinel) the trivial subgroup is returned.
Subgroup sylow_subgroup(const Subgroup& within, uint32_t p);
Subgroup commutator_subgroup(const GroupPtr& g);
/// Elements of the abelian subgroup with order prime to p.
Subgroup p_prime_torsion(const Subgroup& abelian, uint32_t p);
/// whole = P x C: trivial intersection, joint generation, elementwise
/// commuting, both normal in whole.
bool internal_direct_product_check(const Subgroup& whole, const Subgroup& P, const Subgroup& C);
/// All subgroups, for brute-force searches; guarded to order <= 16.
std::vector<Subgroup> enumerate_all_subgroups(const GroupPtr& g);
/// Cyclic decomposition of an abelian subgroup: list of (generator, order)
/// with the subgroup the internal direct product of the cyclic factors.
std::vector<std::pair<int, int>> abelian_cyclic_basis(const Subgroup& a);

/// Action of a group on a field through Frobenius powers.
struct GroupAction {
  GroupPtr group;
  FieldPtr field;
  std::vector<uint32_t> frob;  // per element, normalized mod automorphism order

  static GroupAction trivial(GroupPtr g, FieldPtr f);
  static GroupAction from_powers(GroupPtr g, FieldPtr f, std::vector<uint32_t> powers);
  /// Closure from generator assignments; conflicting assignments are rejected.
  static GroupAction from_generator_powers(GroupPtr g, FieldPtr f,
                                           const std::vector<std::pair<int, uint32_t>>& gens);

  AutomorphismSpec spec(int g) const;
  FieldElement act(int g, const FieldElement& x) const;
  bool is_trivial() const;
  GroupAction restricted(const EmbeddedGroup& sub) const;
};

Subgroup kernel_of_action(const GroupAction& a);

}  // namespace crossed
