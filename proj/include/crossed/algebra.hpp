#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crossed/cocycle.hpp"

namespace crossed {

class CrossedProduct;
using AlgebraPtr = std::shared_ptr<const CrossedProduct>;

/// Finitely supported sum of coefficient * U_g over one parent algebra.
class AlgebraElement {
 public:
  AlgebraElement() = default;

  const AlgebraPtr& parent() const { return parent_; }
  bool is_zero() const { return coeff_.empty(); }
  const std::map<int, FieldElement>& coeffs() const { return coeff_; }
  std::vector<int> support() const;
  std::string str() const;

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);
  friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

 private:
  friend class CrossedProduct;
  AlgebraPtr parent_;
  std::map<int, FieldElement> coeff_;  // group index -> nonzero coefficient
};

/// The crossed product of the cocycle's group over its field: the free module
/// on symbols U_g with  s U_g t U_h = s g(t) f(g,h) U_{gh}.
class CrossedProduct : public std::enable_shared_from_this<CrossedProduct> {
 public:
  static AlgebraPtr make(TwoCocycle f);

  const TwoCocycle& cocycle() const { return f_; }
  const GroupPtr& group() const { return f_.group; }
  const FieldPtr& field() const { return f_.field(); }
  const GroupAction& action() const { return f_.action; }

  AlgebraElement zero() const;
  AlgebraElement one() const;
  AlgebraElement unit(int g) const;                         // U_g
  AlgebraElement unit_inverse(int g) const;                 // U_g^-1
  AlgebraElement scalar(const FieldElement& s) const;       // s U_1
  AlgebraElement element(std::map<int, FieldElement> coeffs) const;

  AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement sub(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement neg(const AlgebraElement& a) const;
  AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement mul_scalar(const FieldElement& s, const AlgebraElement& a) const;
  AlgebraElement pow(const AlgebraElement& a, uint64_t e) const;
  /// U_g x U_g^-1.
  AlgebraElement conjugate_by_unit(int g, const AlgebraElement& x) const;

 private:
  explicit CrossedProduct(TwoCocycle f) : f_(std::move(f)) {}
  TwoCocycle f_;
};

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

/// Exact basis of the center as a vector space over the prime field, found by
/// solving [z, U_g] = 0 for all g and [z, u U_1] = 0 for the extension
/// generator u. Reduced echelon coordinates in a deterministic order.
/// Finite base fields only.
std::vector<AlgebraElement> center_basis(const AlgebraPtr& alg);

/// Number of simple components of center/nilradical, by commutative
/// splitting: factor a minimal polynomial, cut with the coprime-factor
/// idempotent, recurse. Finite base fields only.
int count_simple_components_oracle(const AlgebraPtr& alg);

/// The idempotents (1/d) sum_l chi_j(gamma^l)^-1 U_{gamma^l} for the full
/// character family of the cyclic subgroup generated by gamma. The cocycle
/// must already be coset-invariant there (so U_{gamma^l} = U_gamma^l), and d
/// must be invertible in the field. Verified complete/orthogonal/idempotent.
std::vector<AlgebraElement> iota_idempotents(const AlgebraPtr& alg, int gamma, int d,
                                             const FieldElement& zeta_d);

struct SubalgebraResult {
  AlgebraPtr algebra;
  EmbeddedGroup embed;
};
/// The sub-crossed product graded by a subgroup.
SubalgebraResult twisted_subalgebra(const AlgebraPtr& alg, const Subgroup& H);

/// Purely-inseparable field test for the twisted group algebra of an abelian
/// p-group P over a field of characteristic p. The cocycle lives on P as its
/// own group with trivial action; cyclic_basis lists (generator, order) for a
/// direct decomposition of P.
struct InsepResult {
  bool is_field = false;
  AlgebraPtr algebra;                       // the twisted group algebra of P used
  std::vector<std::string> tower;           // description of each level
  std::optional<AlgebraElement> witness;    // verified nilpotent on failure
  std::optional<std::pair<int, int>> noncommuting;  // basis pair, if any
};
InsepResult purely_inseparable_field_test(const TwoCocycle& f_on_p,
                                          const std::vector<std::pair<int, int>>& cyclic_basis);

}  // namespace crossed
