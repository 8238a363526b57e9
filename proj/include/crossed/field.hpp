#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crossed/errors.hpp"

namespace crossed {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Element of a finite field: coefficients over F_p, ascending degree,
/// trailing zeros trimmed. The zero element is the empty vector.
using FqElem = std::vector<uint32_t>;

/// Element of F_q(t): numerator/denominator polynomials over the base finite
/// field, coprime, denominator monic and nonzero. Zero is num = {} / den = {1}.
struct RatElem {
  std::vector<FqElem> num;
  std::vector<FqElem> den;
  bool operator==(const RatElem&) const = default;
};

class FieldElement {
 public:
  FieldElement() = default;

  const FieldPtr& field() const { return field_; }
  bool valid() const { return field_ != nullptr; }
  bool is_zero() const;
  bool is_one() const;

  const FqElem& fq() const;    // finite fields only
  const RatElem& rat() const;  // rational function fields only

  std::string str() const;  // canonical human-readable form

  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

 private:
  friend class Field;
  FieldPtr field_;
  std::variant<FqElem, RatElem> v_;
};

/// Supported field automorphisms: x -> x^(p^k) on a finite field, or the
/// coefficientwise power on F_q(t) (fixing the indeterminate). The power is
/// normalized modulo the order of the automorphism group, which is the degree
/// of the finite part over F_p.
struct AutomorphismSpec {
  FieldPtr field;
  uint32_t frob_power = 0;

  static AutomorphismSpec identity(FieldPtr f);
  static AutomorphismSpec frobenius(FieldPtr f, uint32_t k);  // x -> x^(p^k)

  bool is_identity() const { return frob_power == 0; }
  uint32_t group_order() const;  // order of the full automorphism group used
  AutomorphismSpec compose(const AutomorphismSpec& inner) const;
  AutomorphismSpec inverse() const;
  bool operator==(const AutomorphismSpec& o) const;
};

/// A field descriptor plus precomputed tables. Immutable after construction;
/// every operation is pure, so concurrent use needs no synchronization.
class Field : public std::enable_shared_from_this<Field> {
 public:
  enum class Kind { prime, extension, ratfunc };

  /// F_p, p prime.
  static FieldPtr make_prime(uint32_t p);
  /// F_p[u]/(modulus); modulus monic irreducible of degree >= 2, checked by
  /// trial factorization. Size capped at 2^16 so discrete-log tables fit.
  static FieldPtr make_extension(uint32_t p, FqElem modulus);
  /// F_q(var) over a finite base field.
  static FieldPtr make_ratfunc(FieldPtr base, std::string var);

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ != Kind::ratfunc; }
  uint32_t characteristic() const { return p_; }
  uint64_t size() const { return q_; }  // 0 for ratfunc
  uint32_t degree() const { return deg_; }  // [F_q : F_p] of the finite part
  const FqElem& modulus() const { return modulus_; }
  const FieldPtr& base() const { return base_; }  // ratfunc only
  const std::string& variable() const { return var_; }

  /// Structural descriptor equality; elements of structurally equal fields
  /// interoperate even when the Field objects are distinct.
  bool same(const Field& o) const;
  std::string name() const;  // e.g. "F_5", "F_9=F_3[u]/(u^2+1)", "F_4(t)"

  // --- element construction ---
  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_integer(int64_t n) const;
  FieldElement from_fq(FqElem coeffs) const;  // finite kinds; validates range
  FieldElement from_fraction(std::vector<FqElem> num, std::vector<FqElem> den) const;
  FieldElement constant(const FieldElement& base_element) const;  // embed into ratfunc
  /// For ratfunc: the indeterminate t.
  FieldElement indeterminate() const;

  // --- finite enumeration (canonical total order = index order) ---
  FieldElement element_at(uint64_t index) const;
  uint64_t index_of(const FieldElement& x) const;

  // --- arithmetic (free operators below delegate here) ---
  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement inv(const FieldElement& a) const;

  // raw finite-field coefficient arithmetic (used by the polynomial layer)
  FqElem fq_add(const FqElem& a, const FqElem& b) const;
  FqElem fq_sub(const FqElem& a, const FqElem& b) const;
  FqElem fq_neg(const FqElem& a) const;
  FqElem fq_mul(const FqElem& a, const FqElem& b) const;
  FqElem fq_inv(const FqElem& a) const;
  FqElem fq_pow(FqElem a, uint64_t e) const;
  uint64_t fq_index(const FqElem& a) const;
  FqElem fq_at(uint64_t index) const;
  /// discrete log with respect to the canonical generator; zero input throws
  uint64_t fq_log(const FqElem& a) const;
  FqElem fq_exp(uint64_t k) const;  // generator^k
  FqElem fq_frobenius(const FqElem& a, uint32_t k) const;  // a^(p^k)

 private:
  Field() = default;
  void build_tables();
  uint64_t fq_index_nocheck(const FqElem& a) const;

  Kind kind_ = Kind::prime;
  uint32_t p_ = 0;
  uint32_t deg_ = 1;
  uint64_t q_ = 0;
  FqElem modulus_;
  FieldPtr base_;
  std::string var_;
  std::vector<uint32_t> exp_table_;  // exp_table_[k] = index of g^k, k < q-1
  std::vector<uint64_t> log_table_;  // log_table_[index] = k; index 0 unused
};

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement operator/(const FieldElement& a, const FieldElement& b);
FieldElement inverse(const FieldElement& a);
FieldElement pow(const FieldElement& a, int64_t e);

/// Documented total order on canonical representations. Finite fields compare
/// by element index (sum c_i p^i). Rational functions compare by
/// (deg den, den coefficient indices from high degree down, deg num, num
/// coefficient indices from high degree down).
bool canonical_less(const FieldElement& a, const FieldElement& b);

/// Multiplicative order; 0 means infinite (non-constant rational function).
uint64_t multiplicative_order(const FieldElement& x);

/// Some y with y^n = x, the least such under canonical_less, or nullopt.
/// Zero input is rejected: only unit roots are meaningful here.
std::optional<FieldElement> nth_root(const FieldElement& x, uint64_t n);

/// The least element of exact multiplicative order n. Requires gcd(n, p) = 1;
/// throws invalid_input when the field has no such root (n does not divide
/// q - 1 for the finite part).
FieldElement primitive_root_of_unity(const FieldPtr& field, uint64_t n);

struct PthPowerResult {
  bool is_power = false;
  std::optional<FieldElement> root;  // witness y with y^p = x when is_power
};
/// Whether x lies in the image of Frobenius. Total: is_pth_power(0) = {true, 0}.
PthPowerResult is_pth_power(const FieldElement& x);

FieldElement apply_automorphism(const AutomorphismSpec& aut, const FieldElement& x);

}  // namespace crossed
