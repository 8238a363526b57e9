#pragma once

// Polynomial arithmetic and deterministic factorization over a finite
// coefficient field. Internal support for the field layer (rational function
// canonicalization, n-th roots) and for the component-count oracle (minimal
// polynomial splitting).

#include <cstdint>
#include <map>
#include <vector>

#include "crossed/field.hpp"

namespace crossed::poly {

/// Coefficients ascending; trailing zeros trimmed; zero polynomial is empty.
using Poly = std::vector<FqElem>;

Poly trim(Poly f);
bool is_zero(const Poly& f);
int degree(const Poly& f);  // -1 for zero
const FqElem& leading(const Poly& f);
bool is_monic(const Field& k, const Poly& f);

Poly constant(const Field& k, const FqElem& c);
Poly monomial(const Field& k, const FqElem& c, uint32_t deg);

Poly add(const Field& k, const Poly& a, const Poly& b);
Poly sub(const Field& k, const Poly& a, const Poly& b);
Poly neg(const Field& k, const Poly& a);
Poly mul(const Field& k, const Poly& a, const Poly& b);
Poly scale(const Field& k, const Poly& a, const FqElem& c);
struct DivMod {
  Poly quot, rem;
};
DivMod divmod(const Field& k, const Poly& a, const Poly& b);
Poly mod(const Field& k, const Poly& a, const Poly& b);
/// Monic gcd (deterministic normalization at every step).
Poly gcd(const Field& k, Poly a, Poly b);
Poly derivative(const Field& k, const Poly& a);
Poly pow_mod(const Field& k, Poly base, uint64_t e, const Poly& m);
FqElem eval(const Field& k, const Poly& f, const FqElem& x);
/// Coefficientwise Frobenius power.
Poly frobenius(const Field& k, const Poly& f, uint32_t power);
bool equal(const Poly& a, const Poly& b);

/// Deterministic enumeration of all polynomials by index: digit i of the
/// index in base q is the coefficient of x^i.
Poly poly_at(const Field& k, uint64_t index);

/// Monic irreducibility by trial division against all lower-degree monic
/// polynomials in enumeration order.
bool is_irreducible(const Field& k, const Poly& f);

/// Monic irreducible factors with multiplicities; the unit is returned
/// separately so unit * prod(factor^mult) == input. Distinct-degree splitting
/// followed by equal-degree splitting with a deterministic sweep.
struct Factorization {
  FqElem unit;
  std::map<Poly, uint32_t> factors;
};
Factorization factor(const Field& k, const Poly& f);

}  // namespace crossed::poly
