#include "crossed/polyfactor.hpp"

#include <algorithm>

namespace crossed::poly {

namespace {
bool fq_is_zero(const FqElem& a) { return a.empty(); }
}  // namespace

Poly trim(Poly f) {
  while (!f.empty() && fq_is_zero(f.back())) f.pop_back();
  return f;
}

bool is_zero(const Poly& f) { return f.empty(); }

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

const FqElem& leading(const Poly& f) {
  CROSSED_CHECK(!f.empty(), "leading coefficient of zero polynomial");
  return f.back();
}

bool is_monic(const Field& k, const Poly& f) {
  return !f.empty() && f.back() == k.one().fq();
}

Poly constant(const Field& k, const FqElem& c) {
  (void)k;
  if (fq_is_zero(c)) return {};
  return {c};
}

Poly monomial(const Field& k, const FqElem& c, uint32_t deg) {
  (void)k;
  if (fq_is_zero(c)) return {};
  Poly f(deg + 1);
  f[deg] = c;
  return f;
}

Poly add(const Field& k, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    FqElem x = i < a.size() ? a[i] : FqElem{};
    FqElem y = i < b.size() ? b[i] : FqElem{};
    r[i] = k.fq_add(x, y);
  }
  return trim(std::move(r));
}

Poly neg(const Field& k, const Poly& a) {
  Poly r = a;
  for (auto& c : r) c = k.fq_neg(c);
  return r;
}

Poly sub(const Field& k, const Poly& a, const Poly& b) { return add(k, a, neg(k, b)); }

Poly mul(const Field& k, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (fq_is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (fq_is_zero(b[j])) continue;
      r[i + j] = k.fq_add(r[i + j], k.fq_mul(a[i], b[j]));
    }
  }
  return trim(std::move(r));
}

Poly scale(const Field& k, const Poly& a, const FqElem& c) {
  if (fq_is_zero(c)) return {};
  Poly r = a;
  for (auto& x : r) x = k.fq_mul(x, c);
  return trim(std::move(r));
}

DivMod divmod(const Field& k, const Poly& a, const Poly& b) {
  CROSSED_CHECK(!b.empty(), "polynomial division by zero");
  Poly rem = a;
  Poly quot;
  const FqElem lead_inv = k.fq_inv(b.back());
  const int db = degree(b);
  while (degree(rem) >= db) {
    const int shift = degree(rem) - db;
    FqElem c = k.fq_mul(rem.back(), lead_inv);
    if (quot.size() < static_cast<size_t>(shift + 1)) quot.resize(shift + 1);
    quot[shift] = k.fq_add(quot[shift], c);
    // rem -= c * x^shift * b
    for (int i = 0; i <= db; ++i) {
      rem[i + shift] = k.fq_sub(rem[i + shift], k.fq_mul(c, b[i]));
    }
    rem = trim(std::move(rem));
  }
  return {trim(std::move(quot)), std::move(rem)};
}

Poly mod(const Field& k, const Poly& a, const Poly& b) { return divmod(k, a, b).rem; }

Poly gcd(const Field& k, Poly a, Poly b) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    Poly r = mod(k, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  return scale(k, a, k.fq_inv(a.back()));  // monic
}

Poly derivative(const Field& k, const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) {
    uint64_t m = i % k.characteristic();
    FqElem c{};
    for (uint64_t j = 0; j < m; ++j) c = k.fq_add(c, a[i]);
    r[i - 1] = c;
  }
  return trim(std::move(r));
}

Poly pow_mod(const Field& k, Poly base, uint64_t e, const Poly& m) {
  Poly r = constant(k, k.one().fq());
  base = mod(k, base, m);
  while (e > 0) {
    if (e & 1) r = mod(k, mul(k, r, base), m);
    base = mod(k, mul(k, base, base), m);
    e >>= 1;
  }
  return r;
}

FqElem eval(const Field& k, const Poly& f, const FqElem& x) {
  FqElem acc{};
  for (size_t i = f.size(); i-- > 0;) {
    acc = k.fq_add(k.fq_mul(acc, x), f[i]);
  }
  return acc;
}

Poly frobenius(const Field& k, const Poly& f, uint32_t power) {
  Poly r = f;
  for (auto& c : r) c = k.fq_frobenius(c, power);
  return r;
}

bool equal(const Poly& a, const Poly& b) { return a == b; }

Poly poly_at(const Field& k, uint64_t index) {
  Poly f;
  const uint64_t q = k.size();
  while (index > 0) {
    f.push_back(k.fq_at(index % q));
    index /= q;
  }
  return trim(std::move(f));
}

bool is_irreducible(const Field& k, const Poly& f) {
  CROSSED_CHECK(is_monic(k, f), "irreducibility test expects a monic polynomial");
  const int d = degree(f);
  if (d <= 0) return false;
  if (d == 1) return true;
  const uint64_t q = k.size();
  for (int dd = 1; 2 * dd <= d; ++dd) {
    // monic divisors of degree dd: offset enumeration below the leading term
    uint64_t count = 1;
    for (int i = 0; i < dd; ++i) count *= q;
    for (uint64_t idx = 0; idx < count; ++idx) {
      Poly g = poly_at(k, idx);
      g.resize(dd + 1);
      g[dd] = k.one().fq();
      if (mod(k, f, g).empty()) return false;
    }
  }
  return true;
}

namespace {

// Splits a squarefree product of degree-d irreducibles. Deterministic sweep
// over candidate polynomials in enumeration order.
void equal_degree_split(const Field& k, const Poly& f, int d, std::vector<Poly>& out) {
  if (degree(f) == d) {
    out.push_back(f);
    return;
  }
  const uint64_t q = k.size();
  const uint32_t p = k.characteristic();
  // q^d as exponent source; fits for the desk-scale ranges used here
  uint64_t qd = 1;
  for (int i = 0; i < d; ++i) {
    CROSSED_CHECK(qd < (uint64_t(1) << 48), "equal-degree split out of desk-scale range");
    qd *= q;
  }
  // sweeping every residue mod f is guaranteed to find a splitter
  uint64_t bound = 1;
  for (int i = 0; i <= degree(f) && bound < (uint64_t(1) << 48); ++i) bound *= q;
  for (uint64_t widx = q;; ++widx) {  // start past constants
    CROSSED_CHECK(widx < bound + q, "equal-degree split sweep exhausted");
    Poly w = mod(k, poly_at(k, widx), f);
    if (degree(w) < 1) continue;
    Poly s;
    if (p == 2) {
      // trace map sum_{i < log2(q^d)} w^(2^i)
      uint32_t bits = k.degree() * static_cast<uint32_t>(d);
      Poly acc = w;
      s = w;
      for (uint32_t i = 1; i < bits; ++i) {
        acc = mod(k, mul(k, acc, acc), f);
        s = add(k, s, acc);
      }
    } else {
      s = sub(k, pow_mod(k, w, (qd - 1) / 2, f), constant(k, k.one().fq()));
    }
    Poly g = gcd(k, f, s);
    if (!g.empty() && degree(g) > 0 && degree(g) < degree(f)) {
      equal_degree_split(k, g, d, out);
      equal_degree_split(k, divmod(k, f, g).quot, d, out);
      return;
    }
  }
}

// Distinct-degree then equal-degree factorization of a monic squarefree input.
void factor_squarefree(const Field& k, Poly f, std::vector<Poly>& out) {
  const uint64_t q = k.size();
  Poly x = monomial(k, k.one().fq(), 1);
  Poly h = x;
  int d = 0;
  while (degree(f) > 0) {
    ++d;
    if (2 * d > degree(f)) {
      out.push_back(f);  // remaining factor is irreducible
      return;
    }
    h = pow_mod(k, h, q, f);
    Poly g = gcd(k, f, sub(k, h, x));
    if (degree(g) > 0) {
      equal_degree_split(k, g, d, out);
      f = divmod(k, f, g).quot;
      h = mod(k, h, f);
    }
  }
}

}  // namespace

Factorization factor(const Field& k, const Poly& f_in) {
  CROSSED_CHECK(!f_in.empty(), "cannot factor the zero polynomial");
  Factorization result;
  result.unit = f_in.back();
  Poly f = scale(k, f_in, k.fq_inv(f_in.back()));
  const uint32_t p = k.characteristic();

  // squarefree decomposition, with the char-p perfect-power descent
  std::map<Poly, uint32_t> squarefree_parts;  // part -> multiplicity
  std::vector<std::pair<Poly, uint32_t>> work{{f, 1}};
  while (!work.empty()) {
    auto [g, mult] = work.back();
    work.pop_back();
    if (degree(g) <= 0) continue;
    Poly gp = derivative(k, g);
    if (is_zero(gp)) {
      // g(x) = h(x^p) with h coefficients the p-th roots
      Poly h;
      for (size_t i = 0; i < g.size(); i += p) {
        FqElem c = g[i];
        // p-th root in a perfect finite field: c^(q/p) iterated once
        uint64_t e = 1;
        for (uint32_t j = 1; j < k.degree(); ++j) e *= p;  // p^(deg-1)
        h.push_back(k.fq_pow(c, e));
      }
      work.push_back({trim(std::move(h)), mult * p});
      continue;
    }
    Poly c = gcd(k, g, gp);
    Poly w = divmod(k, g, c).quot;  // product of squarefree factors
    uint32_t i = 1;
    while (degree(w) > 0) {
      Poly y = gcd(k, w, c);
      Poly part = divmod(k, w, y).quot;
      if (degree(part) > 0) squarefree_parts[part] += mult * i;
      w = y;
      c = divmod(k, c, y).quot;
      ++i;
    }
    if (degree(c) > 0) work.push_back({c, mult});
  }

  for (const auto& [part, mult] : squarefree_parts) {
    std::vector<Poly> irr;
    factor_squarefree(k, part, irr);
    for (auto& g : irr) result.factors[g] += mult;
  }

  // verification: unit * prod factor^mult == input
  Poly check = constant(k, result.unit);
  for (const auto& [g, m] : result.factors) {
    for (uint32_t i = 0; i < m; ++i) check = mul(k, check, g);
  }
  CROSSED_CHECK(equal(check, f_in), "factorization failed verification");
  return result;
}

}  // namespace crossed::poly
