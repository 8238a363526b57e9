#include "crossed/field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "crossed/polyfactor.hpp"

namespace crossed {

namespace {

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; (uint64_t)d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> ps;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
  while (b) {
    uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// modular inverse of a mod m, gcd(a, m) = 1
uint64_t inv_mod_u64(uint64_t a, uint64_t m) {
  int64_t t = 0, newt = 1;
  int64_t r = (int64_t)m, newr = (int64_t)(a % m);
  while (newr != 0) {
    int64_t q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  CROSSED_CHECK(r == 1, "inverse of non-unit residue");
  if (t < 0) t += (int64_t)m;
  return (uint64_t)t;
}

// raw polynomial arithmetic over Z/p for extension-field elements
FqElem zp_trim(FqElem a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

FqElem zp_mul_mod(const FqElem& a, const FqElem& b, const FqElem& modulus, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint64_t> prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + (uint64_t)a[i] * b[j]) % p;
    }
  }
  // reduce by monic modulus
  const size_t d = modulus.size() - 1;
  for (size_t i = prod.size(); i-- > d;) {
    uint64_t c = prod[i] % p;
    if (c == 0) continue;
    for (size_t j = 0; j < d; ++j) {
      uint64_t sub = (c * modulus[j]) % p;
      prod[i - d + j] = (prod[i - d + j] + p - sub) % p;
    }
    prod[i] = 0;
  }
  FqElem out;
  out.reserve(d);
  for (size_t i = 0; i < std::min(prod.size(), d); ++i) out.push_back((uint32_t)(prod[i] % p));
  return zp_trim(std::move(out));
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldElement

bool FieldElement::is_zero() const {
  CROSSED_CHECK(valid(), "uninitialized field element");
  if (field_->finite()) return fq().empty();
  return rat().num.empty();
}

bool FieldElement::is_one() const {
  CROSSED_CHECK(valid(), "uninitialized field element");
  return *this == field_->one();
}

const FqElem& FieldElement::fq() const {
  CROSSED_CHECK(std::holds_alternative<FqElem>(v_), "element is not a finite-field value");
  return std::get<FqElem>(v_);
}

const RatElem& FieldElement::rat() const {
  CROSSED_CHECK(std::holds_alternative<RatElem>(v_), "element is not a rational function");
  return std::get<RatElem>(v_);
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  CROSSED_CHECK(a.valid() && b.valid(), "comparison of uninitialized field element");
  if (!a.field_->same(*b.field_)) return false;
  return a.v_ == b.v_;
}

// ---------------------------------------------------------------------------
// Field construction

FieldPtr Field::make_prime(uint32_t p) {
  if (!is_prime_u32(p)) throw invalid_input("characteristic must be prime (p >= 2)");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = Kind::prime;
  f->p_ = p;
  f->deg_ = 1;
  f->q_ = p;
  f->build_tables();
  return f;
}

FieldPtr Field::make_extension(uint32_t p, FqElem modulus) {
  if (!is_prime_u32(p)) throw invalid_input("characteristic must be prime (p >= 2)");
  modulus = zp_trim(std::move(modulus));
  if (modulus.size() < 3) throw invalid_input("extension modulus must have degree >= 2");
  for (uint32_t c : modulus) {
    if (c >= p) throw invalid_input("modulus coefficient out of range [0, p)");
  }
  if (modulus.back() != 1) throw invalid_input("extension modulus must be monic");
  auto prime = make_prime(p);
  poly::Poly m;
  for (uint32_t c : modulus) m.push_back(c ? FqElem{c} : FqElem{});
  if (!poly::is_irreducible(*prime, m)) {
    throw invalid_input("extension modulus is reducible over the prime field");
  }
  uint64_t q = 1;
  for (size_t i = 0; i + 1 < modulus.size(); ++i) {
    q *= p;
    if (q > 65536) throw invalid_input("field too large for discrete-log tables (q > 2^16)");
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = Kind::extension;
  f->p_ = p;
  f->deg_ = (uint32_t)modulus.size() - 1;
  f->q_ = q;
  f->modulus_ = std::move(modulus);
  f->build_tables();
  return f;
}

FieldPtr Field::make_ratfunc(FieldPtr base, std::string var) {
  if (!base || !base->finite()) throw invalid_input("rational function base must be a finite field");
  if (var.empty()) throw invalid_input("rational function field needs an indeterminate name");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = Kind::ratfunc;
  f->p_ = base->p_;
  f->deg_ = base->deg_;
  f->q_ = 0;
  f->base_ = std::move(base);
  f->var_ = std::move(var);
  return f;
}

void Field::build_tables() {
  // deterministic multiplicative generator: least index with full order
  const uint64_t n = q_ - 1;
  auto pf = prime_factors(n);
  FqElem gen;
  for (uint64_t idx = 1; idx < q_; ++idx) {
    FqElem cand = fq_at(idx);
    bool ok = true;
    for (uint64_t ell : pf) {
      // cand^(n/ell) via square-and-multiply on raw arithmetic
      FqElem acc{1};
      FqElem base = cand;
      uint64_t e = n / ell;
      while (e) {
        if (e & 1) acc = fq_mul(acc, base);
        base = fq_mul(base, base);
        e >>= 1;
      }
      if (acc == FqElem{1}) {
        ok = false;
        break;
      }
    }
    if (ok) {
      gen = cand;
      break;
    }
  }
  CROSSED_CHECK(!gen.empty(), "no multiplicative generator found");
  exp_table_.assign(n, 0);
  log_table_.assign(q_, 0);
  FqElem acc{1};
  for (uint64_t k = 0; k < n; ++k) {
    uint64_t idx = fq_index_nocheck(acc);
    exp_table_[k] = (uint32_t)idx;
    log_table_[idx] = k;
    acc = fq_mul(acc, gen);
  }
  CROSSED_CHECK(acc == FqElem{1}, "generator order mismatch");
}

bool Field::same(const Field& o) const {
  if (kind_ != o.kind_ || p_ != o.p_) return false;
  switch (kind_) {
    case Kind::prime:
      return true;
    case Kind::extension:
      return modulus_ == o.modulus_;
    case Kind::ratfunc:
      return var_ == o.var_ && base_->same(*o.base_);
  }
  return false;
}

std::string Field::name() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::prime:
      os << "F_" << p_;
      break;
    case Kind::extension: {
      os << "F_" << q_ << "=F_" << p_ << "[u]/(";
      bool first = true;
      for (size_t i = modulus_.size(); i-- > 0;) {
        if (modulus_[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || modulus_[i] != 1) os << modulus_[i];
        if (i >= 1) {
          os << "u";
          if (i >= 2) os << "^" << i;
        }
      }
      os << ")";
      break;
    }
    case Kind::ratfunc:
      os << "F_" << base_->q_ << "(" << var_ << ")";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// element construction

FieldElement Field::zero() const {
  FieldElement e;
  e.field_ = shared_from_this();
  if (finite()) {
    e.v_ = FqElem{};
  } else {
    e.v_ = RatElem{{}, {FqElem{1}}};
  }
  return e;
}

FieldElement Field::one() const { return from_integer(1); }

FieldElement Field::from_integer(int64_t n) const {
  int64_t r = n % (int64_t)p_;
  if (r < 0) r += p_;
  if (finite()) {
    return from_fq(r == 0 ? FqElem{} : FqElem{(uint32_t)r});
  }
  std::vector<FqElem> num;
  if (r != 0) num.push_back(FqElem{(uint32_t)r});
  return from_fraction(std::move(num), {FqElem{1}});
}

FieldElement Field::from_fq(FqElem coeffs) const {
  CROSSED_CHECK(finite(), "from_fq on a rational function field");
  coeffs = zp_trim(std::move(coeffs));
  if (coeffs.size() > deg_) throw invalid_input("finite-field coefficient vector too long");
  for (uint32_t c : coeffs) {
    if (c >= p_) throw invalid_input("coefficient out of range [0, p)");
  }
  FieldElement e;
  e.field_ = shared_from_this();
  e.v_ = std::move(coeffs);
  return e;
}

FieldElement Field::from_fraction(std::vector<FqElem> num, std::vector<FqElem> den) const {
  CROSSED_CHECK(kind_ == Kind::ratfunc, "fractions exist only in rational function fields");
  const Field& b = *base_;
  poly::Poly n = poly::trim(std::move(num));
  poly::Poly d = poly::trim(std::move(den));
  for (auto* part : {&n, &d}) {
    for (auto& c : *part) {
      c = zp_trim(std::move(c));
      if (c.size() > b.degree()) throw invalid_input("fraction coefficient too long");
      for (uint32_t x : c) {
        if (x >= p_) throw invalid_input("fraction coefficient out of range");
      }
    }
  }
  if (poly::is_zero(d)) throw invalid_input("fraction denominator is zero");
  if (poly::is_zero(n)) return zero();
  poly::Poly g = poly::gcd(b, n, d);
  if (poly::degree(g) > 0) {
    n = poly::divmod(b, n, g).quot;
    d = poly::divmod(b, d, g).quot;
  }
  FqElem lead_inv = b.fq_inv(poly::leading(d));
  n = poly::scale(b, n, lead_inv);
  d = poly::scale(b, d, lead_inv);
  FieldElement e;
  e.field_ = shared_from_this();
  e.v_ = RatElem{std::move(n), std::move(d)};
  return e;
}

FieldElement Field::constant(const FieldElement& base_element) const {
  CROSSED_CHECK(kind_ == Kind::ratfunc, "constant embedding targets a rational function field");
  CROSSED_CHECK(base_element.field()->same(*base_), "constant from a different base field");
  std::vector<FqElem> num;
  if (!base_element.fq().empty()) num.push_back(base_element.fq());
  return from_fraction(std::move(num), {FqElem{1}});
}

FieldElement Field::indeterminate() const {
  CROSSED_CHECK(kind_ == Kind::ratfunc, "indeterminate exists only in rational function fields");
  return from_fraction({FqElem{}, FqElem{1}}, {FqElem{1}});
}

FieldElement Field::element_at(uint64_t index) const {
  CROSSED_CHECK(finite(), "element enumeration requires a finite field");
  CROSSED_CHECK(index < q_, "element index out of range");
  return from_fq(fq_at(index));
}

uint64_t Field::index_of(const FieldElement& x) const {
  CROSSED_CHECK(finite(), "element index requires a finite field");
  return fq_index(x.fq());
}

// ---------------------------------------------------------------------------
// raw finite-field arithmetic

FqElem Field::fq_add(const FqElem& a, const FqElem& b) const {
  FqElem r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    uint32_t x = i < a.size() ? a[i] : 0;
    uint32_t y = i < b.size() ? b[i] : 0;
    r[i] = (x + y) % p_;
  }
  return zp_trim(std::move(r));
}

FqElem Field::fq_neg(const FqElem& a) const {
  FqElem r = a;
  for (auto& c : r) c = c ? p_ - c : 0;
  return r;
}

FqElem Field::fq_sub(const FqElem& a, const FqElem& b) const { return fq_add(a, fq_neg(b)); }

FqElem Field::fq_mul(const FqElem& a, const FqElem& b) const {
  if (kind_ == Kind::prime) {
    if (a.empty() || b.empty()) return {};
    uint64_t r = ((uint64_t)a[0] * b[0]) % p_;
    return r ? FqElem{(uint32_t)r} : FqElem{};
  }
  return zp_mul_mod(a, b, modulus_, p_);
}

uint64_t Field::fq_index_nocheck(const FqElem& a) const {
  uint64_t idx = 0;
  for (size_t i = a.size(); i-- > 0;) idx = idx * p_ + a[i];
  return idx;
}

uint64_t Field::fq_index(const FqElem& a) const {
  CROSSED_CHECK(finite(), "fq_index on non-finite field");
  return fq_index_nocheck(a);
}

FqElem Field::fq_at(uint64_t index) const {
  FqElem a;
  while (index > 0) {
    a.push_back((uint32_t)(index % p_));
    index /= p_;
  }
  return a;
}

uint64_t Field::fq_log(const FqElem& a) const {
  if (a.empty()) throw invalid_input("discrete log of zero");
  return log_table_[fq_index_nocheck(a)];
}

FqElem Field::fq_exp(uint64_t k) const { return fq_at(exp_table_[k % (q_ - 1)]); }

FqElem Field::fq_inv(const FqElem& a) const {
  if (a.empty()) throw invalid_input("division by zero");
  uint64_t k = fq_log(a);
  return fq_exp((q_ - 1 - k) % (q_ - 1));
}

FqElem Field::fq_pow(FqElem a, uint64_t e) const {
  if (a.empty()) return e == 0 ? FqElem{1} : FqElem{};
  uint64_t k = fq_log(a);
  return fq_exp((k % (q_ - 1)) * (e % (q_ - 1)) % (q_ - 1));
}

FqElem Field::fq_frobenius(const FqElem& a, uint32_t k) const {
  if (a.empty()) return a;
  uint64_t e = 1;
  for (uint32_t i = 0; i < k % deg_; ++i) e *= p_;
  return fq_pow(a, e);
}

// ---------------------------------------------------------------------------
// arithmetic dispatch

FieldElement Field::add(const FieldElement& a, const FieldElement& b) const {
  if (finite()) return from_fq(fq_add(a.fq(), b.fq()));
  const Field& k = *base_;
  const RatElem &x = a.rat(), &y = b.rat();
  poly::Poly num =
      poly::add(k, poly::mul(k, x.num, y.den), poly::mul(k, y.num, x.den));
  return from_fraction(std::move(num), poly::mul(k, x.den, y.den));
}

FieldElement Field::neg(const FieldElement& a) const {
  if (finite()) return from_fq(fq_neg(a.fq()));
  const RatElem& x = a.rat();
  return from_fraction(poly::neg(*base_, x.num), x.den);
}

FieldElement Field::sub(const FieldElement& a, const FieldElement& b) const {
  return add(a, neg(b));
}

FieldElement Field::mul(const FieldElement& a, const FieldElement& b) const {
  if (finite()) return from_fq(fq_mul(a.fq(), b.fq()));
  const Field& k = *base_;
  const RatElem &x = a.rat(), &y = b.rat();
  return from_fraction(poly::mul(k, x.num, y.num), poly::mul(k, x.den, y.den));
}

FieldElement Field::inv(const FieldElement& a) const {
  if (a.is_zero()) throw invalid_input("division by zero");
  if (finite()) return from_fq(fq_inv(a.fq()));
  const RatElem& x = a.rat();
  return from_fraction(x.den, x.num);
}

namespace {
const Field& common_field(const FieldElement& a, const FieldElement& b) {
  CROSSED_CHECK(a.valid() && b.valid(), "uninitialized field element");
  if (!a.field()->same(*b.field())) throw invalid_input("elements of different fields");
  return *a.field();
}
}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  return common_field(a, b).add(a, b);
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  return common_field(a, b).sub(a, b);
}
FieldElement operator-(const FieldElement& a) { return a.field()->neg(a); }
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  return common_field(a, b).mul(a, b);
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  return common_field(a, b).mul(a, b.field()->inv(b));
}
FieldElement inverse(const FieldElement& a) { return a.field()->inv(a); }

FieldElement pow(const FieldElement& a, int64_t e) {
  const Field& f = *a.field();
  if (e < 0) return pow(inverse(a), -e);
  FieldElement acc = f.one();
  FieldElement base = a;
  uint64_t n = (uint64_t)e;
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool canonical_less(const FieldElement& a, const FieldElement& b) {
  const Field& f = common_field(a, b);
  if (f.finite()) return f.index_of(a) < f.index_of(b);
  auto key = [&](const RatElem& x) {
    std::vector<uint64_t> k;
    const Field& base = *f.base();
    k.push_back(x.den.size());
    for (size_t i = x.den.size(); i-- > 0;) k.push_back(base.fq_index(x.den[i]));
    k.push_back(x.num.size());
    for (size_t i = x.num.size(); i-- > 0;) k.push_back(base.fq_index(x.num[i]));
    return k;
  };
  return key(a.rat()) < key(b.rat());
}

uint64_t multiplicative_order(const FieldElement& x) {
  const Field& f = *x.field();
  if (x.is_zero()) throw invalid_input("multiplicative order of zero");
  if (f.finite()) {
    uint64_t k = f.fq_log(x.fq());
    return (f.size() - 1) / gcd_u64(k, f.size() - 1);
  }
  const RatElem& r = x.rat();
  if (r.den == std::vector<FqElem>{FqElem{1}} && r.num.size() == 1) {
    return multiplicative_order(f.base()->from_fq(r.num[0]));
  }
  return 0;  // infinite
}

// ---------------------------------------------------------------------------
// roots

namespace {

std::optional<FieldElement> nth_root_finite(const FieldElement& x, uint64_t n) {
  const Field& f = *x.field();
  const uint64_t m = f.size() - 1;
  const uint64_t a = f.fq_log(x.fq());
  n %= m;
  if (n == 0) {
    // y^m = 1 for all units, so x must be 1; least unit is 1 itself
    if (a == 0) return f.one();
    return std::nullopt;
  }
  const uint64_t g = gcd_u64(n, m);
  if (a % g != 0) return std::nullopt;
  const uint64_t m1 = m / g;
  const uint64_t b0 = ((a / g) % m1) * inv_mod_u64((n / g) % m1, m1) % m1;
  std::optional<FieldElement> best;
  for (uint64_t k = 0; k < g; ++k) {
    FieldElement cand = f.from_fq(f.fq_exp(b0 + k * m1));
    if (!best || canonical_less(cand, *best)) best = cand;
  }
  return best;
}

std::optional<FieldElement> nth_root_ratfunc(const FieldElement& x, uint64_t n) {
  const Field& f = *x.field();
  const Field& b = *f.base();
  const RatElem& r = x.rat();
  auto fnum = poly::factor(b, r.num);
  poly::Poly num_root = poly::constant(b, b.one().fq());
  for (const auto& [g, e] : fnum.factors) {
    if (e % n != 0) return std::nullopt;
    for (uint32_t i = 0; i < e / n; ++i) num_root = poly::mul(b, num_root, g);
  }
  poly::Poly den_root = poly::constant(b, b.one().fq());
  if (poly::degree(r.den) > 0 || !(r.den == std::vector<FqElem>{FqElem{1}})) {
    auto fden = poly::factor(b, r.den);
    for (const auto& [g, e] : fden.factors) {
      if (e % n != 0) return std::nullopt;
      for (uint32_t i = 0; i < e / n; ++i) den_root = poly::mul(b, den_root, g);
    }
  }
  auto unit_root = nth_root_finite(b.from_fq(fnum.unit), n);
  if (!unit_root) return std::nullopt;
  num_root = poly::scale(b, num_root, unit_root->fq());
  return f.from_fraction(std::move(num_root), std::move(den_root));
}

}  // namespace

std::optional<FieldElement> nth_root(const FieldElement& x, uint64_t n) {
  if (n == 0) throw invalid_input("root order must be positive");
  if (x.is_zero()) throw invalid_input("zero has no unit root");
  if (n == 1) return x;
  if (x.field()->finite()) return nth_root_finite(x, n);
  return nth_root_ratfunc(x, n);
}

FieldElement primitive_root_of_unity(const FieldPtr& field, uint64_t n) {
  CROSSED_CHECK(n >= 1, "root-of-unity order must be positive");
  if (n % field->characteristic() == 0) {
    throw invalid_input("root-of-unity order must be coprime to the characteristic");
  }
  if (!field->finite()) {
    FieldElement zeta = primitive_root_of_unity(field->base(), n);
    return field->constant(zeta);
  }
  const uint64_t m = field->size() - 1;
  if (m % n != 0) {
    throw invalid_input("field has no primitive root of unity of order " + std::to_string(n) +
                        "; the scenario is invalid");
  }
  std::optional<FieldElement> best;
  for (uint64_t k = 0; k < n; ++k) {
    if (gcd_u64(k, n) != 1) continue;
    FieldElement cand = field->from_fq(field->fq_exp((m / n) * k));
    if (!best || canonical_less(cand, *best)) best = cand;
  }
  return *best;
}

PthPowerResult is_pth_power(const FieldElement& x) {
  const Field& f = *x.field();
  const uint32_t p = f.characteristic();
  if (x.is_zero()) return {true, f.zero()};
  if (f.finite()) {
    uint64_t e = 1;
    for (uint32_t i = 1; i < f.degree(); ++i) e *= p;  // p^(deg-1)
    FieldElement root = f.from_fq(f.fq_pow(x.fq(), e));
    CROSSED_CHECK(pow(root, p) == x, "p-th root verification failed on a perfect field");
    return {true, root};
  }
  const Field& b = *f.base();
  auto part_root = [&](const std::vector<FqElem>& part) -> std::optional<poly::Poly> {
    poly::Poly root;
    for (size_t i = 0; i < part.size(); ++i) {
      if (!part[i].empty() && i % p != 0) return std::nullopt;
    }
    uint64_t e = 1;
    for (uint32_t i = 1; i < b.degree(); ++i) e *= p;
    for (size_t i = 0; i < part.size(); i += p) {
      root.push_back(b.fq_pow(part[i], e));
    }
    return poly::trim(std::move(root));
  };
  auto nr = part_root(x.rat().num);
  auto dr = part_root(x.rat().den);
  if (!nr || !dr) return {false, std::nullopt};
  FieldElement root = f.from_fraction(std::move(*nr), std::move(*dr));
  CROSSED_CHECK(pow(root, p) == x, "p-th root verification failed");
  return {true, root};
}

// ---------------------------------------------------------------------------
// automorphisms

AutomorphismSpec AutomorphismSpec::identity(FieldPtr f) { return frobenius(std::move(f), 0); }

AutomorphismSpec AutomorphismSpec::frobenius(FieldPtr f, uint32_t k) {
  CROSSED_CHECK(f != nullptr, "automorphism needs a field");
  AutomorphismSpec a;
  a.frob_power = k % f->degree();
  a.field = std::move(f);
  return a;
}

uint32_t AutomorphismSpec::group_order() const { return field->degree(); }

AutomorphismSpec AutomorphismSpec::compose(const AutomorphismSpec& inner) const {
  CROSSED_CHECK(field->same(*inner.field), "composing automorphisms of different fields");
  return frobenius(field, frob_power + inner.frob_power);
}

AutomorphismSpec AutomorphismSpec::inverse() const {
  return frobenius(field, (group_order() - frob_power) % group_order());
}

bool AutomorphismSpec::operator==(const AutomorphismSpec& o) const {
  return field->same(*o.field) && frob_power == o.frob_power;
}

FieldElement apply_automorphism(const AutomorphismSpec& aut, const FieldElement& x) {
  CROSSED_CHECK(aut.field->same(*x.field()), "automorphism applied to element of another field");
  const Field& f = *x.field();
  if (aut.frob_power == 0) return x;
  if (f.finite()) return f.from_fq(f.fq_frobenius(x.fq(), aut.frob_power));
  const Field& b = *f.base();
  const RatElem& r = x.rat();
  return f.from_fraction(poly::frobenius(b, r.num, aut.frob_power),
                         poly::frobenius(b, r.den, aut.frob_power));
}

// ---------------------------------------------------------------------------
// rendering

namespace {

std::string fq_str(const Field& f, const FqElem& a) {
  if (a.empty()) return "0";
  if (f.kind() == Field::Kind::prime || a.size() == 1) {
    if (a.size() == 1 && f.kind() != Field::Kind::prime && a[0] == 1) return "1";
    return std::to_string(a.empty() ? 0 : a[0]);
  }
  std::ostringstream os;
  bool first = true;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << a[i];
      continue;
    }
    if (a[i] != 1) os << a[i];
    os << "u";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::string poly_str(const Field& base, const std::vector<FqElem>& po, const std::string& var) {
  if (po.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = po.size(); i-- > 0;) {
    if (po[i].empty()) continue;
    if (!first) os << "+";
    first = false;
    std::string c = fq_str(base, po[i]);
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != "1") {
      if (c.find('+') != std::string::npos) {
        os << "(" << c << ")";
      } else {
        os << c;
      }
    }
    os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

}  // namespace

std::string FieldElement::str() const {
  CROSSED_CHECK(valid(), "uninitialized field element");
  const Field& f = *field_;
  if (f.finite()) return fq_str(f, fq());
  const RatElem& r = rat();
  std::string num = poly_str(*f.base(), r.num, f.variable());
  bool den_is_one = r.den.size() == 1 && r.den[0] == FqElem{1};
  if (den_is_one) return num;
  std::string den = poly_str(*f.base(), r.den, f.variable());
  return "(" + num + ")/(" + den + ")";
}

}  // namespace crossed
