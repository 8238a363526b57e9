#include "crossed/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "crossed/polyfactor.hpp"

namespace crossed {

// ---------------------------------------------------------------------------
// AlgebraElement

std::vector<int> AlgebraElement::support() const {
  std::vector<int> s;
  for (const auto& [g, c] : coeff_) s.push_back(g);
  return s;
}

std::string AlgebraElement::str() const {
  if (coeff_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : coeff_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")U_" << parent_->group()->label(g);
  }
  return os.str();
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  CROSSED_CHECK(a.parent_.get() == b.parent_.get(), "comparison across different algebras");
  return a.coeff_ == b.coeff_;
}

// ---------------------------------------------------------------------------
// CrossedProduct

AlgebraPtr CrossedProduct::make(TwoCocycle f) {
  auto v = validate_cocycle(f);
  if (!v.ok) throw invalid_input("crossed product needs a valid cocycle: " + v.message);
  return std::shared_ptr<const CrossedProduct>(new CrossedProduct(std::move(f)));
}

AlgebraElement CrossedProduct::zero() const {
  AlgebraElement e;
  e.parent_ = shared_from_this();
  return e;
}

AlgebraElement CrossedProduct::element(std::map<int, FieldElement> coeffs) const {
  AlgebraElement e;
  e.parent_ = shared_from_this();
  for (auto& [g, c] : coeffs) {
    CROSSED_CHECK(g >= 0 && g < group()->order(), "coefficient index out of range");
    if (!c.is_zero()) e.coeff_.emplace(g, c);
  }
  return e;
}

AlgebraElement CrossedProduct::one() const { return unit(group()->identity()); }

AlgebraElement CrossedProduct::unit(int g) const {
  AlgebraElement e;
  e.parent_ = shared_from_this();
  e.coeff_.emplace(g, field()->one());
  return e;
}

AlgebraElement CrossedProduct::unit_inverse(int g) const {
  // U_g U_{g^-1} = f(g, g^-1) U_1
  int gi = group()->inv(g);
  AlgebraElement e;
  e.parent_ = shared_from_this();
  e.coeff_.emplace(gi, inverse(f_.val[g][gi]));
  return e;
}

AlgebraElement CrossedProduct::scalar(const FieldElement& s) const {
  AlgebraElement e;
  e.parent_ = shared_from_this();
  if (!s.is_zero()) e.coeff_.emplace(group()->identity(), s);
  return e;
}

namespace {
void check_parent(const CrossedProduct* self, const AlgebraElement& x) {
  CROSSED_CHECK(x.parent().get() == self, "elements of different algebras");
}
}  // namespace

AlgebraElement CrossedProduct::add(const AlgebraElement& a, const AlgebraElement& b) const {
  check_parent(this, a);
  check_parent(this, b);
  std::map<int, FieldElement> out = a.coeffs();
  for (const auto& [g, c] : b.coeffs()) {
    auto it = out.find(g);
    if (it == out.end()) {
      out.emplace(g, c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) out.erase(it);
    }
  }
  return element(std::move(out));
}

AlgebraElement CrossedProduct::neg(const AlgebraElement& a) const {
  check_parent(this, a);
  std::map<int, FieldElement> out;
  for (const auto& [g, c] : a.coeffs()) out.emplace(g, -c);
  return element(std::move(out));
}

AlgebraElement CrossedProduct::sub(const AlgebraElement& a, const AlgebraElement& b) const {
  return add(a, neg(b));
}

AlgebraElement CrossedProduct::mul(const AlgebraElement& a, const AlgebraElement& b) const {
  check_parent(this, a);
  check_parent(this, b);
  std::map<int, FieldElement> out;
  for (const auto& [g, s] : a.coeffs()) {
    for (const auto& [h, t] : b.coeffs()) {
      int gh = group()->mul(g, h);
      FieldElement v = s * f_.action.act(g, t) * f_.val[g][h];
      auto it = out.find(gh);
      if (it == out.end()) {
        out.emplace(gh, v);
      } else {
        it->second = it->second + v;
      }
    }
  }
  return element(std::move(out));
}

AlgebraElement CrossedProduct::mul_scalar(const FieldElement& s, const AlgebraElement& a) const {
  check_parent(this, a);
  std::map<int, FieldElement> out;
  if (!s.is_zero()) {
    for (const auto& [g, c] : a.coeffs()) out.emplace(g, s * c);
  }
  return element(std::move(out));
}

AlgebraElement CrossedProduct::pow(const AlgebraElement& a, uint64_t e) const {
  AlgebraElement acc = one();
  AlgebraElement base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

AlgebraElement CrossedProduct::conjugate_by_unit(int g, const AlgebraElement& x) const {
  return mul(mul(unit(g), x), unit_inverse(g));
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  return a.parent()->add(a, b);
}
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  return a.parent()->sub(a, b);
}
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  return a.parent()->mul(a, b);
}

// ---------------------------------------------------------------------------
// exact linear algebra over the prime field

namespace {

struct FpMatrix {
  uint32_t p = 2;
  size_t rows = 0, cols = 0;
  std::vector<std::vector<uint32_t>> a;

  FpMatrix(uint32_t p_, size_t r, size_t c) : p(p_), rows(r), cols(c), a(r, std::vector<uint32_t>(c, 0)) {}
};

uint32_t fp_inv(uint32_t x, uint32_t p) {
  // extended euclid on small values
  int64_t t = 0, nt = 1, r = p, nr = x % p;
  while (nr) {
    int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  CROSSED_CHECK(r == 1, "non-invertible residue");
  return (uint32_t)((t % p + p) % p);
}

// Row-reduce in place; returns pivot column per pivot row.
std::vector<size_t> rref(FpMatrix& m) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
    size_t sel = row;
    while (sel < m.rows && m.a[sel][col] == 0) ++sel;
    if (sel == m.rows) continue;
    std::swap(m.a[sel], m.a[row]);
    uint32_t inv = fp_inv(m.a[row][col], m.p);
    for (auto& v : m.a[row]) v = (uint32_t)((uint64_t)v * inv % m.p);
    for (size_t r = 0; r < m.rows; ++r) {
      if (r == row || m.a[r][col] == 0) continue;
      uint64_t f = m.a[r][col];
      for (size_t c = 0; c < m.cols; ++c) {
        m.a[r][c] = (uint32_t)((m.a[r][c] + (m.p - (uint32_t)(f * m.a[row][c] % m.p))) % m.p);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  m.a.resize(pivots.size(), std::vector<uint32_t>(m.cols, 0));
  m.rows = pivots.size();
  return pivots;
}

// Kernel basis (as rows) of the linear map given by matrix m (rows = equations).
std::vector<std::vector<uint32_t>> kernel_basis(FpMatrix m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<uint32_t>> out;
  for (size_t free_col = 0; free_col < m.cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<uint32_t> v(m.cols, 0);
    v[free_col] = 1;
    for (size_t r = 0; r < m.rows; ++r) {
      uint32_t coef = m.a[r][free_col];
      if (coef) v[pivots[r]] = (m.p - coef) % m.p;
    }
    out.push_back(std::move(v));
  }
  return out;
}

// A finite-dimensional commutative algebra over F_p by structure constants.
struct FpAlgebra {
  uint32_t p = 2;
  size_t dim = 0;
  std::vector<uint32_t> unit;                              // coords of 1
  std::vector<std::vector<std::vector<uint32_t>>> tensor;  // tensor[i][j] = coords of e_i e_j

  std::vector<uint32_t> mul(const std::vector<uint32_t>& x, const std::vector<uint32_t>& y) const {
    std::vector<uint32_t> out(dim, 0);
    for (size_t i = 0; i < dim; ++i) {
      if (!x[i]) continue;
      for (size_t j = 0; j < dim; ++j) {
        if (!y[j]) continue;
        uint64_t c = (uint64_t)x[i] * y[j] % p;
        for (size_t k = 0; k < dim; ++k) {
          out[k] = (uint32_t)((out[k] + c * tensor[i][j][k]) % p);
        }
      }
    }
    return out;
  }

  std::vector<uint32_t> power(std::vector<uint32_t> x, uint64_t e) const {
    std::vector<uint32_t> acc = unit;
    while (e) {
      if (e & 1) acc = mul(acc, x);
      x = mul(x, x);
      e >>= 1;
    }
    return acc;
  }

  bool is_zero_vec(const std::vector<uint32_t>& x) const {
    return std::all_of(x.begin(), x.end(), [](uint32_t v) { return v == 0; });
  }
};

// Builds the subalgebra structure on a given set of independent coordinate
// rows (closed under multiplication, containing its own unit).
FpAlgebra subalgebra_on_basis(const FpAlgebra& big, std::vector<std::vector<uint32_t>> basis,
                              const std::vector<uint32_t>& unit_vec) {
  // RREF the basis for coordinate extraction
  FpMatrix m(big.p, basis.size(), big.dim);
  m.a = basis;
  auto pivots = rref(m);
  CROSSED_CHECK(pivots.size() == basis.size() || true, "basis rref");
  basis = m.a;
  const size_t d = basis.size();
  auto coords = [&](const std::vector<uint32_t>& v) {
    std::vector<uint32_t> c(d, 0);
    std::vector<uint32_t> rest = v;
    for (size_t i = 0; i < d; ++i) {
      uint32_t coef = rest[pivots[i]];
      c[i] = coef;
      if (coef) {
        for (size_t k = 0; k < big.dim; ++k) {
          rest[k] = (uint32_t)((rest[k] + (uint64_t)(big.p - coef) * basis[i][k]) % big.p);
        }
      }
    }
    CROSSED_CHECK(std::all_of(rest.begin(), rest.end(), [](uint32_t x) { return x == 0; }),
                  "vector outside subalgebra span");
    return c;
  };
  FpAlgebra sub;
  sub.p = big.p;
  sub.dim = d;
  sub.unit = coords(unit_vec);
  sub.tensor.assign(d, std::vector<std::vector<uint32_t>>(d));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) {
      sub.tensor[i][j] = coords(big.mul(basis[i], basis[j]));
    }
  }
  return sub;
}

// dim of { x : x^p = x }; equals the number of field components for a
// reduced commutative algebra.
size_t berlekamp_dim(const FpAlgebra& alg) {
  FpMatrix m(alg.p, alg.dim, alg.dim);
  for (size_t i = 0; i < alg.dim; ++i) {
    std::vector<uint32_t> e(alg.dim, 0);
    e[i] = 1;
    auto fe = alg.power(e, alg.p);
    for (size_t k = 0; k < alg.dim; ++k) {
      m.a[k][i] = (uint32_t)((fe[k] + (alg.p - (k == i ? 1u : 0u))) % alg.p);
    }
  }
  return kernel_basis(std::move(m)).size();
}

// minimal polynomial of x over F_p, as a monic poly::Poly over the prime field
poly::Poly minimal_polynomial(const Field& fp, const FpAlgebra& alg,
                              const std::vector<uint32_t>& x) {
  std::vector<std::vector<uint32_t>> powers{alg.unit};
  std::vector<uint32_t> cur = alg.unit;
  while (true) {
    cur = alg.mul(cur, x);
    // test dependence of powers + cur
    FpMatrix m(alg.p, powers.size() + 1, alg.dim);
    for (size_t i = 0; i < powers.size(); ++i) m.a[i] = powers[i];
    m.a[powers.size()] = cur;
    FpMatrix mt(alg.p, m.rows, m.cols);
    mt.a = m.a;
    auto piv = rref(mt);
    if (piv.size() < powers.size() + 1) {
      // cur = sum c_i powers[i]: solve
      FpMatrix sys(alg.p, alg.dim, powers.size() + 1);
      for (size_t i = 0; i < powers.size(); ++i) {
        for (size_t k = 0; k < alg.dim; ++k) sys.a[k][i] = powers[i][k];
      }
      for (size_t k = 0; k < alg.dim; ++k) sys.a[k][powers.size()] = cur[k];
      auto pivots = rref(sys);
      std::vector<uint32_t> c(powers.size(), 0);
      for (size_t r = 0; r < pivots.size(); ++r) {
        CROSSED_CHECK(pivots[r] < powers.size(), "minimal polynomial solve inconsistent");
        c[pivots[r]] = sys.a[r][powers.size()];
      }
      poly::Poly mu;
      for (size_t i = 0; i < powers.size(); ++i) {
        uint32_t v = (alg.p - c[i] % alg.p) % alg.p;
        mu.push_back(v ? FqElem{v} : FqElem{});
      }
      mu.push_back(FqElem{1});
      (void)fp;
      return poly::trim(std::move(mu));
    }
    powers.push_back(cur);
    CROSSED_CHECK(powers.size() <= alg.dim + 1, "minimal polynomial search overran dimension");
  }
}

std::vector<uint32_t> eval_poly_in_algebra(const FpAlgebra& alg, const poly::Poly& f,
                                           const std::vector<uint32_t>& x) {
  std::vector<uint32_t> acc(alg.dim, 0);
  for (size_t i = f.size(); i-- > 0;) {
    acc = alg.mul(acc, x);
    if (!f[i].empty()) {
      for (size_t k = 0; k < alg.dim; ++k) {
        acc[k] = (uint32_t)((acc[k] + (uint64_t)f[i][0] * alg.unit[k]) % alg.p);
      }
    }
  }
  return acc;
}

// Number of field components of a reduced commutative F_p-algebra, by
// minimal-polynomial CRT splitting. Splitting elements come from the
// Berlekamp subalgebra, whose non-scalar members have squarefree totally
// split minimal polynomials.
int count_components_reduced(const Field& fp, const FpAlgebra& alg) {
  if (alg.dim == 0) return 0;
  size_t nb = berlekamp_dim(alg);
  if (nb == 1) return 1;
  // find a Berlekamp element independent of 1
  FpMatrix m(alg.p, alg.dim, alg.dim);
  for (size_t i = 0; i < alg.dim; ++i) {
    std::vector<uint32_t> e(alg.dim, 0);
    e[i] = 1;
    auto fe = alg.power(e, alg.p);
    for (size_t k = 0; k < alg.dim; ++k) {
      m.a[k][i] = (uint32_t)((fe[k] + (alg.p - (k == i ? 1u : 0u))) % alg.p);
    }
  }
  auto berl = kernel_basis(std::move(m));
  std::vector<uint32_t> split_elem;
  poly::Poly mu;
  for (const auto& cand : berl) {
    mu = minimal_polynomial(fp, alg, cand);
    if (poly::degree(mu) > 1) {
      split_elem = cand;
      break;
    }
  }
  CROSSED_CHECK(!split_elem.empty(), "no splitting element despite multiple components");
  auto fac = poly::factor(fp, mu);
  CROSSED_CHECK(fac.factors.size() >= 2, "splitting element has irreducible minimal polynomial");
  for (const auto& [g, e] : fac.factors) {
    CROSSED_CHECK(e == 1, "minimal polynomial not squarefree in a reduced algebra");
  }
  // CRT idempotent from the first coprime factor pair
  poly::Poly f1 = fac.factors.begin()->first;
  poly::Poly f2 = poly::divmod(fp, mu, f1).quot;
  // extended euclid: a f1 + b f2 = 1
  poly::Poly r0 = f1, r1 = f2;
  poly::Poly s0 = poly::constant(fp, fp.one().fq()), s1;
  poly::Poly t0, t1 = poly::constant(fp, fp.one().fq());
  while (!poly::is_zero(r1)) {
    auto qr = poly::divmod(fp, r0, r1);
    poly::Poly r2 = qr.rem;
    poly::Poly s2 = poly::sub(fp, s0, poly::mul(fp, qr.quot, s1));
    poly::Poly t2 = poly::sub(fp, t0, poly::mul(fp, qr.quot, t1));
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
  }
  CROSSED_CHECK(poly::degree(r0) == 0, "factors not coprime");
  FqElem lead_inv = fp.fq_inv(r0[0]);
  poly::Poly b = poly::scale(fp, t0, lead_inv);  // a f1 + b f2 = 1
  poly::Poly bf2 = poly::mul(fp, b, f2);
  auto e1 = eval_poly_in_algebra(alg, bf2, split_elem);
  CROSSED_CHECK(alg.mul(e1, e1) == e1, "CRT element is not idempotent");
  CROSSED_CHECK(!alg.is_zero_vec(e1), "CRT idempotent is zero");
  std::vector<uint32_t> e2 = alg.unit;
  for (size_t k = 0; k < alg.dim; ++k) e2[k] = (uint32_t)((e2[k] + alg.p - e1[k]) % alg.p);
  CROSSED_CHECK(!alg.is_zero_vec(e2), "CRT idempotent is the unit");

  int total = 0;
  for (const auto& e : {e1, e2}) {
    // ideal e * alg as a unital algebra with unit e
    std::vector<std::vector<uint32_t>> gens;
    for (size_t i = 0; i < alg.dim; ++i) {
      std::vector<uint32_t> b_i(alg.dim, 0);
      b_i[i] = 1;
      gens.push_back(alg.mul(e, b_i));
    }
    FpMatrix gm(alg.p, gens.size(), alg.dim);
    gm.a = gens;
    rref(gm);
    std::vector<std::vector<uint32_t>> basis;
    for (auto& row : gm.a) {
      if (!std::all_of(row.begin(), row.end(), [](uint32_t v) { return v == 0; })) {
        basis.push_back(row);
      }
    }
    total += count_components_reduced(fp, subalgebra_on_basis(alg, std::move(basis), e));
  }
  return total;
}

}  // namespace

// ---------------------------------------------------------------------------
// center

std::vector<AlgebraElement> center_basis(const AlgebraPtr& alg) {
  const FieldPtr& K = alg->field();
  if (!K->finite()) {
    throw invalid_input("center computation supports finite base fields only");
  }
  const auto& G = *alg->group();
  const int n = G.order();
  const uint32_t p = K->characteristic();
  const uint32_t deg = K->degree();
  const size_t dim = (size_t)n * deg;  // F_p-dimension of the algebra

  auto to_coords = [&](const AlgebraElement& x) {
    std::vector<uint32_t> v(dim, 0);
    for (const auto& [g, c] : x.coeffs()) {
      const FqElem& fq = c.fq();
      for (size_t k = 0; k < fq.size(); ++k) v[(size_t)g * deg + k] = fq[k];
    }
    return v;
  };
  auto from_coords = [&](const std::vector<uint32_t>& v) {
    std::map<int, FieldElement> coeffs;
    for (int g = 0; g < n; ++g) {
      FqElem fq(v.begin() + (size_t)g * deg, v.begin() + (size_t)(g + 1) * deg);
      while (!fq.empty() && fq.back() == 0) fq.pop_back();
      if (!fq.empty()) coeffs.emplace(g, K->from_fq(fq));
    }
    return alg->element(std::move(coeffs));
  };
  auto basis_elem = [&](size_t i) {
    std::vector<uint32_t> v(dim, 0);
    v[i] = 1;
    return from_coords(v);
  };

  // commutator conditions against all U_h and the extension generator u U_1
  std::vector<AlgebraElement> gens;
  for (int h = 0; h < n; ++h) gens.push_back(alg->unit(h));
  if (deg > 1) gens.push_back(alg->scalar(K->from_fq(FqElem{0, 1})));

  FpMatrix sys(p, gens.size() * dim, dim);
  for (size_t col = 0; col < dim; ++col) {
    AlgebraElement e = basis_elem(col);
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      AlgebraElement comm = alg->sub(alg->mul(e, gens[gi]), alg->mul(gens[gi], e));
      auto v = to_coords(comm);
      for (size_t r = 0; r < dim; ++r) sys.a[gi * dim + r][col] = v[r];
    }
  }
  auto ker = kernel_basis(std::move(sys));
  // re-echelon for a deterministic reduced basis
  FpMatrix kb(p, ker.size(), dim);
  kb.a = ker;
  rref(kb);
  std::vector<AlgebraElement> out;
  for (const auto& row : kb.a) {
    AlgebraElement z = from_coords(row);
    for (const auto& g : gens) {
      CROSSED_CHECK(alg->mul(z, g) == alg->mul(g, z), "center vector fails to commute");
    }
    out.push_back(std::move(z));
  }
  return out;
}

int count_simple_components_oracle(const AlgebraPtr& alg) {
  const FieldPtr& K = alg->field();
  if (!K->finite()) {
    throw invalid_input("oracle supports finite fields only");
  }
  const uint32_t p = K->characteristic();
  auto fp = Field::make_prime(p);

  std::vector<AlgebraElement> zb = center_basis(alg);
  const size_t m = zb.size();
  CROSSED_CHECK(m >= 1, "center is at least the prime field");

  // structure constants of the center in its reduced-echelon basis
  const uint32_t deg = K->degree();
  const int n = alg->group()->order();
  const size_t dim = (size_t)n * deg;
  auto to_coords = [&](const AlgebraElement& x) {
    std::vector<uint32_t> v(dim, 0);
    for (const auto& [g, c] : x.coeffs()) {
      const FqElem& fq = c.fq();
      for (size_t k = 0; k < fq.size(); ++k) v[(size_t)g * deg + k] = fq[k];
    }
    return v;
  };
  FpMatrix basis_m(p, m, dim);
  for (size_t i = 0; i < m; ++i) basis_m.a[i] = to_coords(zb[i]);
  auto pivots = rref(basis_m);
  CROSSED_CHECK(pivots.size() == m, "center basis not independent");
  auto coords_in_center = [&](const AlgebraElement& x) {
    auto v = to_coords(x);
    std::vector<uint32_t> c(m, 0);
    for (size_t i = 0; i < m; ++i) {
      uint32_t coef = v[pivots[i]];
      c[i] = coef;
      if (coef) {
        for (size_t k = 0; k < dim; ++k) {
          v[k] = (uint32_t)((v[k] + (uint64_t)(p - coef) * basis_m.a[i][k]) % p);
        }
      }
    }
    CROSSED_CHECK(std::all_of(v.begin(), v.end(), [](uint32_t x2) { return x2 == 0; }),
                  "product left the center");
    return c;
  };
  // rebuild zb in echelon form
  std::vector<AlgebraElement> zb2;
  {
    auto from_coords = [&](const std::vector<uint32_t>& v) {
      std::map<int, FieldElement> coeffs;
      for (int g = 0; g < n; ++g) {
        FqElem fq(v.begin() + (size_t)g * deg, v.begin() + (size_t)(g + 1) * deg);
        while (!fq.empty() && fq.back() == 0) fq.pop_back();
        if (!fq.empty()) coeffs.emplace(g, K->from_fq(fq));
      }
      return alg->element(std::move(coeffs));
    };
    for (size_t i = 0; i < m; ++i) zb2.push_back(from_coords(basis_m.a[i]));
  }

  FpAlgebra Z;
  Z.p = p;
  Z.dim = m;
  Z.unit = coords_in_center(alg->one());
  Z.tensor.assign(m, std::vector<std::vector<uint32_t>>(m));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      Z.tensor[i][j] = coords_in_center(alg->mul(zb2[i], zb2[j]));
    }
  }

  // nilradical of the commutative center: in characteristic p the map
  // x -> x^(p^k) is F_p-linear, and with p^k >= dim its kernel is exactly the
  // set of nilpotents (x nilpotent implies x^dim = 0)
  uint64_t pk = 1;
  while (pk < m) pk *= p;
  FpMatrix nil_map(p, m, m);
  for (size_t i = 0; i < m; ++i) {
    std::vector<uint32_t> e(m, 0);
    e[i] = 1;
    auto img = Z.power(e, pk);
    for (size_t r = 0; r < m; ++r) nil_map.a[r][i] = img[r];
  }
  auto nil = kernel_basis(std::move(nil_map));
  // verify the membership characterization element by element
  for (const auto& x : nil) {
    CROSSED_CHECK(Z.is_zero_vec(Z.power(x, m)), "nilradical vector fails x^dim = 0");
  }

  // quotient by the nilradical
  FpMatrix nil_m(p, nil.size(), m);
  nil_m.a = nil;
  auto nil_piv = rref(nil_m);
  std::vector<bool> is_nil_pivot(m, false);
  for (size_t c : nil_piv) is_nil_pivot[c] = true;
  std::vector<size_t> comp_cols;
  for (size_t c2 = 0; c2 < m; ++c2) {
    if (!is_nil_pivot[c2]) comp_cols.push_back(c2);
  }
  const size_t md = comp_cols.size();
  auto reduce_mod_nil = [&](std::vector<uint32_t> v) {
    for (size_t r = 0; r < nil_m.rows; ++r) {
      uint32_t coef = v[nil_piv[r]];
      if (coef) {
        for (size_t k = 0; k < m; ++k) {
          v[k] = (uint32_t)((v[k] + (uint64_t)(p - coef) * nil_m.a[r][k]) % p);
        }
      }
    }
    std::vector<uint32_t> c(md, 0);
    for (size_t i = 0; i < md; ++i) c[i] = v[comp_cols[i]];
    return c;
  };
  FpAlgebra Q;
  Q.p = p;
  Q.dim = md;
  {
    std::vector<uint32_t> lift_unit = Z.unit;
    Q.unit = reduce_mod_nil(lift_unit);
  }
  Q.tensor.assign(md, std::vector<std::vector<uint32_t>>(md));
  for (size_t i = 0; i < md; ++i) {
    for (size_t j = 0; j < md; ++j) {
      std::vector<uint32_t> xi(m, 0), xj(m, 0);
      xi[comp_cols[i]] = 1;
      xj[comp_cols[j]] = 1;
      Q.tensor[i][j] = reduce_mod_nil(Z.mul(xi, xj));
    }
  }

  return count_components_reduced(*fp, Q);
}

// ---------------------------------------------------------------------------
// idempotents

std::vector<AlgebraElement> iota_idempotents(const AlgebraPtr& alg, int gamma, int d,
                                             const FieldElement& zeta_d) {
  const auto& G = *alg->group();
  const FieldPtr& K = alg->field();
  CROSSED_CHECK(d >= 1, "idempotent family needs d >= 1");
  if ((uint32_t)d % K->characteristic() == 0) {
    throw invalid_input("tame index violated: d is not invertible in the field");
  }
  CROSSED_CHECK(G.element_order(gamma) == d, "generator order does not match d");
  if (d > 1) {
    CROSSED_CHECK(multiplicative_order(zeta_d) == (uint64_t)d, "zeta_d must have exact order d");
  }
  // basis discipline: U_{gamma^l} = U_gamma^l
  for (int l = 1; l < d; ++l) {
    CROSSED_CHECK(alg->cocycle().unit_power_coeff(gamma, (uint32_t)l).is_one(),
                  "cocycle not normalized on the cyclic subgroup; normalize first");
  }
  FieldElement dinv = inverse(K->from_integer(d));
  std::vector<AlgebraElement> out;
  for (int j = 0; j < d; ++j) {
    std::map<int, FieldElement> coeffs;
    int cur = G.identity();
    for (int l = 0; l < d; ++l) {
      // chi_j(gamma^l) = zeta^(jl); coefficient is its inverse times 1/d
      FieldElement chi = pow(zeta_d, (int64_t)j * l);
      coeffs[cur] = dinv * inverse(chi);
      cur = G.mul(cur, gamma);
    }
    out.push_back(alg->element(std::move(coeffs)));
  }
  // complete orthogonal idempotent family, exactly
  AlgebraElement sum = alg->zero();
  for (int j = 0; j < d; ++j) {
    CROSSED_CHECK(alg->mul(out[j], out[j]) == out[j], "iota_j is not idempotent");
    for (int i = 0; i < d; ++i) {
      if (i != j) {
        CROSSED_CHECK(alg->mul(out[i], out[j]).is_zero(), "iota_i iota_j != 0");
      }
    }
    sum = alg->add(sum, out[j]);
  }
  CROSSED_CHECK(sum == alg->one(), "idempotents do not sum to 1");
  return out;
}

SubalgebraResult twisted_subalgebra(const AlgebraPtr& alg, const Subgroup& H) {
  RestrictedCocycle rc = restrict_cocycle(alg->cocycle(), H);
  return {CrossedProduct::make(std::move(rc.cocycle)), std::move(rc.embed)};
}

// ---------------------------------------------------------------------------
// purely inseparable tower

namespace {

// substitute t -> t^factor in a rational function (exponent stretch)
FieldElement stretch(const FieldElement& x, uint64_t factor) {
  const Field& f = *x.field();
  if (factor == 1) return x;
  auto stretch_poly = [&](const std::vector<FqElem>& po) {
    std::vector<FqElem> out;
    if (po.empty()) return out;
    out.resize((po.size() - 1) * factor + 1);
    for (size_t i = 0; i < po.size(); ++i) out[i * factor] = po[i];
    return out;
  };
  return f.from_fraction(stretch_poly(x.rat().num), stretch_poly(x.rat().den));
}

// coordinates of h over the subfield of p^k-th powers of the variable,
// with respect to the basis {t^i : i < p^k}
std::vector<FieldElement> variable_coords(const FieldElement& h, uint64_t pk) {
  const Field& f = *h.field();
  const Field& b = *f.base();
  const RatElem& r = h.rat();
  // den^(pk) has only exponents divisible by pk: D(t)^pk = Dtilde(t^pk)
  poly::Poly den_pk = poly::constant(b, b.one().fq());
  for (uint64_t i = 0; i < pk; ++i) den_pk = poly::mul(b, den_pk, r.den);
  poly::Poly dtilde;
  for (size_t i = 0; i < den_pk.size(); i += pk) dtilde.push_back(den_pk[i]);
  for (size_t i = 0; i < den_pk.size(); ++i) {
    CROSSED_CHECK(i % pk == 0 || den_pk[i].empty(), "p^k-th power has stray exponents");
  }
  // numerator: num * den^(pk - 1)
  poly::Poly num = r.num;
  for (uint64_t i = 0; i + 1 < pk; ++i) num = poly::mul(b, num, r.den);
  std::vector<FieldElement> out;
  for (uint64_t i = 0; i < pk; ++i) {
    poly::Poly part;
    for (size_t j = i; j < num.size(); j += pk) part.push_back(num[j]);
    out.push_back(f.from_fraction(poly::trim(std::move(part)), dtilde));
  }
  return out;
}

// Solve sum_i c_i columns[i] = target over the field by Gauss-Jordan.
std::vector<FieldElement> solve_linear(const FieldPtr& K,
                                       const std::vector<std::vector<FieldElement>>& columns,
                                       const std::vector<FieldElement>& target) {
  const size_t n = columns.size();
  const size_t rows = target.size();
  CROSSED_CHECK(n > 0 && columns[0].size() == rows, "linear solve shape mismatch");
  std::vector<std::vector<FieldElement>> a(rows, std::vector<FieldElement>(n + 1, K->zero()));
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < n; ++c) a[r][c] = columns[c][r];
    a[r][n] = target[r];
  }
  std::vector<size_t> pivot_col;
  size_t prow = 0;
  for (size_t col = 0; col < n && prow < rows; ++col) {
    size_t sel = prow;
    while (sel < rows && a[sel][col].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[prow]);
    FieldElement inv_p = inverse(a[prow][col]);
    for (auto& v : a[prow]) v = v * inv_p;
    for (size_t r = 0; r < rows; ++r) {
      if (r == prow || a[r][col].is_zero()) continue;
      FieldElement fct = a[r][col];
      for (size_t c2 = col; c2 <= n; ++c2) a[r][c2] = a[r][c2] - fct * a[prow][c2];
    }
    pivot_col.push_back(col);
    ++prow;
  }
  for (size_t r = prow; r < rows; ++r) {
    CROSSED_CHECK(a[r][n].is_zero(), "inconsistent tower preimage system");
  }
  std::vector<FieldElement> x(n, K->zero());
  for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = a[i][n];
  return x;
}

}  // namespace

InsepResult purely_inseparable_field_test(const TwoCocycle& f_on_p,
                                          const std::vector<std::pair<int, int>>& cyclic_basis) {
  const FieldPtr& K = f_on_p.field();
  const uint32_t p = K->characteristic();
  const auto& P = *f_on_p.group;
  CROSSED_CHECK(P.is_abelian(), "inseparability test needs an abelian p-group");
  CROSSED_CHECK(f_on_p.action.is_trivial(), "inseparability test needs a trivial action");
  if (cyclic_basis.empty() && P.order() > 1) {
    throw invalid_input("p-group must be presented with a cyclic decomposition");
  }
  {
    uint64_t total = 1;
    uint32_t height = 0;
    for (auto& [g, o] : cyclic_basis) {
      total *= (uint64_t)o;
      uint64_t oo = o;
      while (oo > 1) {
        if (oo % p != 0) throw invalid_input("cyclic factor order is not a p-power");
        oo /= p;
        ++height;
      }
    }
    CROSSED_CHECK(total == (uint64_t)P.order(), "cyclic decomposition does not cover the group");
    if (height > 3) throw invalid_input("unsupported tower height (> 3)");
  }
  auto alg = CrossedProduct::make(f_on_p);

  InsepResult res;
  res.algebra = alg;
  res.tower.push_back("F0 = " + K->name());

  // (i) the basis units must pairwise commute; otherwise no field is possible
  for (size_t i = 0; i < cyclic_basis.size(); ++i) {
    for (size_t j = i + 1; j < cyclic_basis.size(); ++j) {
      int a = cyclic_basis[i].first, b = cyclic_basis[j].first;
      AlgebraElement lhs = alg->mul(alg->unit(a), alg->unit(b));
      AlgebraElement rhs = alg->mul(alg->unit(b), alg->unit(a));
      if (!(lhs == rhs)) {
        res.is_field = false;
        res.noncommuting = {a, b};
        res.witness = alg->sub(lhs, rhs);
        return res;
      }
    }
  }

  // tower state: current field is the rational function field with the
  // variable rescaled so t_cur^(p^depth) = t, or the base field itself when
  // the scenario field is finite (in which case the first step always fails)
  uint64_t pk = 1;  // p^depth
  const bool rational = !K->finite();
  // basis of the subalgebra built so far, with images in the rescaled field
  std::vector<AlgebraElement> amon{alg->one()};
  std::vector<FieldElement> aimg{K->one()};
  int level = 0;

  for (auto& [gen, order] : cyclic_basis) {
    int m = 0;
    for (int oo = order; oo > 1; oo /= (int)p) ++m;
    // step j = m down to 1: adjoin the class of U_gen^(p^(j-1)), testing that
    // the class of U_gen^(p^j) is not already a p-th power in the field so far
    FieldElement beta_img = K->zero();
    for (int j = m; j >= 1; --j) {
      uint32_t pj = 1;
      for (int i2 = 0; i2 < j; ++i2) pj *= p;
      AlgebraElement beta_elt = alg->pow(alg->unit(gen), pj);
      if (j == m) {
        // U_gen^(p^m) = alpha U_1 with alpha in the scenario field
        CROSSED_CHECK(beta_elt.coeffs().size() == 1 &&
                          beta_elt.coeffs().begin()->first == P.identity(),
                      "full power of a basis unit must be scalar");
        FieldElement alpha = beta_elt.coeffs().begin()->second;
        beta_img = rational ? stretch(alpha, pk) : alpha;
      }
      PthPowerResult pp = is_pth_power(beta_img);
      if (pp.is_power) {
        // splitting: find a preimage of the root in the built subalgebra and
        // exhibit a nilpotent
        std::vector<FieldElement> coeffs;
        if (rational) {
          std::vector<std::vector<FieldElement>> cols;
          for (auto& img : aimg) cols.push_back(variable_coords(img, pk));
          coeffs = solve_linear(K, std::move(cols), variable_coords(*pp.root, pk));
        } else {
          CROSSED_CHECK(amon.size() == 1, "finite base must fail at the first step");
          coeffs = {*pp.root};
        }
        AlgebraElement yhat = alg->zero();
        for (size_t i2 = 0; i2 < amon.size(); ++i2) {
          yhat = alg->add(yhat, alg->mul_scalar(coeffs[i2], amon[i2]));
        }
        uint32_t pj1 = pj / p;
        AlgebraElement v = alg->pow(alg->unit(gen), pj1);
        AlgebraElement w = alg->sub(v, yhat);
        CROSSED_CHECK(!w.is_zero(), "nilpotent witness vanished");
        // verify nilpotency by p-th powering
        AlgebraElement acc = w;
        int steps = 0;
        while (!acc.is_zero() && steps < 8) {
          acc = alg->pow(acc, p);
          ++steps;
        }
        CROSSED_CHECK(acc.is_zero(), "witness failed nilpotency verification");
        res.is_field = false;
        res.witness = w;
        return res;
      }
      // extend the tower by one p-th root
      if (rational) {
        pk *= p;
        for (auto& img : aimg) img = stretch(img, p);
        beta_img = stretch(beta_img, p);
        PthPowerResult root_now = is_pth_power(beta_img);
        CROSSED_CHECK(root_now.is_power, "root must exist after rescaling");
        uint32_t pj1 = pj / p;
        AlgebraElement v = alg->pow(alg->unit(gen), pj1);
        std::vector<AlgebraElement> nm;
        std::vector<FieldElement> ni;
        for (uint32_t a2 = 0; a2 < p; ++a2) {
          AlgebraElement va = alg->pow(v, a2);
          FieldElement ia = pow(*root_now.root, (int64_t)a2);
          for (size_t i2 = 0; i2 < amon.size(); ++i2) {
            nm.push_back(alg->mul(va, amon[i2]));
            ni.push_back(ia * aimg[i2]);
          }
        }
        amon = std::move(nm);
        aimg = std::move(ni);
        beta_img = *root_now.root;  // next step roots this class
        ++level;
        res.tower.push_back("F" + std::to_string(level) + " = F" + std::to_string(level - 1) +
                            "(class of U_" + P.label(gen) + "^" + std::to_string(pj1) +
                            "), degree " + std::to_string(p));
      } else {
        throw internal_error("finite perfect base cannot pass the p-th power test");
      }
    }
  }
  res.is_field = true;
  return res;
}

}  // namespace crossed
