#include "crossed/cocycle.hpp"

#include <algorithm>
#include <numeric>

namespace crossed {

namespace {

void check_compatible(const GroupPtr& g, const GroupAction& action) {
  CROSSED_CHECK(action.group.get() == g.get(), "cocycle action must live on the cocycle group");
}

uint64_t ipow_capped(uint64_t b, uint64_t e, uint64_t cap) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < e; ++i) {
    if (r > cap / (b ? b : 1)) return cap + 1;
    r *= b;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// constructors

TwoCocycle TwoCocycle::trivial(GroupPtr g, GroupAction action) {
  check_compatible(g, action);
  const int n = g->order();
  std::vector<std::vector<FieldElement>> t(n, std::vector<FieldElement>(n, action.field->one()));
  return TwoCocycle{std::move(g), std::move(action), std::move(t)};
}

TwoCocycle TwoCocycle::from_table(GroupPtr g, GroupAction action,
                                  std::vector<std::vector<FieldElement>> table) {
  check_compatible(g, action);
  TwoCocycle f{std::move(g), std::move(action), std::move(table)};
  auto v = validate_cocycle(f);
  if (!v.ok) throw invalid_input("invalid cocycle table: " + v.message);
  return f;
}

TwoCocycle TwoCocycle::cyclic_power(GroupPtr g, GroupAction action, const FieldElement& alpha) {
  check_compatible(g, action);
  const int n = g->order();
  int gen = -1;
  for (int x = 0; x < n; ++x) {
    if (g->element_order(x) == n) {
      gen = x;
      break;
    }
  }
  if (gen < 0) throw invalid_input("cyclic cocycle needs a cyclic group");
  if (alpha.is_zero()) throw invalid_input("cocycle values must be units");
  std::vector<int> log(n, -1);
  int acc = g->identity();
  for (int i = 0; i < n; ++i) {
    log[acc] = i;
    acc = g->mul(acc, gen);
  }
  std::vector<std::vector<FieldElement>> t(n, std::vector<FieldElement>(n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      t[x][y] = (log[x] + log[y] >= n) ? alpha : action.field->one();
    }
  }
  return from_table(std::move(g), std::move(action), std::move(t));
}

TwoCocycle TwoCocycle::cyclic_product(GroupPtr g, GroupAction action,
                                      const std::vector<FieldElement>& alphas) {
  check_compatible(g, action);
  const auto& dec = g->decomposition();
  if (!dec) throw invalid_input("cyclic-product cocycle needs a product-of-cyclics group");
  const size_t r = dec->orders.size();
  if (alphas.size() != r) throw invalid_input("one alpha per cyclic factor required");
  const int n = g->order();
  // exponent tuple of each element over the decomposition
  std::vector<std::vector<int>> expo(n);
  {
    std::vector<int> t(r, 0);
    bool done = false;
    while (!done) {
      int x = g->identity();
      for (size_t i = 0; i < r; ++i) x = g->mul(x, g->power(dec->generators[i], t[i]));
      expo[x] = t;
      // increment tuple
      size_t i = 0;
      while (i < r) {
        if (++t[i] < dec->orders[i]) break;
        t[i] = 0;
        ++i;
      }
      if (i == r) done = true;
    }
  }
  std::vector<std::vector<FieldElement>> t(n, std::vector<FieldElement>(n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      FieldElement v = action.field->one();
      for (size_t i = 0; i < r; ++i) {
        if (expo[x][i] + expo[y][i] >= dec->orders[i]) v = v * alphas[i];
      }
      t[x][y] = v;
    }
  }
  return from_table(std::move(g), std::move(action), std::move(t));
}

TwoCocycle TwoCocycle::bimultiplicative(GroupPtr g, GroupAction action, const FieldElement& zeta,
                                        const std::vector<std::vector<uint32_t>>& exponents) {
  check_compatible(g, action);
  const auto& dec = g->decomposition();
  if (!dec) throw invalid_input("bimultiplicative cocycle needs a product-of-cyclics group");
  const size_t r = dec->orders.size();
  if (exponents.size() != r) throw invalid_input("exponent matrix size mismatch");
  for (const auto& row : exponents) {
    if (row.size() != r) throw invalid_input("exponent matrix size mismatch");
  }
  const uint64_t zeta_order = multiplicative_order(zeta);
  CROSSED_CHECK(zeta_order > 0, "bimultiplicative base must be a root of unity");
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < r; ++j) {
      uint64_t ord = zeta_order / std::gcd<uint64_t>(zeta_order, exponents[i][j]);
      uint64_t gij = std::gcd(dec->orders[i], dec->orders[j]);
      if (gij % ord != 0) {
        throw invalid_input("bimultiplicative exponent not compatible with factor orders");
      }
    }
  }
  const int n = g->order();
  // exponent tuples as in cyclic_product
  std::vector<std::vector<int>> expo(n);
  {
    std::vector<int> t(r, 0);
    bool done = false;
    while (!done) {
      int x = g->identity();
      for (size_t i = 0; i < r; ++i) x = g->mul(x, g->power(dec->generators[i], t[i]));
      expo[x] = t;
      size_t i = 0;
      while (i < r) {
        if (++t[i] < dec->orders[i]) break;
        t[i] = 0;
        ++i;
      }
      if (i == r) done = true;
    }
  }
  std::vector<std::vector<FieldElement>> tab(n, std::vector<FieldElement>(n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      uint64_t e = 0;
      for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < r; ++j) {
          e += (uint64_t)exponents[i][j] * (uint64_t)expo[x][i] * (uint64_t)expo[y][j];
        }
      }
      tab[x][y] = pow(zeta, (int64_t)(e % zeta_order));
    }
  }
  return from_table(std::move(g), std::move(action), std::move(tab));
}

FieldElement TwoCocycle::unit_power_coeff(int g, uint32_t k) const {
  FieldElement acc = field()->one();
  int cur = g;
  for (uint32_t i = 1; i < k; ++i) {
    // U_g^(i+1) = (coeff so far) * f(g^i, g) * U_{g^(i+1)}
    acc = acc * val[cur][g];
    cur = group->mul(cur, g);
  }
  return acc;
}

TwoCocycle TwoCocycle::product(const TwoCocycle& other) const {
  CROSSED_CHECK(group.get() == other.group.get(), "cocycle product across different groups");
  CROSSED_CHECK(action.frob == other.action.frob, "cocycle product across different actions");
  const int n = group->order();
  std::vector<std::vector<FieldElement>> t(n, std::vector<FieldElement>(n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) t[x][y] = val[x][y] * other.val[x][y];
  }
  return from_table(group, action, std::move(t));
}

// ---------------------------------------------------------------------------
// validation, coboundaries

CocycleValidation validate_cocycle(const TwoCocycle& f) {
  const int n = f.group->order();
  if ((int)f.val.size() != n) return {false, "table size mismatch", std::nullopt};
  for (const auto& row : f.val) {
    if ((int)row.size() != n) return {false, "table size mismatch", std::nullopt};
    for (const auto& v : row) {
      if (!v.valid() || v.is_zero()) return {false, "not unit-valued", std::nullopt};
    }
  }
  const int id = f.group->identity();
  for (int g = 0; g < n; ++g) {
    if (!f.val[id][g].is_one() || !f.val[g][id].is_one()) {
      return {false, "not normalized at identity", std::array<int, 3>{id, g, id}};
    }
  }
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      for (int k = 0; k < n; ++k) {
        FieldElement lhs = f.val[g][h] * f.val[f.group->mul(g, h)][k];
        FieldElement rhs = f.action.act(g, f.val[h][k]) * f.val[g][f.group->mul(h, k)];
        if (!(lhs == rhs)) {
          return {false, "cocycle identity fails", std::array<int, 3>{g, h, k}};
        }
      }
    }
  }
  return {};
}

OneCochain OneCochain::constant_one(GroupPtr g, const FieldPtr& f) {
  return {g, std::vector<FieldElement>(g->order(), f->one())};
}

TwoCocycle apply_coboundary(const TwoCocycle& f, const OneCochain& c) {
  CROSSED_CHECK(c.group.get() == f.group.get(), "cochain lives on a different group");
  const int n = f.group->order();
  CROSSED_CHECK((int)c.c.size() == n, "cochain table size mismatch");
  CROSSED_CHECK(c.c[f.group->identity()].is_one(), "cochain must send identity to 1");
  std::vector<std::vector<FieldElement>> t(n, std::vector<FieldElement>(n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      t[x][y] = f.val[x][y] * c.c[x] * f.action.act(x, c.c[y]) / c.c[f.group->mul(x, y)];
    }
  }
  return TwoCocycle::from_table(f.group, f.action, std::move(t));
}

bool is_coset_invariant(const TwoCocycle& f, const Subgroup& A) {
  const int n = f.group->order();
  for (int g1 = 0; g1 < n; ++g1) {
    for (int g2 = 0; g2 < n; ++g2) {
      for (int a : A.elems) {
        if (!(f.val[g1][f.group->mul(g2, a)] == f.val[g1][g2])) return false;
      }
    }
  }
  return true;
}

bool is_coset_invariant_both(const TwoCocycle& f, const Subgroup& A) {
  if (!is_coset_invariant(f, A)) return false;
  const int n = f.group->order();
  for (int g1 = 0; g1 < n; ++g1) {
    for (int a : A.elems) {
      for (int g2 = 0; g2 < n; ++g2) {
        if (!(f.val[f.group->mul(g1, a)][g2] == f.val[g1][g2])) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// normalization

NormalizeResult normalize_on_cyclic_subgroup(const TwoCocycle& f, const Subgroup& A) {
  const auto& g = *f.group;
  const int n_a = A.order();
  if (!is_subgroup(A)) throw invalid_input("normalization target is not a subgroup");
  if (!is_normal(A)) throw invalid_input("normalization needs a normal subgroup");
  for (int a : A.elems) {
    if (f.action.frob[a] != 0) throw invalid_input("normalization needs A acting trivially");
  }
  int gen = -1;
  for (int a : A.elems) {
    if (g.element_order(a) == n_a) {
      gen = a;
      break;
    }
  }
  if (gen < 0) throw invalid_input("unsupported: non-cyclic A");

  // certificate: U_gen^|A| = alpha U_1 must have an |A|-th root
  FieldElement alpha = f.unit_power_coeff(gen, (uint32_t)n_a);
  auto beta = nth_root(alpha, (uint64_t)n_a);
  if (!beta) throw invalid_input("A outside ker(res): restriction of the cocycle is nontrivial");

  // chain coefficients C_i with U_gen^i = C_i * U_{gen^i}
  std::vector<FieldElement> chain(n_a, f.field()->one());
  {
    int cur = gen;
    for (int i = 2; i < n_a; ++i) {
      chain[i] = chain[i - 1] * f.val[cur][gen];
      cur = g.mul(cur, gen);
    }
  }
  // positions of powers of gen
  std::vector<int> apow(n_a);
  {
    int cur = g.identity();
    for (int i = 0; i < n_a; ++i) {
      apow[i] = cur;
      cur = g.mul(cur, gen);
    }
  }
  // least-index representative of each left coset xA; the coset of A itself
  // is represented by the identity so U_1 stays fixed
  const int n = g.order();
  std::vector<int> rep_of(n, -1);
  for (int x = 0; x < n; ++x) {
    if (rep_of[x] >= 0) continue;
    int r = x;
    for (int a : A.elems) r = std::min(r, g.mul(x, a));
    if (A.contains(x)) r = g.identity();
    for (int a : A.elems) rep_of[g.mul(x, a)] = r;
  }
  // new basis V_{r a^i} = U_r * (beta^-1 U_gen)^i, recorded as the relating
  // cochain c with V_x = c(x) U_x
  OneCochain c{f.group, std::vector<FieldElement>(n)};
  FieldElement beta_inv = inverse(*beta);
  for (int x = 0; x < n; ++x) {
    int r = rep_of[x];
    int i = -1;
    for (int j = 0; j < n_a; ++j) {
      if (g.mul(r, apow[j]) == x) {
        i = j;
        break;
      }
    }
    CROSSED_CHECK(i >= 0, "coset decomposition failed");
    FieldElement scale = pow(beta_inv, i) * chain[i];
    c.c[x] = f.action.act(r, scale) * f.val[r][apow[i]];
  }
  CROSSED_CHECK(c.c[g.identity()].is_one(), "normalization cochain must fix the identity");
  TwoCocycle out = apply_coboundary(f, c);
  CROSSED_CHECK(is_coset_invariant(out, A), "normalization failed to reach coset invariance");
  for (int a : A.elems) {
    for (int b : A.elems) {
      CROSSED_CHECK(out.val[a][b].is_one(), "normalization failed on A x A");
    }
  }
  return {std::move(out), std::move(c), gen, *beta};
}

RestrictedCocycle restrict_cocycle(const TwoCocycle& f, const Subgroup& H) {
  EmbeddedGroup e = as_group(H);
  GroupAction act = f.action.restricted(e);
  const int m = H.order();
  std::vector<std::vector<FieldElement>> t(m, std::vector<FieldElement>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) t[i][j] = f.val[e.to_parent[i]][e.to_parent[j]];
  }
  return {TwoCocycle::from_table(e.group, std::move(act), std::move(t)), std::move(e)};
}

TwoCocycle inflate_cocycle(const TwoCocycle& f_quot, const Quotient& q, GroupAction action_on_g) {
  const auto& g = *action_on_g.group;
  CROSSED_CHECK((int)q.projection.size() == g.order(), "quotient does not match the group");
  CROSSED_CHECK(f_quot.group.get() == q.group.get(), "cocycle does not live on the quotient");
  const int n = g.order();
  std::vector<std::vector<FieldElement>> t(n, std::vector<FieldElement>(n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) t[x][y] = f_quot.val[q.projection[x]][q.projection[y]];
  }
  return TwoCocycle::from_table(action_on_g.group, action_on_g, std::move(t));
}

// ---------------------------------------------------------------------------
// characters

const FieldElement& Character::eval(int parent_element) const {
  auto it = std::lower_bound(domain.begin(), domain.end(), parent_element);
  CROSSED_CHECK(it != domain.end() && *it == parent_element,
                "character evaluated outside its domain");
  return values[(size_t)(it - domain.begin())];
}

bool Character::is_trivial() const {
  return std::all_of(values.begin(), values.end(),
                     [](const FieldElement& v) { return v.is_one(); });
}

Character Character::times(const Character& o) const {
  CROSSED_CHECK(domain == o.domain, "character product across different domains");
  Character r = *this;
  for (size_t i = 0; i < values.size(); ++i) r.values[i] = values[i] * o.values[i];
  return r;
}

Character Character::inverse() const {
  Character r = *this;
  for (auto& v : r.values) v = crossed::inverse(v);
  return r;
}

bool Character::operator==(const Character& o) const {
  return domain == o.domain && values == o.values;
}

std::vector<Character> character_group(const Subgroup& A, const FieldPtr& field) {
  if (!is_abelian(A)) throw invalid_input("character group needs an abelian subgroup");
  auto basis = abelian_cyclic_basis(A);
  const auto& g = *A.parent;
  // value assignment per basis tuple; exponent of A = lcm of orders
  uint64_t exponent = 1;
  for (auto& [x, o] : basis) exponent = std::lcm<uint64_t>(exponent, (uint64_t)o);
  FieldElement zeta = exponent == 1 ? field->one() : primitive_root_of_unity(field, exponent);

  // decompose each element over the basis
  const size_t r = basis.size();
  std::map<int, std::vector<int>> expo;
  {
    std::vector<int> t(r, 0);
    bool done = r == 0;
    expo[g.identity()] = t;
    while (!done) {
      size_t i = 0;
      while (i < r) {
        if (++t[i] < basis[i].second) break;
        t[i] = 0;
        ++i;
      }
      if (i == r) break;
      int x = g.identity();
      for (size_t j = 0; j < r; ++j) x = g.mul(x, g.power(basis[j].first, t[j]));
      expo[x] = t;
    }
  }
  CROSSED_CHECK((int)expo.size() == A.order(), "basis decomposition incomplete");

  std::vector<Character> out;
  std::vector<int> j(r, 0);
  while (true) {
    Character chi{A.parent, A.elems, {}};
    chi.values.reserve(A.elems.size());
    for (int x : A.elems) {
      const auto& t = expo.at(x);
      uint64_t e = 0;
      for (size_t i = 0; i < r; ++i) {
        e += (uint64_t)j[i] * (uint64_t)t[i] * (exponent / (uint64_t)basis[i].second);
      }
      chi.values.push_back(pow(zeta, (int64_t)(e % exponent)));
    }
    out.push_back(std::move(chi));
    size_t i = 0;
    while (i < r) {
      if (++j[i] < basis[i].second) break;
      j[i] = 0;
      ++i;
    }
    if (i == r) break;
  }
  CROSSED_CHECK((int)out.size() == A.order(), "character count mismatch");
  return out;
}

Character twist_character(const Character& chi, int g, const GroupAction& action) {
  const auto& grp = *action.group;
  Character out = chi;
  for (size_t i = 0; i < chi.domain.size(); ++i) {
    int a = chi.domain[i];
    int pre = grp.conjugate(grp.inv(g), a);  // g^-1 a g
    out.values[i] = action.act(g, chi.eval(pre));
  }
  return out;
}

// ---------------------------------------------------------------------------
// the pi map

PiMap pi_map(const TwoCocycle& f, const Subgroup& A) {
  if (!is_coset_invariant(f, A)) {
    throw invalid_input("cocycle is not coset-invariant for A; normalize first");
  }
  if (!is_abelian(A)) throw invalid_input("pi map needs an abelian subgroup");
  for (int a : A.elems) {
    if (f.action.frob[a] != 0) throw invalid_input("pi map needs A acting trivially");
  }
  Quotient q = quotient_group(f.group, A);
  const auto& g = *f.group;
  PiMap pm{A, q, {}};
  pm.chi.reserve(q.rep.size());
  for (size_t c = 0; c < q.rep.size(); ++c) {
    int grep = q.rep[c];
    Character chi{f.group, A.elems, {}};
    for (int a : A.elems) chi.values.push_back(f.val[a][grep]);
    // independence of the representative
    for (int x = 0; x < g.order(); ++x) {
      if (q.projection[x] != (int)c) continue;
      for (size_t i = 0; i < chi.domain.size(); ++i) {
        CROSSED_CHECK(f.val[chi.domain[i]][x] == chi.values[i],
                      "pi value depends on the coset representative");
      }
    }
    // each value is a character of A
    for (int a : A.elems) {
      for (int b : A.elems) {
        CROSSED_CHECK(chi.eval(g.mul(a, b)) == chi.eval(a) * chi.eval(b),
                      "pi value is not multiplicative on A");
      }
    }
    pm.chi.push_back(std::move(chi));
  }
  // 1-cocycle identity pi(xy) = pi(x) * x(pi(y)) with the diagonal action
  for (size_t cx = 0; cx < q.rep.size(); ++cx) {
    for (size_t cy = 0; cy < q.rep.size(); ++cy) {
      int x = q.rep[cx], y = q.rep[cy];
      const Character& lhs = pm.chi[q.projection[g.mul(x, y)]];
      Character rhs = pm.chi[cx].times(twist_character(pm.chi[cy], x, f.action));
      CROSSED_CHECK(lhs == rhs, "pi map fails the 1-cocycle identity");
    }
  }
  return pm;
}

// ---------------------------------------------------------------------------
// brute-force oracles

namespace {

// Enumerates cochains c with c(1) = 1 and unit values in lexicographic order
// of the value-index tuple; calls visit, stops when visit returns true.
template <typename Visit>
std::optional<OneCochain> sweep_cochains(const GroupPtr& g, const FieldPtr& field,
                                         uint64_t budget, Visit visit) {
  if (!field->finite()) {
    throw budget_error("oracle out of range: infinite unit group");
  }
  const uint64_t units = field->size() - 1;
  const int n = g->order();
  uint64_t total = ipow_capped(units, (uint64_t)(n - 1), budget);
  if (total > budget) throw budget_error("oracle out of range");

  std::vector<int> slot;  // non-identity element indices
  for (int x = 0; x < n; ++x) {
    if (x != g->identity()) slot.push_back(x);
  }
  std::vector<uint64_t> digit(slot.size(), 0);
  OneCochain c = OneCochain::constant_one(g, field);
  while (true) {
    for (size_t i = 0; i < slot.size(); ++i) {
      c.c[slot[i]] = field->element_at(1 + digit[i]);  // skip zero
    }
    if (visit(c)) return c;
    size_t i = slot.size();
    while (i > 0) {
      --i;
      if (++digit[i] < units) break;
      digit[i] = 0;
      if (i == 0) return std::nullopt;
    }
    if (slot.empty()) return std::nullopt;
  }
}

}  // namespace

std::optional<OneCochain> brute_force_is_coboundary(const TwoCocycle& f, uint64_t budget) {
  const auto& g = *f.group;
  const int n = g.order();
  return sweep_cochains(f.group, f.field(), budget, [&](const OneCochain& c) {
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        FieldElement dc = c.c[x] * f.action.act(x, c.c[y]) / c.c[g.mul(x, y)];
        if (!(f.val[x][y] == dc)) return false;
      }
    }
    return true;
  });
}

std::optional<OneCochain> brute_force_inflation_witness(const TwoCocycle& f, const Subgroup& A,
                                                        uint64_t budget) {
  if (!is_subgroup(A)) throw invalid_input("inflation test needs a subgroup");
  if (!is_normal(A)) throw invalid_input("inflation test needs a normal subgroup");
  const auto& g = *f.group;
  const int n = g.order();
  return sweep_cochains(f.group, f.field(), budget, [&](const OneCochain& c) {
    // f * dc must be constant on A-cosets in both arguments and 1 on A x A
    auto fdc = [&](int x, int y) {
      return f.val[x][y] * c.c[x] * f.action.act(x, c.c[y]) / c.c[g.mul(x, y)];
    };
    for (int a : A.elems) {
      for (int b : A.elems) {
        if (!fdc(a, b).is_one()) return false;
      }
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        FieldElement base = fdc(x, y);
        for (int a : A.elems) {
          if (!(fdc(x, g.mul(y, a)) == base)) return false;
          if (!(fdc(g.mul(x, a), y) == base)) return false;
        }
      }
    }
    return true;
  });
}

}  // namespace crossed
