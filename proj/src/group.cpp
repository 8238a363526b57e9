#include "crossed/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace crossed {

// ---------------------------------------------------------------------------
// FiniteGroup

GroupPtr FiniteGroup::from_table(std::vector<std::vector<int>> table,
                                 std::vector<std::string> labels) {
  const int n = (int)table.size();
  if (n == 0 || n > 64) throw invalid_input("group order must be in [1, 64]");
  for (const auto& row : table) {
    if ((int)row.size() != n) throw invalid_input("multiplication table is not square");
    for (int v : row) {
      if (v < 0 || v >= n) throw invalid_input("multiplication table entry out of range");
    }
  }
  if (labels.empty()) {
    for (int i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  }
  if ((int)labels.size() != n) throw invalid_input("label count differs from group order");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && labels[i] == labels[j]) throw invalid_input("duplicate element label");
    }
  }
  // identity
  int id = -1;
  for (int e = 0; e < n && id < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) id = e;
  }
  if (id < 0) throw invalid_input("multiplication table has no identity");
  // associativity, exhaustively
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          throw invalid_input("multiplication table is not associative");
        }
      }
    }
  }
  std::vector<int> inv(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (table[a][b] == id && table[b][a] == id) {
        inv[a] = b;
        break;
      }
    }
    if (inv[a] < 0) throw invalid_input("group element has no inverse");
  }
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->n_ = n;
  g->id_ = id;
  g->table_ = std::move(table);
  g->inv_ = std::move(inv);
  g->labels_ = std::move(labels);
  return g;
}

GroupPtr FiniteGroup::cyclic(int n) {
  if (n < 1 || n > 64) throw invalid_input("cyclic group order must be in [1, 64]");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    labels.push_back(i == 0 ? "1" : (i == 1 ? "a" : "a" + std::to_string(i)));
  }
  auto g = std::const_pointer_cast<FiniteGroup>(from_table(std::move(t), std::move(labels)));
  if (n > 1) g->decomp_ = Decomposition{{1}, {n}};
  return g;
}

GroupPtr FiniteGroup::product_of_cyclics(const std::vector<int>& orders) {
  if (orders.empty()) throw invalid_input("empty product of cyclic groups");
  int n = 1;
  for (int m : orders) {
    if (m < 1) throw invalid_input("cyclic factor order must be positive");
    n *= m;
    if (n > 64) throw invalid_input("group order must be <= 64");
  }
  const int r = (int)orders.size();
  auto tuple_of = [&](int idx) {
    std::vector<int> t(r);
    for (int i = r - 1; i >= 0; --i) {
      t[i] = idx % orders[i];
      idx /= orders[i];
    }
    return t;
  };
  auto index_of = [&](const std::vector<int>& t) {
    int idx = 0;
    for (int i = 0; i < r; ++i) idx = idx * orders[i] + t[i];
    return idx;
  };
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    auto ta = tuple_of(a);
    for (int b = 0; b < n; ++b) {
      auto tb = tuple_of(b);
      std::vector<int> tc(r);
      for (int i = 0; i < r; ++i) tc[i] = (ta[i] + tb[i]) % orders[i];
      table[a][b] = index_of(tc);
    }
  }
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    auto t = tuple_of(a);
    std::string s = "(";
    for (int i = 0; i < r; ++i) {
      if (i) s += ",";
      s += t[i] == 0 ? "1" : (t[i] == 1 ? "a" : "a" + std::to_string(t[i]));
    }
    s += ")";
    labels.push_back(s);
  }
  auto g = std::const_pointer_cast<FiniteGroup>(from_table(std::move(table), std::move(labels)));
  Decomposition d;
  for (int i = 0; i < r; ++i) {
    std::vector<int> t(r, 0);
    t[i] = orders[i] > 1 ? 1 : 0;
    d.generators.push_back(index_of(t));
    d.orders.push_back(orders[i]);
  }
  g->decomp_ = d;
  return g;
}

GroupPtr FiniteGroup::klein_four() { return product_of_cyclics({2, 2}); }

GroupPtr FiniteGroup::symmetric3() {
  // permutations of {1,2,3} in a fixed listing
  const std::vector<std::vector<int>> perms = {
      {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  const std::vector<std::string> labels = {"1", "(12)", "(13)", "(23)", "(123)", "(132)"};
  auto compose = [&](int a, int b) {  // (a then b applied second): (ab)(x) = a(b(x))
    std::vector<int> c(3);
    for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
    for (int i = 0; i < 6; ++i) {
      if (perms[i] == c) return i;
    }
    throw internal_error("permutation composition fell outside the listing");
  };
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) table[a][b] = compose(a, b);
  }
  return from_table(std::move(table), labels);
}

int FiniteGroup::power(int a, int64_t e) const {
  int ord = element_order(a);
  int64_t r = e % ord;
  if (r < 0) r += ord;
  int acc = id_;
  for (int64_t i = 0; i < r; ++i) acc = mul(acc, a);
  return acc;
}

int FiniteGroup::element_order(int a) const {
  int acc = a;
  int ord = 1;
  while (acc != id_) {
    acc = mul(acc, a);
    ++ord;
  }
  return ord;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a) {
    for (int b = a + 1; b < n_; ++b) {
      if (table_[a][b] != table_[b][a]) return false;
    }
  }
  return true;
}

std::optional<int> FiniteGroup::index_of_label(const std::string& s) const {
  for (int i = 0; i < n_; ++i) {
    if (labels_[i] == s) return i;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// subgroups

bool Subgroup::contains(int g) const {
  return std::binary_search(elems.begin(), elems.end(), g);
}

bool Subgroup::operator==(const Subgroup& o) const {
  return parent.get() == o.parent.get() && elems == o.elems;
}

Subgroup trivial_subgroup(const GroupPtr& g) { return {g, {g->identity()}}; }

Subgroup full_subgroup(const GroupPtr& g) {
  std::vector<int> all(g->order());
  std::iota(all.begin(), all.end(), 0);
  return {g, std::move(all)};
}

Subgroup subgroup_generated(const GroupPtr& g, const std::vector<int>& gens) {
  std::set<int> closed{g->identity()};
  std::vector<int> frontier{g->identity()};
  for (int x : gens) {
    if (x < 0 || x >= g->order()) throw invalid_input("generator index out of range");
    if (closed.insert(x).second) frontier.push_back(x);
  }
  while (!frontier.empty()) {
    int x = frontier.back();
    frontier.pop_back();
    for (int y : std::set<int>(closed)) {
      for (int z : {g->mul(x, y), g->mul(y, x), g->inv(x)}) {
        if (closed.insert(z).second) frontier.push_back(z);
      }
    }
  }
  return {g, std::vector<int>(closed.begin(), closed.end())};
}

bool is_subgroup(const Subgroup& h) {
  const auto& g = *h.parent;
  if (!h.contains(g.identity())) return false;
  for (int a : h.elems) {
    if (!h.contains(g.inv(a))) return false;
    for (int b : h.elems) {
      if (!h.contains(g.mul(a, b))) return false;
    }
  }
  return true;
}

bool is_normal(const Subgroup& h) {
  const auto& g = *h.parent;
  for (int x = 0; x < g.order(); ++x) {
    for (int a : h.elems) {
      if (!h.contains(g.conjugate(x, a))) return false;
    }
  }
  return true;
}

bool is_abelian(const Subgroup& h) {
  const auto& g = *h.parent;
  for (int a : h.elems) {
    for (int b : h.elems) {
      if (g.mul(a, b) != g.mul(b, a)) return false;
    }
  }
  return true;
}

Subgroup conjugate_subgroup(const Subgroup& h, int g) {
  std::vector<int> out;
  for (int a : h.elems) out.push_back(h.parent->conjugate(g, a));
  std::sort(out.begin(), out.end());
  return {h.parent, std::move(out)};
}

EmbeddedGroup as_group(const Subgroup& h) {
  CROSSED_CHECK(is_subgroup(h), "as_group on a set that is not a subgroup");
  const auto& g = *h.parent;
  const int m = h.order();
  std::vector<int> from_parent(g.order(), -1);
  for (int i = 0; i < m; ++i) from_parent[h.elems[i]] = i;
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) {
    labels.push_back(g.label(h.elems[i]));
    for (int j = 0; j < m; ++j) table[i][j] = from_parent[g.mul(h.elems[i], h.elems[j])];
  }
  return {FiniteGroup::from_table(std::move(table), std::move(labels)), h.elems, from_parent};
}

Quotient quotient_group(const GroupPtr& g, const Subgroup& normal) {
  if (!is_subgroup(normal)) throw invalid_input("quotient undefined: not a subgroup");
  if (!is_normal(normal)) throw invalid_input("quotient undefined: subgroup is not normal");
  const int n = g->order();
  std::vector<int> proj(n, -1);
  std::vector<int> rep;
  for (int x = 0; x < n; ++x) {
    if (proj[x] >= 0) continue;
    int c = (int)rep.size();
    rep.push_back(x);
    for (int a : normal.elems) proj[g->mul(x, a)] = c;
  }
  const int m = (int)rep.size();
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) {
    labels.push_back("[" + g->label(rep[i]) + "]");
    for (int j = 0; j < m; ++j) table[i][j] = proj[g->mul(rep[i], rep[j])];
  }
  auto q = FiniteGroup::from_table(std::move(table), std::move(labels));
  // surjective homomorphism with the given kernel
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      CROSSED_CHECK(q->mul(proj[x], proj[y]) == proj[g->mul(x, y)],
                    "quotient projection is not a homomorphism");
    }
  }
  return {q, std::move(proj), std::move(rep)};
}

Subgroup sylow_subgroup(const Subgroup& within, uint32_t p) {
  const auto& g = *within.parent;
  if (p == 0) return trivial_subgroup(within.parent);
  std::vector<int> gens;
  for (int a : within.elems) {
    int ord = g.element_order(a);
    bool p_power = true;
    while (ord > 1) {
      if (ord % (int)p != 0) {
        p_power = false;
        break;
      }
      ord /= (int)p;
    }
    if (p_power) gens.push_back(a);
  }
  Subgroup s = subgroup_generated(within.parent, gens);
  // order must be the full p-part when the collected set is already closed
  for (int a : s.elems) {
    CROSSED_CHECK(within.contains(a), "sylow closure escaped the ambient subgroup");
  }
  return s;
}

Subgroup commutator_subgroup(const GroupPtr& g) {
  std::vector<int> gens;
  for (int a = 0; a < g->order(); ++a) {
    for (int b = 0; b < g->order(); ++b) {
      gens.push_back(g->mul(g->mul(a, b), g->mul(g->inv(a), g->inv(b))));
    }
  }
  return subgroup_generated(g, gens);
}

Subgroup p_prime_torsion(const Subgroup& abelian, uint32_t p) {
  CROSSED_CHECK(is_abelian(abelian), "p-prime torsion needs an abelian subgroup");
  std::vector<int> elems;
  for (int a : abelian.elems) {
    if (abelian.parent->element_order(a) % (int)p != 0) elems.push_back(a);
  }
  Subgroup s{abelian.parent, elems};
  CROSSED_CHECK(is_subgroup(s), "p-prime torsion of an abelian group must be a subgroup");
  return s;
}

bool internal_direct_product_check(const Subgroup& whole, const Subgroup& P, const Subgroup& C) {
  const auto& g = *whole.parent;
  std::vector<int> inter;
  std::set_intersection(P.elems.begin(), P.elems.end(), C.elems.begin(), C.elems.end(),
                        std::back_inserter(inter));
  if (inter != std::vector<int>{g.identity()}) return false;
  if ((int)P.elems.size() * (int)C.elems.size() != whole.order()) return false;
  for (int a : P.elems) {
    for (int b : C.elems) {
      if (g.mul(a, b) != g.mul(b, a)) return false;
    }
  }
  std::set<int> span;
  for (int a : P.elems) {
    for (int b : C.elems) span.insert(g.mul(a, b));
  }
  if ((int)span.size() != whole.order()) return false;
  for (int x : whole.elems) {
    for (int a : P.elems) {
      if (!P.contains(g.conjugate(x, a))) return false;
    }
    for (int b : C.elems) {
      if (!C.contains(g.conjugate(x, b))) return false;
    }
  }
  return true;
}

std::vector<Subgroup> enumerate_all_subgroups(const GroupPtr& g) {
  const int n = g->order();
  if (n > 16) throw budget_error("subgroup enumeration is limited to order <= 16");
  std::vector<Subgroup> out;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!(mask & (1u << g->identity()))) continue;
    std::vector<int> elems;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) elems.push_back(i);
    }
    if (n % (int)elems.size() != 0) continue;
    Subgroup s{g, std::move(elems)};
    if (is_subgroup(s)) out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::pair<int, int>> abelian_cyclic_basis(const Subgroup& a) {
  CROSSED_CHECK(is_abelian(a), "cyclic basis needs an abelian subgroup");
  const auto& g = *a.parent;
  if (a.order() == 1) return {};

  // split into Sylow parts, then basis each p-part by maximal-order peeling
  std::vector<std::pair<int, int>> basis;
  int m = a.order();
  std::vector<int> primes;
  for (int d = 2; d <= m; ++d) {
    if (m % d == 0) {
      primes.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  for (int p : primes) {
    Subgroup part = sylow_subgroup(a, (uint32_t)p);
    // peel generators of maximal order from the p-group
    std::vector<int> chosen;  // generators picked so far
    auto span_of = [&](const std::vector<int>& gens) { return subgroup_generated(a.parent, gens); };
    Subgroup span = span_of(chosen);
    while (span.order() < part.order()) {
      // candidate with maximal order whose cyclic group meets the span trivially
      // in the quotient sense: ord of image in part/span is maximal
      int best = -1, best_ord = 0;
      for (int x : part.elems) {
        // order of the image of x modulo span
        int ord = 1;
        int acc = x;
        while (!span.contains(acc)) {
          acc = g.mul(acc, x);
          ++ord;
        }
        if (ord > best_ord || (ord == best_ord && (best < 0 || x < best))) {
          best = x;
          best_ord = ord;
        }
      }
      CROSSED_CHECK(best >= 0 && best_ord > 1, "abelian basis peeling stalled");
      // adjust so that best^best_ord = 1, not merely inside the span: since
      // chosen generators have maximal orders, best^best_ord is a (best_ord)-th
      // power of a span element; divide it out
      int x = best;
      int xo = g.power(x, best_ord);
      if (xo != g.identity()) {
        // find s in span with s^best_ord = xo, replace x by x * s^-1
        int fix = -1;
        for (int s : span.elems) {
          if (g.power(s, best_ord) == xo) {
            fix = s;
            break;
          }
        }
        CROSSED_CHECK(fix >= 0, "abelian basis adjustment failed");
        x = g.mul(x, g.inv(fix));
      }
      CROSSED_CHECK(g.power(x, best_ord) == g.identity(), "adjusted generator has wrong order");
      CROSSED_CHECK(g.element_order(x) == best_ord, "adjusted generator has wrong order");
      chosen.push_back(x);
      Subgroup next = span_of(chosen);
      CROSSED_CHECK(next.order() == span.order() * best_ord, "basis factor is not independent");
      span = next;
      basis.push_back({x, best_ord});
    }
  }
  // verify joint generation
  std::vector<int> all_gens;
  for (auto& [x, o] : basis) all_gens.push_back(x);
  CROSSED_CHECK(subgroup_generated(a.parent, all_gens).elems == a.elems,
                "cyclic basis does not generate the subgroup");
  return basis;
}

// ---------------------------------------------------------------------------
// actions

GroupAction GroupAction::trivial(GroupPtr g, FieldPtr f) {
  GroupAction a;
  a.frob.assign(g->order(), 0);
  a.group = std::move(g);
  a.field = std::move(f);
  return a;
}

GroupAction GroupAction::from_powers(GroupPtr g, FieldPtr f, std::vector<uint32_t> powers) {
  if ((int)powers.size() != g->order()) {
    throw invalid_input("action must assign an automorphism to every element");
  }
  const uint32_t e = f->degree();
  for (auto& k : powers) k %= e;
  for (int x = 0; x < g->order(); ++x) {
    for (int y = 0; y < g->order(); ++y) {
      if (powers[g->mul(x, y)] != (powers[x] + powers[y]) % e) {
        throw invalid_input("action is not a homomorphism into the automorphism group");
      }
    }
  }
  if (powers[g->identity()] != 0) throw invalid_input("action must send identity to identity");
  GroupAction a;
  a.group = std::move(g);
  a.field = std::move(f);
  a.frob = std::move(powers);
  return a;
}

GroupAction GroupAction::from_generator_powers(
    GroupPtr g, FieldPtr f, const std::vector<std::pair<int, uint32_t>>& gens) {
  const uint32_t e = f->degree();
  std::vector<int> known(g->order(), -1);
  known[g->identity()] = 0;
  for (auto& [x, k] : gens) {
    if (x < 0 || x >= g->order()) throw invalid_input("action generator index out of range");
    int v = (int)(k % e);
    if (known[x] >= 0 && known[x] != v) throw invalid_input("conflicting action assignment");
    known[x] = v;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < g->order(); ++x) {
      if (known[x] < 0) continue;
      for (int y = 0; y < g->order(); ++y) {
        if (known[y] < 0) continue;
        int z = g->mul(x, y);
        int v = (known[x] + known[y]) % (int)e;
        if (known[z] < 0) {
          known[z] = v;
          changed = true;
        } else if (known[z] != v) {
          throw invalid_input("action is not a homomorphism into the automorphism group");
        }
      }
    }
  }
  for (int x = 0; x < g->order(); ++x) {
    if (known[x] < 0) throw invalid_input("action generators do not generate the group");
  }
  std::vector<uint32_t> powers(known.begin(), known.end());
  return from_powers(std::move(g), std::move(f), std::move(powers));
}

AutomorphismSpec GroupAction::spec(int g) const {
  return AutomorphismSpec::frobenius(field, frob[g]);
}

FieldElement GroupAction::act(int g, const FieldElement& x) const {
  if (frob[g] == 0) return x;
  return apply_automorphism(spec(g), x);
}

bool GroupAction::is_trivial() const {
  return std::all_of(frob.begin(), frob.end(), [](uint32_t k) { return k == 0; });
}

GroupAction GroupAction::restricted(const EmbeddedGroup& sub) const {
  std::vector<uint32_t> powers;
  for (int p : sub.to_parent) powers.push_back(frob[p]);
  return GroupAction::from_powers(sub.group, field, std::move(powers));
}

Subgroup kernel_of_action(const GroupAction& a) {
  std::vector<int> elems;
  for (int g = 0; g < a.group->order(); ++g) {
    if (a.frob[g] == 0) elems.push_back(g);
  }
  Subgroup k{a.group, std::move(elems)};
  CROSSED_CHECK(is_subgroup(k) && is_normal(k), "action kernel must be a normal subgroup");
  return k;
}

}  // namespace crossed
