#include <doctest.h>

#include <set>

#include "crossed/cocycle.hpp"
#include "helpers.hpp"

using namespace crossed;
using testutil::Rng;

namespace {

FieldPtr f3() { return Field::make_prime(3); }
FieldPtr f5() { return Field::make_prime(5); }
FieldPtr f9() { return Field::make_extension(3, {1, 0, 1}); }

// klein four group with the (-1)^(x1*y2) pairing over the given field
TwoCocycle skew_klein(const FieldPtr& f) {
  auto k4 = FiniteGroup::klein_four();
  return TwoCocycle::bimultiplicative(k4, GroupAction::trivial(k4, f), f->from_integer(-1),
                                      {{0, 1}, {0, 0}});
}

}  // namespace

TEST_CASE("cocycle validation") {
  auto c2 = FiniteGroup::cyclic(2);
  auto triv = TwoCocycle::trivial(c2, GroupAction::trivial(c2, f5()));
  CHECK(validate_cocycle(triv).ok);

  auto skew = skew_klein(f9());
  CHECK(validate_cocycle(skew).ok);

  // perturb one entry: breaks the identity with a witness triple
  auto broken = skew;
  broken.val[1][1] = f9()->one() + f9()->one();
  auto rep = validate_cocycle(broken);
  CHECK_FALSE(rep.ok);
  CHECK(rep.witness.has_value());

  auto zeroed = skew;
  zeroed.val[1][2] = f9()->zero();
  CHECK(validate_cocycle(zeroed).message == "not unit-valued");
}

TEST_CASE("cyclic power cocycle encodes U_a^n = alpha") {
  auto c4 = FiniteGroup::cyclic(4);
  auto f = TwoCocycle::cyclic_power(c4, GroupAction::trivial(c4, f5()), f5()->from_integer(4));
  CHECK(validate_cocycle(f).ok);
  CHECK(f.unit_power_coeff(1, 4) == f5()->from_integer(4));
  CHECK(f.unit_power_coeff(1, 2).is_one());
  // U_{a^2}^2 = f(a^2, a^2) = 4
  CHECK(f.val[2][2] == f5()->from_integer(4));
}

TEST_CASE("normalization reaches coset invariance on C_4 with A = <a^2>") {
  auto c4 = FiniteGroup::cyclic(4);
  auto f = TwoCocycle::cyclic_power(c4, GroupAction::trivial(c4, f5()), f5()->from_integer(4));
  Subgroup A = subgroup_generated(c4, {2});
  CHECK_FALSE(is_coset_invariant(f, A));
  auto norm = normalize_on_cyclic_subgroup(f, A);
  CHECK(norm.root == f5()->from_integer(2));  // beta with beta^2 = 4
  CHECK(is_coset_invariant(norm.cocycle, A));
  CHECK(validate_cocycle(norm.cocycle).ok);
  // cohomologous by construction: the relating cochain is returned
  CHECK(apply_coboundary(f, norm.cochain).val == norm.cocycle.val);
  // and the in-budget exhaustive search also certifies cohomology triviality
  // of the difference: (norm * f^-1) is a coboundary
  auto ratio = norm.cocycle;
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) ratio.val[x][y] = norm.cocycle.val[x][y] / f.val[x][y];
  }
  auto wit = brute_force_is_coboundary(TwoCocycle::from_table(c4, f.action, ratio.val), 1 << 20);
  CHECK(wit.has_value());
}

TEST_CASE("normalization rejects a nontrivial restriction") {
  auto c2 = FiniteGroup::cyclic(2);
  auto f = TwoCocycle::cyclic_power(c2, GroupAction::trivial(c2, f5()), f5()->from_integer(2));
  CHECK_THROWS_WITH_AS(normalize_on_cyclic_subgroup(f, full_subgroup(c2)),
                       doctest::Contains("A outside ker(res)"), invalid_input);
}

TEST_CASE("normalization leaves an already-invariant cocycle with the same pi map") {
  auto skew = skew_klein(f9());
  auto k4 = skew.group;
  Subgroup A = subgroup_generated(k4, {*k4->index_of_label("(a,1)")});
  REQUIRE(is_coset_invariant(skew, A));
  auto norm = normalize_on_cyclic_subgroup(skew, A);
  auto pi_before = pi_map(skew, A);
  auto pi_after = pi_map(norm.cocycle, A);
  for (size_t c = 0; c < pi_before.chi.size(); ++c) {
    CHECK(pi_before.chi[c] == pi_after.chi[c]);
  }
}

TEST_CASE("restriction and inflation") {
  auto k4 = FiniteGroup::klein_four();
  auto act = GroupAction::trivial(k4, f9());
  auto triv = TwoCocycle::trivial(k4, act);
  Subgroup A = subgroup_generated(k4, {*k4->index_of_label("(a,1)")});
  auto r = restrict_cocycle(triv, A);
  CHECK(r.cocycle.group->order() == 2);
  for (auto& row : r.cocycle.val) {
    for (auto& v : row) CHECK(v.is_one());
  }
  // skew pairing restricted to <sigma> is trivial: f(sigma, sigma) = 1
  auto skew = skew_klein(f9());
  auto rs = restrict_cocycle(skew, A);
  for (auto& row : rs.cocycle.val) {
    for (auto& v : row) CHECK(v.is_one());
  }
  // inflate a C_2-cocycle along klein4 -> klein4/<sigma>, then restrict to the kernel
  auto q = quotient_group(k4, A);
  auto fq = TwoCocycle::cyclic_power(q.group, GroupAction::trivial(q.group, f9()),
                                     f9()->from_integer(2));
  auto inf = inflate_cocycle(fq, q, act);
  CHECK(validate_cocycle(inf).ok);
  CHECK(is_coset_invariant_both(inf, A));
  auto back = restrict_cocycle(inf, A);
  for (auto& row : back.cocycle.val) {
    for (auto& v : row) CHECK(v.is_one());
  }
}

TEST_CASE("pi map on the skew klein pairing") {
  auto skew = skew_klein(f9());
  auto k4 = skew.group;
  int sigma = *k4->index_of_label("(a,1)");
  int g = *k4->index_of_label("(1,a)");
  Subgroup A = subgroup_generated(k4, {sigma});
  auto pm = pi_map(skew, A);
  // pi(gbar)(sigma) = f(sigma, g) = -1
  CHECK(pm.at(g).eval(sigma) == f9()->from_integer(-1));
  CHECK(pm.at(k4->identity()).is_trivial());

  // inflated cocycles have trivial pi
  auto q = quotient_group(k4, A);
  auto fq = TwoCocycle::cyclic_power(q.group, GroupAction::trivial(q.group, f9()),
                                     f9()->from_integer(2));
  auto inf = inflate_cocycle(fq, q, skew.action);
  auto pmi = pi_map(inf, A);
  for (const auto& chi : pmi.chi) CHECK(chi.is_trivial());

  // multiplicativity under the cocycle product
  auto prod = skew.product(inf);
  CHECK(is_coset_invariant(prod, A));
  auto pmp = pi_map(prod, A);
  for (size_t c = 0; c < pmp.chi.size(); ++c) {
    CHECK(pmp.chi[c] == pm.chi[c].times(pmi.chi[c]));
    CHECK(pmp.chi[c] == pm.chi[c]);  // the inflated factor contributes nothing
  }
}

TEST_CASE("pi map requires coset invariance") {
  auto c4 = FiniteGroup::cyclic(4);
  auto f = TwoCocycle::cyclic_power(c4, GroupAction::trivial(c4, f5()), f5()->from_integer(4));
  Subgroup A = subgroup_generated(c4, {2});
  CHECK_THROWS_WITH_AS(pi_map(f, A), doctest::Contains("normalize"), invalid_input);
}

TEST_CASE("character groups") {
  auto c2 = FiniteGroup::cyclic(2);
  auto chars2 = character_group(full_subgroup(c2), f5());
  REQUIRE(chars2.size() == 2);
  CHECK(chars2[0].eval(1) == f5()->from_integer(1));
  CHECK(chars2[1].eval(1) == f5()->from_integer(4));

  auto c4 = FiniteGroup::cyclic(4);
  auto chars4 = character_group(full_subgroup(c4), f5());
  REQUIRE(chars4.size() == 4);
  // values at the generator are exactly the powers of zeta = 2
  std::set<uint64_t> vals;
  for (auto& chi : chars4) vals.insert(f5()->index_of(chi.eval(1)));
  CHECK(vals == std::set<uint64_t>{1, 2, 3, 4});
  // closed under product
  for (auto& x : chars4) {
    for (auto& y : chars4) {
      auto p = x.times(y);
      bool found = false;
      for (auto& z : chars4) found = found || z == p;
      CHECK(found);
    }
  }
  auto trivial = character_group(trivial_subgroup(c4), f5());
  CHECK(trivial.size() == 1);
  // missing roots of unity: C_3 characters over F_5 need cube roots
  auto c3 = FiniteGroup::cyclic(3);
  CHECK_THROWS_AS(character_group(full_subgroup(c3), f5()), invalid_input);
}

TEST_CASE("brute force coboundary search") {
  auto c2 = FiniteGroup::cyclic(2);
  auto act = GroupAction::trivial(c2, f5());
  // a coboundary is recognized with a witness
  Rng rng;
  OneCochain c{c2, {f5()->one(), f5()->from_integer(3)}};
  auto f = apply_coboundary(TwoCocycle::trivial(c2, act), c);
  auto wit = brute_force_is_coboundary(f, 100);
  REQUIRE(wit.has_value());
  auto check = apply_coboundary(TwoCocycle::trivial(c2, act), *wit);
  CHECK(check.val == f.val);

  // U_sigma^2 = 2 is not a coboundary over F_5 (2 is not a square)
  auto f2 = TwoCocycle::cyclic_power(c2, act, f5()->from_integer(2));
  CHECK_FALSE(brute_force_is_coboundary(f2, 100).has_value());

  // budget is fail-closed
  auto c6 = FiniteGroup::cyclic(6);
  auto f6 = TwoCocycle::trivial(c6, GroupAction::trivial(c6, f5()));
  CHECK_THROWS_AS(brute_force_is_coboundary(f6, 10), budget_error);
}

TEST_CASE("brute force inflation search matches the pi obstruction") {
  // skew pairing over F_3: pi(gbar)(sigma) = -1 obstructs inflation
  auto skew = skew_klein(f3());
  auto k4 = skew.group;
  Subgroup A = subgroup_generated(k4, {*k4->index_of_label("(a,1)")});
  CHECK_FALSE(brute_force_inflation_witness(skew, A, 1 << 20).has_value());

  // an actually inflated cocycle is found, with a usable witness
  auto q = quotient_group(k4, A);
  auto fq = TwoCocycle::cyclic_power(q.group, GroupAction::trivial(q.group, f3()),
                                     f3()->from_integer(2));
  auto inf = inflate_cocycle(fq, q, skew.action);
  auto wit = brute_force_inflation_witness(inf, A, 1 << 20);
  CHECK(wit.has_value());
}

TEST_CASE("pi shift under a coboundary is a character coboundary") {
  // property over F_3 and F_5, |G| <= 8, abelian sweeps
  for (const auto& field : {f3(), f5()}) {
    for (auto group : {FiniteGroup::cyclic(4), FiniteGroup::cyclic(8),
                       FiniteGroup::klein_four(), FiniteGroup::product_of_cyclics({4, 2})}) {
      if (field->characteristic() == 3 && group->order() % 2 == 0) {
        // still fine: means values live in {1,2}; keep going
      }
      auto act = GroupAction::trivial(group, field);
      // A = <x> for a deterministic order-2 element
      int gen = -1;
      for (int x = 0; x < group->order(); ++x) {
        if (group->element_order(x) == 2) {
          gen = x;
          break;
        }
      }
      REQUIRE(gen >= 0);
      Subgroup A = subgroup_generated(group, {gen});
      auto f0 = TwoCocycle::trivial(group, act);
      REQUIRE(is_coset_invariant(f0, A));
      auto pi0 = pi_map(f0, A);
      // karp-preserving cochains factor as psi(rep) * phi(a) with phi a character
      auto chars = character_group(A, field);
      Quotient q = quotient_group(group, A);
      Rng rng;
      for (const auto& phi : chars) {
        OneCochain c{group, std::vector<FieldElement>(group->order(), field->one())};
        std::vector<FieldElement> psi;
        for (size_t i = 0; i < q.rep.size(); ++i) {
          psi.push_back(field->element_at(1 + rng.below(field->size() - 1)));
        }
        psi[q.projection[group->identity()]] = field->one();
        // rep of identity coset must itself be scaled by 1 at the identity:
        // c(r a^i) = psi(coset) * phi(a^i)
        for (int x = 0; x < group->order(); ++x) {
          int r = q.rep[q.projection[x]];
          int ai = group->mul(group->inv(r), x);
          c.c[x] = psi[q.projection[x]] * phi.eval(ai);
        }
        if (!c.c[group->identity()].is_one()) continue;
        auto f1 = apply_coboundary(f0, c);
        if (!is_coset_invariant(f1, A)) continue;
        auto pi1 = pi_map(f1, A);
        // pi1 = pi0 * (phi / gbar(phi)) pointwise
        for (size_t cs = 0; cs < pi1.chi.size(); ++cs) {
          int grep = q.rep[cs];
          Character shift = phi.times(twist_character(phi, grep, act).inverse());
          CHECK(pi1.chi[cs] == pi0.chi[cs].times(shift));
        }
      }
    }
  }
}

TEST_CASE("inflated iff pi is a coboundary iff the exhaustive witness exists") {
  // in-budget sweep over C_4 cyclic cocycles with A the order-2 subgroup
  auto field = f5();
  auto c4 = FiniteGroup::cyclic(4);
  auto act = GroupAction::trivial(c4, field);
  Subgroup A = subgroup_generated(c4, {2});
  auto chars = character_group(A, field);
  for (uint64_t ai = 1; ai < 5; ++ai) {
    auto alpha = field->from_integer((int64_t)ai);
    auto f = TwoCocycle::cyclic_power(c4, act, alpha);
    // restriction to A is trivial iff alpha (=U_{a^2}^2 value) is a square
    bool res_trivial = nth_root(f.val[2][2], 2).has_value();
    if (!res_trivial) continue;
    auto norm = normalize_on_cyclic_subgroup(f, A);
    auto pm = pi_map(norm.cocycle, A);
    // pi a coboundary: exists phi with pi(gbar) = phi / gbar(phi) for all gbar
    bool pi_cob = false;
    for (const auto& phi : chars) {
      bool all = true;
      for (size_t cs = 0; cs < pm.chi.size(); ++cs) {
        int grep = pm.cosets.rep[cs];
        Character shift = phi.times(twist_character(phi, grep, act).inverse());
        all = all && (pm.chi[cs] == shift);
      }
      pi_cob = pi_cob || all;
    }
    bool inflated = brute_force_inflation_witness(f, A, 1 << 20).has_value();
    CHECK(pi_cob == inflated);
  }
}
