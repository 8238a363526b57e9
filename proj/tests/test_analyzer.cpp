#include <doctest.h>

#include "crossed/analyzer.hpp"

using namespace crossed;

namespace {

FieldPtr f5() { return Field::make_prime(5); }
FieldPtr f9() { return Field::make_extension(3, {1, 0, 1}); }
FieldPtr f2t() { return Field::make_ratfunc(Field::make_prime(2), "t"); }
FieldPtr f3t() { return Field::make_ratfunc(Field::make_prime(3), "t"); }
FieldPtr f4t() { return Field::make_ratfunc(Field::make_extension(2, {1, 1, 1}), "t"); }

// F_5, G = G_I = C_2, character sigma -> 4, cocycle U_s^2 = alpha
RamifiedScenario c2_over_f5(const FieldElement& alpha) {
  auto g = FiniteGroup::cyclic(2);
  auto f = f5();
  auto act = GroupAction::trivial(g, f);
  RamifiedScenario s{f, g, act, {{0, f->one()}, {1, f->from_integer(4)}},
                     TwoCocycle::cyclic_power(g, act, alpha)};
  return s;
}

// F_9 with Frobenius on the second klein factor, skew pairing
RamifiedScenario example_c() {
  auto g = FiniteGroup::klein_four();
  auto f = f9();
  int sigma = *g->index_of_label("(a,1)");
  int frob = *g->index_of_label("(1,a)");
  auto act = GroupAction::from_generator_powers(g, f, {{sigma, 0u}, {frob, 1u}});
  RamifiedScenario s{f,
                     g,
                     act,
                     {{g->identity(), f->one()}, {sigma, f->from_integer(2)}},
                     TwoCocycle::bimultiplicative(g, act, f->from_integer(-1), {{0, 1}, {0, 0}})};
  return s;
}

// wholly wild C_p over F_p(t) with U_s^p = alpha
RamifiedScenario wild_cp(const FieldPtr& field, int p, const FieldElement& alpha) {
  auto g = FiniteGroup::cyclic(p);
  auto act = GroupAction::trivial(g, field);
  std::map<int, FieldElement> xbar;
  for (int i = 0; i < p; ++i) xbar[i] = field->one();
  return {field, g, act, xbar, TwoCocycle::cyclic_power(g, act, alpha)};
}

}  // namespace

TEST_CASE("scenario validation accepts the tame cyclic example") {
  auto s = c2_over_f5(f5()->one());
  CHECK(validate_scenario(s).valid);
}

TEST_CASE("scenario validation rejects broken ramification characters") {
  auto g = FiniteGroup::cyclic(2);
  auto f = f5();
  auto act = GroupAction::trivial(g, f);
  auto triv = TwoCocycle::trivial(g, act);
  // not a homomorphism: sigma -> 2 but sigma^2 = 1 and 2^2 = 4 != 1
  RamifiedScenario bad{f, g, act, {{0, f->one()}, {1, f->from_integer(2)}}, triv};
  auto rep = validate_scenario(bad);
  CHECK_FALSE(rep.valid);
  // kernel not a p-group: trivial character on C_2 over characteristic 5
  RamifiedScenario bad2{f, g, act, {{0, f->one()}, {1, f->one()}}, triv};
  auto rep2 = validate_scenario(bad2);
  CHECK_FALSE(rep2.valid);
  REQUIRE(!rep2.violations.empty());
  CHECK(rep2.violations[0] == "character kernel is not a p-group");
  // missing value
  RamifiedScenario bad3{f, g, act, {{0, f->one()}}, triv};
  CHECK_FALSE(validate_scenario(bad3).valid);
  // equivariance: C_16 acting on F_9 by Frobenius; the inertia <a^2> maps onto
  // the order-8 unit group, whose generator is not Frobenius-fixed
  auto c16 = FiniteGroup::cyclic(16);
  auto f9_ = f9();
  auto act16 = GroupAction::from_generator_powers(c16, f9_, {{1, 1u}});
  auto u = f9_->from_fq({0, 1});  // order 8
  std::map<int, FieldElement> xb;
  for (int k = 0; k < 8; ++k) xb[(2 * k) % 16] = pow(u, k);
  RamifiedScenario bad4{f9_, c16, act16, xb, TwoCocycle::trivial(c16, act16)};
  auto rep4 = validate_scenario(bad4);
  CHECK_FALSE(rep4.valid);
  bool saw_equivariance = false;
  for (auto& m : rep4.violations) {
    if (m.find("equivariant") != std::string::npos) saw_equivariance = true;
  }
  CHECK(saw_equivariance);
}

TEST_CASE("inertia split on small examples") {
  auto s = c2_over_f5(f5()->one());
  auto sp = inertia_split(s);
  CHECK(sp.P.order() == 1);
  CHECK(sp.e0 == 2);
  CHECK(sp.sigma0 == 1);
  CHECK(sp.tame);

  // wholly wild: C_2 over F_2(t), trivial character
  auto w = wild_cp(f2t(), 2, f2t()->indeterminate());
  auto wsp = inertia_split(w);
  CHECK(wsp.P.order() == 2);
  CHECK(wsp.e0 == 1);
  CHECK_FALSE(wsp.tame);

  // C_6 over F_3(t): character a -> -1; P = <a^2>, e0 = 2, sigma0 = a^3
  auto c6 = FiniteGroup::cyclic(6);
  auto f = f3t();
  auto act = GroupAction::trivial(c6, f);
  std::map<int, FieldElement> xbar;
  for (int i = 0; i < 6; ++i) xbar[i] = i % 2 ? f->from_integer(2) : f->one();
  RamifiedScenario s6{f, c6, act, xbar, TwoCocycle::trivial(c6, act)};
  REQUIRE(validate_scenario(s6).valid);
  auto sp6 = inertia_split(s6);
  CHECK(sp6.P.elems == std::vector<int>{0, 2, 4});
  CHECK(sp6.e0 == 2);
  CHECK(sp6.sigma0 == 3);
}

TEST_CASE("example A: trivial cocycle on C_2 over F_5 has two maximal orders") {
  auto rep = analyze(c2_over_f5(f5()->one()));
  CHECK(rep.heredity.hereditary);
  CHECK(rep.heredity.tame);
  REQUIRE(rep.gamma.has_value());
  CHECK(rep.gamma->alpha0.is_one());
  CHECK(rep.gamma->d == 2);
  CHECK(rep.gamma->c == 1);
  REQUIRE(rep.conductor.has_value());
  CHECK(rep.conductor->conductor.order() == 2);
  CHECK(rep.conductor->component_count == 2);
  CHECK(rep.oracle_component_count == 2);
  CHECK_FALSE(rep.maximal);
  CHECK(rep.maximal_order_count == 2);
}

TEST_CASE("example B: U_s^2 = 2 on C_2 over F_5 is maximal") {
  auto rep = analyze(c2_over_f5(f5()->from_integer(2)));
  CHECK(rep.heredity.hereditary);
  REQUIRE(rep.gamma.has_value());
  CHECK(rep.gamma->alpha0 == f5()->from_integer(2));
  CHECK(rep.gamma->d == 1);  // 2 is not a square in F_5
  CHECK(rep.conductor->conductor.order() == 1);
  CHECK(rep.oracle_component_count == 1);
  CHECK(rep.maximal);
  CHECK(rep.maximal_order_count == 1);
}

TEST_CASE("gamma drop: e0 = 4 with alpha0 = 4 over F_5 gives d = 2") {
  // fourth powers in F_5 are {1}; squares are {1,4}
  auto g = FiniteGroup::cyclic(4);
  auto f = f5();
  auto act = GroupAction::trivial(g, f);
  std::map<int, FieldElement> xbar;
  for (int i = 0; i < 4; ++i) xbar[i] = pow(f->from_integer(2), i);
  RamifiedScenario s{f, g, act, xbar,
                     TwoCocycle::cyclic_power(g, act, f->from_integer(4))};
  REQUIRE(validate_scenario(s).valid);
  auto rep = analyze(s);
  REQUIRE(rep.gamma.has_value());
  CHECK(rep.gamma->d == 2);
  CHECK(rep.gamma->c == 2);
  CHECK(rep.gamma->gamma.elems == std::vector<int>{0, 2});
  // G = G_I abelian, G/Gamma acts on nothing: pi trivial; two components
  CHECK(rep.conductor->component_count == 2);
  CHECK(rep.oracle_component_count == 2);
}

TEST_CASE("example C: skew klein pairing over F_9 is maximal") {
  auto rep = analyze(example_c());
  CHECK(rep.heredity.hereditary);
  CHECK(rep.split.e0 == 2);
  REQUIRE(rep.gamma.has_value());
  CHECK(rep.gamma->alpha0.is_one());
  CHECK(rep.gamma->d == 2);
  CHECK(rep.conductor->pi_image_order == 2);  // pi(gbar)(sigma) = -1 generates
  CHECK(rep.conductor->conductor.order() == 1);
  CHECK(rep.conductor->component_count == 1);
  CHECK(rep.oracle_component_count == 1);
  CHECK(rep.maximal);
}

TEST_CASE("wild fixtures over F_2(t) and F_3(t)") {
  // U_s^2 = t: hereditary and maximal
  auto rep = analyze(wild_cp(f2t(), 2, f2t()->indeterminate()));
  CHECK(rep.heredity.hereditary);
  CHECK_FALSE(rep.heredity.tame);
  CHECK(rep.gamma->d == 1);
  CHECK(rep.conductor->conductor.order() == 1);
  CHECK(rep.maximal);
  CHECK(rep.maximal_order_count == 1);

  // U_s^2 = t^2: nilpotent witness, not hereditary
  auto t2 = f2t()->indeterminate() * f2t()->indeterminate();
  auto rep2 = analyze(wild_cp(f2t(), 2, t2));
  CHECK_FALSE(rep2.heredity.hereditary);
  CHECK(rep2.heredity.witness.has_value());
  CHECK_FALSE(rep2.maximal);
  CHECK_FALSE(rep2.maximal_order_count.has_value());

  // same over F_3(t) with cubes
  auto t3 = f3t()->indeterminate();
  CHECK(analyze(wild_cp(f3t(), 3, t3)).maximal);
  auto rep3 = analyze(wild_cp(f3t(), 3, t3 * t3 * t3));
  CHECK_FALSE(rep3.heredity.hereditary);
  CHECK(rep3.heredity.witness.has_value());
}

TEST_CASE("mixed wild scenario over F_4(t): P = C_2 via t, e0 = 3") {
  auto g = FiniteGroup::product_of_cyclics({2, 3});
  auto f = f4t();
  auto act = GroupAction::trivial(g, f);
  auto u = f->constant(f->base()->from_fq({0, 1}));  // cube root of unity
  auto dec = g->decomposition();
  // character: trivial on the C_2 factor, injective on the C_3 factor
  std::map<int, FieldElement> xbar;
  for (int x = 0; x < 6; ++x) {
    // exponent of the C_3 generator inside x
    int cur = g->identity();
    int e3 = -1;
    for (int e = 0; e < 3 && e3 < 0; ++e) {
      for (int e2 = 0; e2 < 2 && e3 < 0; ++e2) {
        int cand = g->mul(g->power(dec->generators[0], e2), g->power(dec->generators[1], e));
        if (cand == x) e3 = e;
      }
    }
    (void)cur;
    REQUIRE(e3 >= 0);
    xbar[x] = pow(u, e3);
  }

  SUBCASE("beta = u: trivial gamma, maximal") {
    auto t = f->indeterminate();
    auto coc = TwoCocycle::cyclic_product(g, act, {t, u});
    RamifiedScenario s{f, g, act, xbar, coc};
    REQUIRE(validate_scenario(s).valid);
    auto rep = analyze(s);
    CHECK(rep.heredity.hereditary);
    CHECK_FALSE(rep.heredity.tame);
    CHECK(rep.split.e0 == 3);
    CHECK(rep.split.P.order() == 2);
    CHECK(rep.heredity.tower.size() == 2);  // F0 and the degree-2 level
    CHECK(rep.gamma->alpha0 == u);
    CHECK(rep.gamma->d == 1);  // u is not a cube in F_4(t)
    CHECK(rep.maximal);
  }
  SUBCASE("beta = 1: full gamma, three maximal orders") {
    auto t = f->indeterminate();
    auto coc = TwoCocycle::cyclic_product(g, act, {t, f->one()});
    RamifiedScenario s{f, g, act, xbar, coc};
    REQUIRE(validate_scenario(s).valid);
    auto rep = analyze(s);
    CHECK(rep.heredity.hereditary);
    CHECK(rep.gamma->d == 3);
    CHECK(rep.conductor->pi_image_order == 1);
    CHECK(rep.conductor->conductor.order() == 3);
    CHECK_FALSE(rep.maximal);
    CHECK(rep.maximal_order_count == 3);
  }
}

TEST_CASE("non-abelian inertia is never hereditary") {
  auto s3 = FiniteGroup::symmetric3();
  auto f = f9();
  auto act = GroupAction::trivial(s3, f);
  std::map<int, FieldElement> xbar;  // the sign character
  for (int x = 0; x < 6; ++x) {
    int ord = s3->element_order(x);
    xbar[x] = ord == 2 ? f->from_integer(2) : f->one();
  }
  RamifiedScenario s{f, s3, act, xbar, TwoCocycle::trivial(s3, act)};
  REQUIRE(validate_scenario(s).valid);
  auto rep = analyze(s);
  CHECK_FALSE(rep.heredity.hereditary);
  CHECK_FALSE(rep.maximal);
  CHECK(rep.heredity.witness.has_value());  // U_(123) - 1 cubes to zero
}

TEST_CASE("sigma0 and zeta overrides change labels, never verdicts") {
  // C_4 over F_5 with alpha = 1: sigma0 defaults to one generator; a^3 also works
  auto g = FiniteGroup::cyclic(4);
  auto f = f5();
  auto act = GroupAction::trivial(g, f);
  std::map<int, FieldElement> xbar;
  for (int i = 0; i < 4; ++i) xbar[i] = pow(f->from_integer(2), i);
  RamifiedScenario s{f, g, act, xbar, TwoCocycle::trivial(g, act)};
  auto rep = analyze(s);
  AnalyzeOptions alt;
  alt.sigma0_label = "a3";
  auto rep2 = analyze(s, alt);
  CHECK(rep.split.sigma0 != rep2.split.sigma0);
  CHECK(rep.heredity.hereditary == rep2.heredity.hereditary);
  CHECK(rep.gamma->d == rep2.gamma->d);
  CHECK(rep.conductor->conductor.elems == rep2.conductor->conductor.elems);
  CHECK(rep.maximal == rep2.maximal);
  CHECK(rep.maximal_order_count == rep2.maximal_order_count);

  AnalyzeOptions zopt;
  zopt.zeta_override = f->from_integer(3);  // the other primitive fourth root
  auto rep3 = analyze(s, zopt);
  CHECK(rep3.conductor->conductor.elems == rep.conductor->conductor.elems);
  CHECK(rep3.maximal == rep.maximal);
  AnalyzeOptions badz;
  badz.zeta_override = f->from_integer(4);  // order 2, not 4
  CHECK_THROWS_AS(analyze(s, badz), internal_error);
  AnalyzeOptions bads;
  bads.sigma0_label = "a2";  // order 2, not 4
  CHECK_THROWS_AS(analyze(s, bads), invalid_input);
}

TEST_CASE("inflation-search conductor agrees with the pairing kernel") {
  for (auto alpha : {1, 2, 3, 4}) {
    AnalyzeOptions opts;
    opts.with_inflation_oracle = true;
    auto rep = analyze(c2_over_f5(f5()->from_integer(alpha)), opts);
    REQUIRE(rep.oracle_conductor_order.has_value());
    CHECK((uint64_t)*rep.oracle_conductor_order == *rep.maximal_order_count);
  }
  AnalyzeOptions opts;
  opts.with_inflation_oracle = true;
  auto rep = analyze(example_c(), opts);
  CHECK(*rep.oracle_conductor_order == 1);
}

TEST_CASE("replacing the cocycle by an inflated multiple leaves the conductor unchanged") {
  // f * inflate(h) has the same pi and hence the same conductor
  auto s = example_c();
  auto A = subgroup_generated(s.group, {*s.group->index_of_label("(a,1)")});
  auto q = quotient_group(s.group, A);
  auto h = TwoCocycle::cyclic_power(q.group, GroupAction::from_powers(q.group, s.field, {0u, 1u}),
                                    s.field->from_integer(2));
  auto inflated = inflate_cocycle(h, q, s.action);
  RamifiedScenario s2 = s;
  s2.cocycle = s.cocycle.product(inflated);
  REQUIRE(validate_scenario(s2).valid);
  auto r1 = analyze(s);
  auto r2 = analyze(s2);
  CHECK(r1.conductor->conductor.elems == r2.conductor->conductor.elems);
  CHECK(r1.conductor->component_count == r2.conductor->component_count);
}
