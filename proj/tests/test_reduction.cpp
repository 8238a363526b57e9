#include <doctest.h>

#include "crossed/reduction.hpp"

using namespace crossed;

namespace {

FieldPtr f5() { return Field::make_prime(5); }

// G = C_2 x C_2; the first factor swaps two labels, the second stabilizes and
// carries the C_2-over-F_5 data with U_s^2 = alpha
GlobalScenario swap_and_local(const FieldElement& alpha) {
  auto g = FiniteGroup::klein_four();
  auto f = alpha.field();
  GlobalScenario gs;
  gs.group = g;
  gs.components = 2;
  gs.field = f;
  int swapper = *g->index_of_label("(a,1)");
  int sigma = *g->index_of_label("(1,a)");
  gs.perm.assign(4, {0, 1});
  gs.perm[swapper] = {1, 0};
  gs.perm[g->mul(swapper, sigma)] = {1, 0};
  gs.local_frob = {{g->identity(), 0u}, {sigma, 0u}};
  gs.local_character = {{g->identity(), f->one()}, {sigma, f->from_integer(4)}};
  for (int a : {g->identity(), sigma}) {
    for (int b : {g->identity(), sigma}) {
      bool wrap = (a == sigma && b == sigma);
      gs.local_cocycle[{a, b}] = wrap ? alpha : f->one();
    }
  }
  return gs;
}

}  // namespace

TEST_CASE("global validation") {
  auto gs = swap_and_local(f5()->one());
  CHECK(validate_global(gs).valid);
  auto broken = gs;
  broken.perm[1] = {0, 0};
  CHECK_FALSE(validate_global(broken).valid);
  // intransitive: nobody moves label 0
  auto still = gs;
  for (auto& row : still.perm) row = {0, 1};
  auto rep = validate_global(still);
  CHECK_FALSE(rep.valid);
  REQUIRE(!rep.violations.empty());
  CHECK(rep.violations[0].find("orbit") != std::string::npos);
}

TEST_CASE("decomposition groups: stabilizers and conjugacy") {
  auto gs = swap_and_local(f5()->one());
  auto g1 = decomposition_group(gs, 0);
  CHECK(g1.order() == 2);
  CHECK(g1.contains(*gs.group->index_of_label("(1,a)")));
  auto g2 = decomposition_group(gs, 1);
  CHECK(g2.elems == g1.elems);  // abelian: conjugates coincide

  // k = 1: the stabilizer is everything
  GlobalScenario one;
  one.group = FiniteGroup::cyclic(2);
  one.components = 1;
  one.field = f5();
  one.perm.assign(2, {0});
  CHECK(decomposition_group(one, 0).order() == 2);

  // S_3 on three labels: stabilizers have order 2 and are conjugate
  auto s3 = FiniteGroup::symmetric3();
  GlobalScenario nat;
  nat.group = s3;
  nat.components = 3;
  nat.field = f5();
  nat.perm.resize(6);
  const std::vector<std::vector<int>> perms = {
      {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  for (int g = 0; g < 6; ++g) nat.perm[g] = perms[g];
  REQUIRE(validate_global(nat).valid);
  for (int j = 0; j < 3; ++j) CHECK(decomposition_group(nat, j).order() == 2);
}

TEST_CASE("reduce_to_local reproduces the attached scenario") {
  auto gs = swap_and_local(f5()->one());
  auto local = reduce_to_local(gs);
  CHECK(local.group->order() == 2);
  REQUIRE(validate_scenario(local).valid);
  auto rep = analyze(local);
  CHECK(rep.heredity.hereditary);
  CHECK(rep.maximal_order_count == 2);  // the trivial-cocycle verdict lifts

  auto gs2 = swap_and_local(f5()->from_integer(2));
  auto rep2 = analyze(reduce_to_local(gs2));
  CHECK(rep2.maximal);
}

TEST_CASE("k = 1 reduction is the identity") {
  auto c2 = FiniteGroup::cyclic(2);
  auto f = f5();
  GlobalScenario gs;
  gs.group = c2;
  gs.components = 1;
  gs.field = f;
  gs.perm.assign(2, {0});
  gs.local_frob = {{0, 0u}, {1, 0u}};
  gs.local_character = {{0, f->one()}, {1, f->from_integer(4)}};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) gs.local_cocycle[{a, b}] = f->one();
  }
  auto local = reduce_to_local(gs);
  CHECK(local.group->order() == 2);
  CHECK(analyze(local).maximal_order_count == 2);
}

TEST_CASE("trivial stabilizer gives the base field, maximal") {
  auto c2 = FiniteGroup::cyclic(2);
  auto f = f5();
  GlobalScenario gs;
  gs.group = c2;
  gs.components = 2;
  gs.field = f;
  gs.perm = {{0, 1}, {1, 0}};
  gs.local_frob = {{0, 0u}};
  gs.local_character = {{0, f->one()}};
  gs.local_cocycle[{0, 0}] = f->one();
  auto local = reduce_to_local(gs);
  CHECK(local.group->order() == 1);
  auto rep = analyze(local);
  CHECK(rep.maximal);
  CHECK(rep.maximal_order_count == 1);
}

TEST_CASE("verdicts are stable under component relabeling") {
  auto gs = swap_and_local(f5()->from_integer(2));
  // relabel by the swap (0 1): conjugate the permutation action; the
  // stabilizer of the new label 0 is the same subgroup here (abelian), so the
  // local data transports unchanged
  GlobalScenario relabeled = gs;
  for (int g = 0; g < 4; ++g) {
    std::vector<int> row(2);
    for (int j = 0; j < 2; ++j) row[1 - j] = 1 - gs.perm[g][j];
    relabeled.perm[g] = row;
  }
  REQUIRE(validate_global(relabeled).valid);
  auto r1 = analyze(reduce_to_local(gs));
  auto r2 = analyze(reduce_to_local(relabeled));
  CHECK(r1.maximal == r2.maximal);
  CHECK(r1.maximal_order_count == r2.maximal_order_count);
  CHECK(r1.heredity.hereditary == r2.heredity.hereditary);
}
