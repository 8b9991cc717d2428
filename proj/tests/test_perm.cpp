#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "grpbase/perm.hpp"

using namespace grpbase;

namespace {

Perm cycle(std::uint32_t n, std::initializer_list<std::uint32_t> pts) {
  Perm p = perm_identity(n);
  std::vector<std::uint32_t> v(pts);
  for (std::size_t i = 0; i < v.size(); ++i) p[v[i]] = v[(i + 1) % v.size()];
  return p;
}

}  // namespace

TEST_CASE("compose and order") {
  Perm a = cycle(4, {0, 1, 2, 3});
  CHECK(perm_order(a) == 4);
  CHECK(perm_is_identity(perm_compose(a, perm_inverse(a))));
  // compose applies the left factor first
  Perm b = cycle(4, {0, 1});
  Perm ab = perm_compose(a, b);
  CHECK(ab[0] == 0);  // 0 -> 1 -> 0
  CHECK(ab[3] == 1);  // 3 -> 0 -> 1
}

TEST_CASE("enumeration: symmetric and cyclic groups") {
  PermGroup s4 = perm_group(4, {cycle(4, {0, 1, 2, 3}), cycle(4, {0, 1})});
  enumerate(s4);
  CHECK(s4.order() == 24);
  PermGroup c6 = perm_group(6, {cycle(6, {0, 1, 2, 3, 4, 5})});
  enumerate(c6);
  CHECK(c6.order() == 6);
  CHECK(is_transitive(c6));
  CHECK(!is_transitive(perm_group(4, {cycle(4, {0, 1})})));
}

TEST_CASE("orbits and setwise stabilizer") {
  PermGroup g = perm_group(5, {cycle(5, {0, 1}), cycle(5, {2, 3, 4})});
  enumerate(g);
  auto orbs = orbits_of(g);
  REQUIRE(orbs.size() == 2);
  CHECK(orbs[0] == std::vector<std::uint32_t>{0, 1});
  CHECK(orbs[1] == std::vector<std::uint32_t>{2, 3, 4});
  PermGroup s4 = perm_group(4, {cycle(4, {0, 1, 2, 3}), cycle(4, {0, 1})});
  enumerate(s4);
  PermGroup st = setwise_stabilizer(s4, {0, 1});
  CHECK(st.order() == 4);  // Sym{0,1} x Sym{2,3}
}

TEST_CASE("regular partition detection") {
  PermGroup s3 = perm_group(3, {cycle(3, {0, 1, 2}), cycle(3, {0, 1})});
  enumerate(s3);
  SetPartition singletons{3, {{0}, {1}, {2}}};
  CHECK(is_regular_partition(s3, singletons).regular);
  SetPartition coarse{3, {{0}, {1, 2}}};
  auto rep = is_regular_partition(s3, coarse);
  CHECK(!rep.regular);
  REQUIRE(rep.witness.has_value());
  CHECK(!perm_is_identity(*rep.witness));
}

TEST_CASE("minimal blocks") {
  // D4 on the square 0-1-2-3: diagonals {0,2},{1,3} are blocks
  PermGroup d4 = perm_group(4, {cycle(4, {0, 1, 2, 3}), cycle(4, {1, 3})});
  enumerate(d4);
  CHECK(d4.order() == 8);
  SetPartition blocks = minimal_blocks(d4);
  REQUIRE(blocks.parts.size() == 2);
  CHECK(blocks.parts[0] == std::vector<std::uint32_t>{0, 2});
  // S4 is primitive: singleton blocks
  PermGroup s4 = perm_group(4, {cycle(4, {0, 1, 2, 3}), cycle(4, {0, 1})});
  enumerate(s4);
  CHECK(minimal_blocks(s4).parts.size() == 4);
}

TEST_CASE("block action splits order") {
  PermGroup d4 = perm_group(4, {cycle(4, {0, 1, 2, 3}), cycle(4, {1, 3})});
  enumerate(d4);
  SetPartition blocks = minimal_blocks(d4);
  BlockAction ba = action_on_blocks(d4, blocks);
  enumerate(ba.image);
  enumerate(ba.kernel);
  CHECK(ba.image.order() * ba.kernel.order() == d4.order());
}

TEST_CASE("solvability via derived series") {
  PermGroup s4 = perm_group(4, {cycle(4, {0, 1, 2, 3}), cycle(4, {0, 1})});
  enumerate(s4);
  CHECK(is_solvable(s4));
  PermGroup a5 = perm_group(5, {cycle(5, {0, 1, 2, 3, 4}), cycle(5, {0, 1, 2})});
  enumerate(a5);
  CHECK(a5.order() == 60);
  CHECK(!is_solvable(a5));
  PermGroup d1 = derived_subgroup(s4);
  enumerate(d1);
  CHECK(d1.order() == 12);  // A4
}

TEST_CASE("fixed point of stabilizer") {
  PermGroup c3 = perm_group(4, {cycle(4, {0, 1, 2})});
  enumerate(c3);
  auto fp = fixed_point_of_stabilizer(c3, {3});
  REQUIRE(fp.has_value());
  CHECK(*fp == 3);
}
