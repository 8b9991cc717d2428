#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "grpbase/affine.hpp"
#include "grpbase/coloring.hpp"

using namespace grpbase;

namespace {

Perm cycle(std::uint32_t n, std::initializer_list<std::uint32_t> pts) {
  Perm p = perm_identity(n);
  std::vector<std::uint32_t> v(pts);
  for (std::size_t i = 0; i < v.size(); ++i) p[v[i]] = v[(i + 1) % v.size()];
  return p;
}

bool trivial_coloring_stabilizer(const PermGroup& g, const Coloring& col) {
  return !coloring_stabilizer_witness(g, col.colors).has_value();
}

}  // namespace

TEST_CASE("affine space indexing") {
  AffineSpace sp(3, 2);
  CHECK(sp.size() == 9);
  for (std::uint32_t i = 0; i < sp.size(); ++i) CHECK(sp.index(sp.coords(i)) == i);
  CHECK(sp.add(sp.e(0), sp.e(1)) == sp.index({1, 1}));
  CHECK(sp.smul(2, sp.e(0)) == sp.index({2, 0}));
}

TEST_CASE("case dispatch on the odd grid") {
  CHECK(affine_partition(AffineSpace(3, 1)).case_id == 1);
  CHECK(affine_partition(AffineSpace(5, 1)).case_id == 2);
  CHECK(affine_partition(AffineSpace(7, 1)).case_id == 2);
  CHECK(affine_partition(AffineSpace(5, 2)).case_id == 3);
  CHECK(affine_partition(AffineSpace(3, 2)).case_id == 4);
  CHECK(affine_partition(AffineSpace(3, 3)).case_id == 4);
  CHECK(affine_partition(AffineSpace(2, 2)).case_id == 1);
  CHECK(affine_partition(AffineSpace(2, 3)).case_id == 5);
  CHECK(affine_partition(AffineSpace(2, 4)).case_id == 6);
  CHECK(affine_partition(AffineSpace(2, 5)).case_id == 6);
}

TEST_CASE("partitions regular for the full affine group, small spaces") {
  for (auto [q, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {3, 1}, {5, 1}, {7, 1}, {2, 2}, {3, 2}, {2, 3}}) {
    AffineSpace sp(q, n);
    auto res = affine_partition(sp);
    PermGroup agl = full_affine_group(sp);
    auto rep = is_regular_partition(agl, res.part);
    INFO("q=" << q << " n=" << n);
    CHECK(rep.regular);
  }
}

TEST_CASE("backtracking verifier agrees with enumeration") {
  for (auto [q, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {2, 3}, {3, 2}}) {
    AffineSpace sp(q, n);
    auto res = affine_partition(sp);
    PermGroup agl = full_affine_group(sp);
    CHECK(full_affine_regular(sp, res.part) == is_regular_partition(agl, res.part).regular);
    // a deliberately coarse partition is caught by both
    SetPartition bad{sp.size(), {}};
    std::vector<std::uint32_t> all(sp.size());
    for (std::uint32_t i = 0; i < sp.size(); ++i) all[i] = i;
    bad.parts.push_back(all);
    CHECK(!full_affine_regular(sp, bad));
    CHECK(!is_regular_partition(agl, bad).regular);
  }
}

TEST_CASE("partition properties examples") {
  {
    // q=5, n=1: sizes 1,1,3 so the unique-size part is the last
    auto res = affine_partition(AffineSpace(5, 1));
    auto pr = partition_properties(res, AffineSpace(5, 1));
    CHECK(pr.unique_size_part == 2);
  }
  {
    // q=5, n=2: |Omega2| = 2n = 4 < 25/4
    auto res = affine_partition(AffineSpace(5, 2));
    auto pr = partition_properties(res, AffineSpace(5, 2));
    CHECK(res.part.parts[1].size() == 4);
    CHECK(pr.large_part_ok);
  }
  {
    // q=3, n=2: |W| = 9 is an exception
    auto res = affine_partition(AffineSpace(3, 2));
    auto pr = partition_properties(res, AffineSpace(3, 2));
    CHECK(!pr.large_part_ok);
  }
}

TEST_CASE("mixed characteristic partitions") {
  {
    MixedSpace ms({AffineSpace(2, 1), AffineSpace(3, 1)});
    SetPartition part = mixed_char_partition(ms);
    REQUIRE(part.parts.size() == 3);
    CHECK(part.parts[0] == std::vector<std::uint32_t>{0});
    CHECK(part.parts[1].size() == 1);  // l-1 = 1 cross term
    // e11 + e21
    CHECK(part.parts[1][0] == ms.add(ms.embed(0, 1), ms.embed(1, ms.spaces[1].e(0))));
    // regular under the translation group
    std::vector<Perm> tgens;
    Perm t1(ms.size()), t2(ms.size());
    for (std::uint32_t x = 0; x < ms.size(); ++x) {
      t1[x] = ms.add(x, ms.embed(0, 1));
      t2[x] = ms.add(x, ms.embed(1, ms.spaces[1].e(0)));
    }
    PermGroup trans = perm_group(ms.size(), {t1, t2});
    enumerate(trans);
    CHECK(trans.order() == 6);
    CHECK(is_regular_partition(trans, part).regular);
  }
  {
    // W = GF(2)^3 + GF(3)^1: |Omega2| = 3+1+1 = 5 < 24/4
    MixedSpace ms({AffineSpace(2, 3), AffineSpace(3, 1)});
    SetPartition part = mixed_char_partition(ms);
    REQUIRE(part.parts.size() == 3);
    CHECK(part.parts[1].size() == 5);
    CHECK(4 * part.parts[1].size() < ms.size());
  }
}

TEST_CASE("coloring: trivial group") {
  PermGroup g = perm_group(3, {});
  enumerate(g);
  Coloring col = regular_coloring(g, 3);
  CHECK(col.colors == std::vector<std::uint32_t>(3, 0));
}

TEST_CASE("coloring: S3 with p=5") {
  PermGroup s3 = perm_group(3, {cycle(3, {0, 1, 2}), cycle(3, {0, 1})});
  enumerate(s3);
  Coloring col = regular_coloring(s3, 5);
  CHECK(trivial_coloring_stabilizer(s3, col));
  for (auto c : col.colors) CHECK(c < 5);
}

TEST_CASE("coloring: C4 with p=3 matches the exhaustive oracle") {
  PermGroup c4 = perm_group(4, {cycle(4, {0, 1, 2, 3})});
  enumerate(c4);
  Coloring col = regular_coloring(c4, 3);
  CHECK(trivial_coloring_stabilizer(c4, col));
  // oracle: some of the 81 colorings works, and the returned one is among them
  std::uint32_t good = 0;
  bool found = false;
  for (std::uint32_t code = 0; code < 81; ++code) {
    Coloring cand;
    cand.n = 4;
    std::uint32_t c = code;
    for (int i = 0; i < 4; ++i) {
      cand.colors.push_back(c % 3);
      c /= 3;
    }
    if (trivial_coloring_stabilizer(c4, cand)) {
      ++good;
      if (cand.colors == col.colors) found = true;
    }
  }
  CHECK(good > 0);
  CHECK(found);
}

TEST_CASE("coloring: intransitive and imprimitive groups") {
  // two independent transpositions: intransitive
  PermGroup g1 = perm_group(4, {cycle(4, {0, 1}), cycle(4, {2, 3})});
  enumerate(g1);
  Coloring col1 = regular_coloring(g1, 3);
  CHECK(trivial_coloring_stabilizer(g1, col1));
  // C4 acting on 4 points is imprimitive with blocks {0,2},{1,3}
  PermGroup c4 = perm_group(4, {cycle(4, {0, 1, 2, 3})});
  enumerate(c4);
  CHECK(trivial_coloring_stabilizer(c4, regular_coloring(c4, 5)));
  // wreath-like subgroup of Sym(6): two blocks of three
  PermGroup w = perm_group(6, {cycle(6, {0, 1, 2}), cycle(6, {3, 4, 5}),
                               perm_compose(cycle(6, {0, 3}), perm_compose(cycle(6, {1, 4}), cycle(6, {2, 5})))});
  enumerate(w);
  CHECK(w.order() == 18);
  Coloring colw = regular_coloring(w, 5);
  CHECK(trivial_coloring_stabilizer(w, colw));
  for (auto c : colw.colors) CHECK(c < 5);
}

TEST_CASE("coloring rejects bad primes") {
  PermGroup s3 = perm_group(3, {cycle(3, {0, 1, 2}), cycle(3, {0, 1})});
  enumerate(s3);
  CHECK_THROWS_AS(regular_coloring(s3, 3), InputError);  // 3 | 6
  CHECK_THROWS_AS(regular_coloring(s3, 4), InputError);  // not prime
}
