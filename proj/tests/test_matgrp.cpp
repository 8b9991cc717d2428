#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "grpbase/normalizer.hpp"
#include "grpbase/structure.hpp"

using namespace grpbase;

namespace {

Matrix mat_of(const FieldPtr& F, std::vector<std::vector<long long>> rows) {
  Matrix m(F, static_cast<std::uint32_t>(rows.size()));
  for (std::uint32_t i = 0; i < m.n; ++i)
    for (std::uint32_t j = 0; j < m.n; ++j) m.at(i, j) = F->from_int(rows[i][j]);
  return m;
}

std::vector<Matrix> all_invertible(const FieldPtr& F, std::uint32_t n) {
  std::vector<Matrix> out;
  std::uint64_t total = ipow(F->q, n * n);
  for (std::uint64_t code = 0; code < total; ++code) {
    Matrix m(F, n);
    std::uint64_t c = code;
    for (auto& e : m.a) {
      e = static_cast<FElem>(c % F->q);
      c /= F->q;
    }
    if (mat_inv(m)) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

TEST_CASE("enumeration: GL(2,3) from generators") {
  auto F = Field::make(3, 1);
  // elementary generators: row scaling, row addition, row swap
  MatGroup g = mat_group(F, 2, {mat_of(F, {{2, 0}, {0, 1}}), mat_of(F, {{1, 1}, {0, 1}}),
                                mat_of(F, {{0, 1}, {1, 0}})});
  enumerate_mat(g);
  CHECK(g.order() == 48);
}

TEST_CASE("vector stabilizer and orbits") {
  auto F = Field::make(5, 1);
  MatGroup g = mat_group(F, 2, {mat_of(F, {{0, 4}, {1, 0}}), mat_of(F, {{2, 0}, {0, 2}})});
  enumerate_mat(g);
  Vec e1(F, 2);
  e1.v[0] = 1;
  auto orb = vector_orbit(g, e1);
  MatGroup st = vector_stabilizer(g, e1);
  CHECK(orb.size() * st.elements.size() == g.order());
}

TEST_CASE("fitting subgroup of S3 in GL(2,7) is C3") {
  auto F = Field::make(7, 1);
  // 2-dimensional faithful representation of S3
  Matrix r = mat_of(F, {{0, 6}, {1, 6}});   // order 3
  Matrix s = mat_of(F, {{0, 1}, {1, 0}});   // order 2
  MatGroup g = mat_group(F, 2, {r, s});
  enumerate_mat(g);
  CHECK(g.order() == 6);
  MatGroup fit = fitting_subgroup(g);
  CHECK(fit.order() == 3);
  CHECK(mat_is_solvable(g));
}

TEST_CASE("max abelian normal subgroup") {
  auto F = Field::make(5, 1);
  // A.D4 = scalars with diag/swap: the diagonal subgroup is max abelian normal
  Matrix d = mat_of(F, {{1, 0}, {0, 4}});
  Matrix s = mat_of(F, {{0, 1}, {1, 0}});
  Matrix z = mat_of(F, {{2, 0}, {0, 2}});
  MatGroup g = mat_group(F, 2, {d, s, z});
  enumerate_mat(g);
  CHECK(g.order() == 16);
  // three abelian normal subgroups of order 8 exist; any is maximal
  MatGroup A = max_abelian_normal(g);
  CHECK(A.elements.size() == 8);
  for (const auto& m : A.elements) {
    for (const auto& m2 : A.elements) CHECK(mat_mul(m, m2) == mat_mul(m2, m));
    for (const auto& h : g.elements) {
      auto hi = mat_inv(h);
      CHECK(std::binary_search(A.elements.begin(), A.elements.end(),
                               mat_mul(mat_mul(h, m), *hi)));
    }
  }
}

TEST_CASE("detect_structure: monomial A.D4 over GF(5)") {
  auto F = Field::make(5, 1);
  Matrix d = mat_of(F, {{1, 0}, {0, 4}});
  Matrix s = mat_of(F, {{0, 1}, {1, 0}});
  Matrix z = mat_of(F, {{2, 0}, {0, 2}});
  MatGroup g = mat_group(F, 2, {d, s, z});
  enumerate_mat(g);
  FittingStructure fs = detect_structure(g);
  CHECK(fs.monomial);
  CHECK(fs.e == 2);
  CHECK(fs.A.size() == 4);
  CHECK(fs.fit.order() == 16);
  CHECK(fs.prime_shape == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}});
  CHECK(fs.S_elements.size() == 2);
  CHECK(fs.D0.size() == 2);
  // basis vectors are distinct eigenlines
  CHECK(fs.basis.size() == 2);
  // every element decomposes as diagonal times permutation in the basis
  for (const auto& m : g.elements) {
    auto parts = monomial_decompose(fs, m);
    CHECK(mat_mul(parts.delta, parts.pi) ==
          mat_mul(mat_mul(fs.basis_inv, m), fs.basis_mat));
  }
}

TEST_CASE("detect_structure: quaternion type over GF(7)") {
  auto F = Field::make(7, 1);
  Matrix i = mat_of(F, {{0, -1}, {1, 0}});
  Matrix j = mat_of(F, {{2, 3}, {3, -2}});
  Matrix z = mat_of(F, {{3, 0}, {0, 3}});
  MatGroup g = mat_group(F, 2, {i, j, z});
  enumerate_mat(g);
  CHECK(mat_mul(i, i) == mat_scalar(F, 2, F->neg(1)));
  CHECK(mat_mul(j, j) == mat_scalar(F, 2, F->neg(1)));
  CHECK(mat_mul(mat_mul(i, j), mat_inv(mat_mul(j, i)).value()) != mat_identity(F, 2));
  FittingStructure fs = detect_structure(g);
  CHECK(!fs.monomial);
  CHECK(fs.e == 2);
  REQUIRE(fs.Q.size() == 2);
  // Q D \ D elements have no eigenvalue in the field
  std::vector<Matrix> QD = closure_mats(F, 2, {fs.Q[0], fs.Q[1]});
  for (const auto& m : QD)
    if (!is_scalar_matrix(m)) CHECK(!has_eigenvalue(m));
  CHECK(fs.basis.size() == 1);
  CHECK(fs.vbasis.size() == 1);
}

TEST_CASE("monomial root balance: D0 characters") {
  // scalars * permutation C3 * diagonal of order 3 over GF(7): e = 3
  auto F = Field::make(7, 1);
  Matrix c3 = mat_of(F, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  Matrix d3 = mat_of(F, {{1, 0, 0}, {0, 2, 0}, {0, 0, 4}});  // 2 has order 3 mod 7... 2^3=1
  Matrix z = mat_of(F, {{3, 0, 0}, {0, 3, 0}, {0, 0, 3}});
  MatGroup g = mat_group(F, 3, {c3, d3, z});
  enumerate_mat(g);
  FittingStructure fs = detect_structure(g);
  CHECK(fs.monomial);
  CHECK(fs.e == 3);
  CHECK(fs.prime_shape == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}});
  // root balance: each element of D0 has every o(g)-th root of unity with the
  // same multiplicity on its diagonal
  for (const auto& dm : fs.D0) {
    Matrix dd = mat_mul(mat_mul(fs.basis_inv, dm), fs.basis_mat);
    std::map<FElem, int> mult;
    for (std::uint32_t k = 0; k < 3; ++k) mult[dd.at(k, k)]++;
    int first = mult.begin()->second;
    for (auto& [val, m] : mult) CHECK(m == first);
  }
  // character tuples of D0 on the basis lines are pairwise distinct
  std::set<std::vector<FElem>> tuples;
  for (std::uint32_t k = 0; k < 3; ++k) {
    std::vector<FElem> tup;
    for (const auto& dm : fs.D0) {
      Matrix dd = mat_mul(mat_mul(fs.basis_inv, dm), fs.basis_mat);
      tup.push_back(dd.at(k, k));
    }
    tuples.insert(tup);
  }
  CHECK(tuples.size() == 3);
}

TEST_CASE("normalizer via automorphism lifting matches brute force") {
  auto F = Field::make(3, 1);
  // F0 = scalars * D4 in GL(2,3)
  Matrix d = mat_of(F, {{1, 0}, {0, 2}});
  Matrix s = mat_of(F, {{0, 1}, {1, 0}});
  MatGroup f0 = mat_group(F, 2, {d, s, mat_scalar(F, 2, F->neg(1))});
  enumerate_mat(f0);
  CHECK(f0.order() == 8);
  auto N = normalizer_in_gl(f0);
  // oracle: scan all of GL(2,3)
  std::vector<Matrix> oracle;
  for (const auto& m : all_invertible(F, 2)) {
    auto minv = *mat_inv(m);
    bool norm = true;
    for (const auto& x : f0.elements)
      if (!mat_group_contains(f0, mat_mul(mat_mul(m, x), minv))) { norm = false; break; }
    if (norm) oracle.push_back(m);
  }
  std::sort(oracle.begin(), oracle.end());
  CHECK(N == oracle);
  CHECK(N.size() >= f0.order());
}

TEST_CASE("q-cores") {
  auto F = Field::make(7, 1);
  Matrix r = mat_of(F, {{0, 6}, {1, 6}});
  Matrix s = mat_of(F, {{0, 1}, {1, 0}});
  MatGroup g = mat_group(F, 2, {r, s});
  enumerate_mat(g);
  CHECK(mat_q_core(g, 3).size() == 3);
  CHECK(mat_q_core(g, 2).size() == 1);
}
