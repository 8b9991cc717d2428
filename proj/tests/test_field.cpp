#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "grpbase/field.hpp"

using namespace grpbase;

TEST_CASE("prime field arithmetic") {
  auto F = Field::make(7, 1);
  CHECK(F->q == 7);
  CHECK(F->add(3, 5) == 1);
  CHECK(F->mul(3, 5) == 1);
  CHECK(F->neg(3) == 4);
  CHECK(F->inv(3) == 5);
  CHECK(F->pow(3, 6) == 1);
  CHECK(F->alpha == 3);  // least primitive root mod 7
}

TEST_CASE("GF(9) structure") {
  auto F = Field::make(3, 2);
  CHECK(F->q == 9);
  // multiplicative group is cyclic of order 8
  CHECK(F->mul_order(F->alpha) == 8);
  std::uint32_t count = 0;
  for (FElem x = 1; x < F->q; ++x)
    if (F->mul_order(x) == 8) ++count;
  CHECK(count == 4);  // phi(8)
  // Frobenius is an automorphism of order 2 fixing GF(3)
  for (FElem x = 0; x < F->q; ++x) {
    CHECK(F->frobenius(x, 2) == x);
    for (FElem y = 0; y < F->q; ++y)
      CHECK(F->frobenius(F->mul(x, y), 1) == F->mul(F->frobenius(x, 1), F->frobenius(y, 1)));
  }
  CHECK(F->fixed_subfield(1).size() == 3);
}

TEST_CASE("GF(16) and GF(25): field axioms by exhaustion") {
  for (auto [p, a] : {std::pair<std::uint32_t, std::uint32_t>{2, 4}, {5, 2}}) {
    auto F = Field::make(p, a);
    for (FElem x = 0; x < F->q; ++x) {
      CHECK(F->add(x, F->neg(x)) == 0);
      if (x) CHECK(F->mul(x, F->inv(x)) == 1);
      for (FElem y = 0; y < F->q; ++y) {
        CHECK(F->add(x, y) == F->add(y, x));
        CHECK(F->mul(x, y) == F->mul(y, x));
        for (FElem z = 0; z < F->q; ++z)
          CHECK(F->mul(x, F->add(y, z)) == F->add(F->mul(x, y), F->mul(x, z)));
      }
    }
  }
}

TEST_CASE("coefficient round trip") {
  auto F = Field::make(5, 3);
  for (FElem x = 0; x < F->q; ++x) CHECK(F->from_coeffs(F->coeffs(x)) == x);
}

TEST_CASE("deterministic construction") {
  auto F1 = Field::make(3, 4);
  auto F2 = Field::make(3, 4);
  CHECK(F1->modulus == F2->modulus);
  CHECK(F1->alpha == F2->alpha);
}
