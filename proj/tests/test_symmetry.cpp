#include "doctest.h"
#include "oracles.hpp"
#include "plastiflow/symmetry.hpp"

using namespace plastiflow::symmetry;

TEST_CASE("table is antisymmetric and matches the transcription") {
  const auto& t = commutation_table();
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      CHECK(t[i][j] == t[j][i] * -1.0);
      oracle::Vec8 want{};
      auto [k, s] = oracle::kTable[i][j];
      if (k >= 0) want[k] = s;
      for (int a = 0; a < kDim; ++a) CHECK(t[i][j].coeffs[a] == want[a]);
    }
}

TEST_CASE("bracket is bilinear") {
  auto a = AlgebraElement::basis(D1) * 2.0 + AlgebraElement::basis(B);
  auto b = AlgebraElement::basis(P1) - AlgebraElement::basis(P4) * 3.0;
  auto r = structure_bracket(a, b);
  // [2 D1 + B, P1 - 3 P4] = -2 P1 - P5
  AlgebraElement want = AlgebraElement::basis(P1) * -2.0 - AlgebraElement::basis(P5);
  CHECK(r == want);
}

TEST_CASE("numeric brackets agree with the table") {
  auto rep = verify_commutation_table(10, 42);
  CHECK(rep.pairs == 64);
  CHECK(rep.samples == 10);
  CHECK(rep.max_defect == 0);
  CHECK(rep.lines.size() == 64);
}

TEST_CASE("a flipped structure constant is detected") {
  StructureTable t = commutation_table();
  t[D1][B].coeffs[B] = -1;
  CHECK(verify_commutation_table(10, 1, t).max_defect > 0);
  StructureTable u = commutation_table();
  u[D1][P1].coeffs[P1] = 0;
  u[P1][D1].coeffs[P1] = 0;
  CHECK(jacobi_defect(u) > 0);
}

TEST_CASE("reflections are automorphisms") {
  CHECK(jacobi_defect() == 0);
  CHECK(automorphism_defect(Automorphism::R1) == 0);
  CHECK(automorphism_defect(Automorphism::R2) == 0);
  CHECK(apply_automorphism(Automorphism::R1, AlgebraElement::basis(P1)) == AlgebraElement::basis(P1) * -1.0);
  CHECK(apply_automorphism(Automorphism::R2, AlgebraElement::basis(P3)) == AlgebraElement::basis(P3));
}

TEST_CASE("well-formed subalgebra rows annihilate their invariants") {
  int good = 0, bad = 0;
  for (const auto& r : verify_annihilation(2, 20, 9)) {
    if (r.well_formed) {
      ++good;
      CHECK_MESSAGE(r.max_defect < 1e-6, r.id);
      CHECK(r.evaluations > 0);
    } else {
      ++bad;
    }
  }
  CHECK(good >= 10);
  CHECK(bad > 0);
}

TEST_CASE("excluded rows carry a reason") {
  for (const auto& r : one_dim_subalgebras())
    if (!r.well_formed) CHECK_FALSE(r.note.empty());
}

TEST_CASE("dilation annihilates the ratio invariant") {
  Invariant ratio = [](const Point6& p) { return p.y / p.x; };
  Point6 p{1.3, -0.4, 0.2, 0.1, 0.5, 0.7};
  CHECK(annihilation_defect(AlgebraElement::basis(D1), ratio, p) < 1e-9);
  CHECK(annihilation_defect(AlgebraElement::basis(P1), ratio, p) > 1e-3);
}
