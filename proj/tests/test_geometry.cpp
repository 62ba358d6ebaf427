#include "doctest.h"

#include "charnum/geometry.hpp"

using namespace charnum;

TEST_CASE("projective plane ring") {
  TargetGeometry p2 = builtin_geometry("p2");
  CHECK(p2.rank() == 3);
  CHECK(p2.dim == 2);
  CHECK(p2.codim == std::vector<int>{0, 1, 2});
  CHECK(p2.triple(1, 1, 0) == 1);
  CHECK(p2.triple(0, 0, 2) == 1);
  CHECK(p2.triple(1, 1, 1) == 0);
  CHECK(p2.c1_degree({4}) == 12);
  CHECK(p2.euler == 3);
  // c(T) = (1+h)^3 = 1 + 3h + 3h^2, so D.c(T) = 3 for D = h
  CHECK(p2.divisor_chern_integral(1) == 3);
  CHECK(vdim(p2, 0, {3}, 0) == 8);
  CHECK(vdim(p2, 1, {3}, 0) == 9);
}

TEST_CASE("projective spaces from the name") {
  for (int r = 1; r <= 5; ++r) {
    TargetGeometry pr = builtin_geometry("p" + std::to_string(r));
    CHECK(pr.rank() == r + 1);
    CHECK(pr.euler == r + 1);
    CHECK(pr.c1_degree({1}) == r + 1);
    CHECK(pr.triple(1, r - 1, 0) == 1);
  }
  CHECK_THROWS(builtin_geometry("p0"));
  CHECK_THROWS(builtin_geometry("nowhere"));
}

TEST_CASE("quadric surface") {
  TargetGeometry q = builtin_geometry("p1xp1");
  CHECK(q.rank() == 4);
  CHECK(q.divisors == std::vector<int>{1, 2});
  CHECK(q.triple(1, 2, 0) == 1);
  CHECK(q.triple(1, 1, 0) == 0);
  CHECK(q.c1_degree({2, 3}) == 10);
  CHECK(q.euler == 4);
  // coordinates are the intersection numbers with H1, H2
  CHECK(q.divisor_degree(1, {2, 3}) == 2);
  CHECK(q.divisor_degree(2, {2, 3}) == 3);
}

TEST_CASE("grassmannian of lines in P3") {
  TargetGeometry g = builtin_geometry("gr24");
  CHECK(g.rank() == 6);
  CHECK(g.dim == 4);
  CHECK(g.euler == 6);
  // s1^4 = 2
  Vec s1 = basis_vector(6, 1);
  CHECK(g.integral(g.cup_vec(g.cup_vec(s1, s1), g.cup_vec(s1, s1))) == 2);
  CHECK(g.c1_degree({1}) == 4);
  CHECK(!g.symmetries.empty());
}

TEST_CASE("geometry files round trip through the parser") {
  for (const char* name : {"p2", "p1xp1", "gr24", "p3"}) {
    TargetGeometry a = builtin_geometry(name);
    TargetGeometry b = load_geometry(builtin_config(name));
    CHECK(a.fingerprint() == b.fingerprint());
  }
  CHECK_THROWS_AS(load_geometry("name = broken\ndim = 2\n"), GeometryError);
}

TEST_CASE("pairing is unimodular with the expected inverse") {
  for (const char* name : {"p2", "p1xp1", "gr24"}) {
    TargetGeometry g = builtin_geometry(name);
    for (int i = 0; i < g.rank(); ++i)
      for (int j = 0; j < g.rank(); ++j) {
        Rational s = 0;
        for (int k = 0; k < g.rank(); ++k) s += g.pairing[i][k] * g.inverse_pairing[k][j];
        CHECK(s == (i == j ? 1 : 0));
      }
  }
}
