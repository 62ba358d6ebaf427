#include "doctest.h"

#include "charnum/charnum_quadric.hpp"
#include "charnum/hurwitz.hpp"
#include "charnum/oracles.hpp"

using namespace charnum;

namespace {

const QuadricBound& bound5() {
  static const QuadricBound b = quadric_total_bound(5);
  return b;
}

const GWTable& quadric_gw() {
  static const GWTable gw = [] {
    TargetGeometry q = builtin_geometry("p1xp1");
    return wdvv_solve(q, default_gw_seeds(q, bound5().box), bound5().box);
  }();
  return gw;
}

const SeriesTable& genus0() {
  static const SeriesTable g0 = quadric_genus0(quadric_gw(), bound5());
  return g0;
}

}  // namespace

TEST_CASE("bounds") {
  QuadricBound b = quadric_total_bound(3);
  CHECK(b.contains({1, 2}));
  CHECK(!b.contains({2, 2}));
  QuadricBound box{{2, 1}, -1};
  CHECK(box.contains({2, 1}));
  CHECK(!box.contains({1, 2}));
  for (const auto& idx : quadric_indices({2, 1}, 1)) CHECK(idx[0] + idx[1] + 2 * idx[2] == 6);
}

TEST_CASE("plane sections of the quadric") {
  // (1,1)-curves are plane sections: planes through 3, 2, 1, 0 points tangent to the rest
  const SeriesTable& g = genus0();
  CHECK(g.at({1, 1}, {3, 0, 0}) == 1);
  CHECK(g.at({1, 1}, {2, 1, 0}) == 2);
  CHECK(g.at({1, 1}, {1, 2, 0}) == 4);
  CHECK(g.at({1, 1}, {0, 3, 0}) == 8);
  CHECK(g.at({1, 1}, {1, 0, 1}) == 1);
  CHECK(g.at({1, 2}, {5, 0, 0}) == 1);
  CHECK(g.at({2, 2}, {7, 0, 0}) == 12);
}

TEST_CASE("genus-0 numbers are symmetric and match the tangency potential") {
  CHECK(cross_check(genus0(), swap_rulings(genus0())).ok());
  SeriesTable via_gamma = quadric_from_gamma(gamma0_pde(quadric_gw(), nullptr, [](const CurveClass& c) {
    return bound5().contains(c);
  }));
  SeriesTable restricted(genus0().vars(), genus0().bound());
  for (const auto& [key, v] : via_gamma.entries())
    if (bound5().contains(key.first)) restricted.set(key.first, key.second, v);
  CHECK(cross_check(restricted, genus0()).ok());
}

TEST_CASE("genus-1 numbers") {
  SeedTable seeds = read_seed_file(shipped_seed_path("p1xp1_genus1.txt"));
  QuadricGenus1Result r = quadric_genus1(quadric_gw(), genus0(), seeds, bound5());
  CHECK(r.consistency.ok());
  CHECK(cross_check(r.enumerative, swap_rulings(r.enumerative)).ok());
  for (const auto& [key, v] : r.enumerative.entries()) {
    CHECK(is_integer(v));
    CHECK(v >= 0);
    CHECK(key.first[0] > 0);
    CHECK(key.first[1] > 0);
  }
  // |O(2,2)| is a P^8, so 8 points cut out one curve
  int b = 0;
  for (long expected : {1, 6, 36, 216, 1296}) {
    CHECK(r.enumerative.at({2, 2}, {8 - b, b, 0}) == expected);
    ++b;
  }
  CHECK(r.enumerative.at({2, 3}, {10, 0, 0}) == 20);
  CHECK(r.enumerative.at({1, 3}, {8, 0, 0}) == 0);
}

TEST_CASE("operators and rule covers") {
  DiffOperator l1 = quadric_line_operator(1);
  REQUIRE(l1.terms.size() == 2);
  CHECK(l1.terms[0].second == "u2");
  CHECK_THROWS(quadric_line_operator(3));
  RuleCovers rc = rule_cover_potentials(hurwitz(1, 3).genus1, {3, 3});
  for (const auto& [key, v] : rc.horizontal.entries()) CHECK(key.first[1] == 0);
  CHECK(cross_check(swap_rulings(rc.horizontal), rc.vertical).ok());
  CHECK(!rc.horizontal.empty());
}
