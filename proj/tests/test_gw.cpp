#include "doctest.h"

#include "charnum/gw.hpp"

#include <random>
#include <set>

using namespace charnum;

namespace {

// Rational curves through 3d-1 general points, from the classical recursion on degrees.
std::vector<Integer> plane_rational_counts(int dmax) {
  std::vector<Integer> n(dmax + 1, 0);
  n[1] = 1;
  for (int d = 2; d <= dmax; ++d) {
    Integer sum = 0;
    for (int a = 1; a < d; ++a) {
      int b = d - a;
      Integer w = a * a * b * (b * binomial(3 * d - 4, 3 * a - 2) - a * binomial(3 * d - 4, 3 * a - 1));
      sum += w * n[a] * n[b];
    }
    n[d] = sum;
  }
  return n;
}

GWTable solve(const std::string& name, const CurveClass& bound, WdvvSolveStats* stats = nullptr) {
  TargetGeometry g = builtin_geometry(name);
  return wdvv_solve(g, default_gw_seeds(g, bound), bound, stats);
}

}  // namespace

TEST_CASE("plane counts follow the classical recursion") {
  auto expected = plane_rational_counts(6);
  GWTable gw = solve("p2", {6});
  for (int d = 1; d <= 6; ++d) CHECK(gw.value({d}, std::vector<int>(3 * d - 1, 2)) == Rational(expected[d]));
  CHECK(expected[4] == 620);
}

TEST_CASE("string and divisor insertions are handled on lookup") {
  GWTable gw = solve("p2", {3});
  CHECK(gw.value({2}, {2, 2, 2, 2, 2, 0}) == 0);
  CHECK(gw.value({2}, {2, 2, 2, 2, 2, 1}) == 2);
  CHECK(gw.value({3}, {2, 2, 2, 2, 2, 2, 2, 2, 1, 1}) == 12 * 9);
  CHECK(gw.value({2}, {2, 2}) == 0);  // dimension fails
}

TEST_CASE("quadric counts") {
  GWTable gw = solve("p1xp1", {3, 3});
  auto pts = [](int n) { return std::vector<int>(n, 3); };
  CHECK(gw.value({1, 0}, pts(1)) == 1);
  CHECK(gw.value({1, 1}, pts(3)) == 1);
  CHECK(gw.value({1, 2}, pts(5)) == 1);
  CHECK(gw.value({2, 2}, pts(7)) == 12);
  CHECK(gw.value({2, 3}, pts(9)) == 96);
  CHECK(gw.value({3, 2}, pts(9)) == 96);
  CHECK(gw.value({3, 3}, pts(11)) == 3510);
  CHECK(gw.value({2, 0}, pts(3)) == 0);
}

TEST_CASE("space curves meeting lines") {
  GWTable gw = solve("p3", {2});
  CHECK(gw.value({1}, {3, 3}) == 1);
  CHECK(gw.value({1}, {2, 2, 2, 2}) == 2);
  CHECK(gw.value({2}, std::vector<int>(8, 2)) == 92);
}

TEST_CASE("grassmannian invariants respect duality") {
  TargetGeometry g = builtin_geometry("gr24");
  GWTable gw = wdvv_solve(g, default_gw_seeds(g, {2}), {2});
  // labels 1 s1 s2 s11 s21 s22
  CHECK(gw.value({1}, {5, 2}) == gw.value({1}, {5, 3}));
  CHECK(gw.value({1}, {5, 5}) == 0);  // two skew lines span no pencil
  CHECK(gw.value({1}, {5, 4}) == 1);
}

TEST_CASE("unused associativity instances vanish") {
  WdvvSolveStats stats;
  GWTable gw = solve("p1xp1", {3, 3}, &stats);
  std::set<std::string> used;
  for (const auto& inst : stats.used) used.insert(inst.str());
  std::mt19937 rng(7);
  int checked = 0;
  for (const auto& beta : positive_classes({3, 3})) {
    auto all = wdvv_instances(gw.geometry(), beta);
    std::shuffle(all.begin(), all.end(), rng);
    for (std::size_t i = 0; i < all.size() && i < 8; ++i) {
      if (used.count(all[i].str())) continue;
      CHECK(wdvv_residual(gw, all[i]) == 0);
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("inconsistent seeds are rejected") {
  TargetGeometry p2 = builtin_geometry("p2");
  SeedTable seeds = default_gw_seeds(p2, {3});
  seeds.set({2}, {5}, 2);
  CHECK_THROWS_AS(wdvv_solve(p2, seeds, {3}), WdvvError);
}

TEST_CASE("class ordering") {
  auto cls = positive_classes({1, 2});
  CHECK(cls.front() == CurveClass{0, 1});
  CHECK(cls.back() == CurveClass{1, 2});
  CHECK(cls.size() == 5);
}
