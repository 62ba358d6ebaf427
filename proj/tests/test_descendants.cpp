#include "doctest.h"

#include "charnum/descendants.hpp"

#include <random>

using namespace charnum;

namespace {

DescendantSpec spec_of(const std::string& text) { return parse_spec(text).spec; }

}  // namespace

TEST_CASE("spec parsing") {
  ParsedSpec p = parse_spec("tau1(T1) tau0(T2)^4 @ g=0 d=2 target=p2");
  CHECK(p.target == "p2");
  CHECK(p.spec.insertions.size() == 5);
  CHECK(p.spec.key() == "tau0(T2)^4 tau1(T1) @ g=0 d=2");
  CHECK(p.spec.psi_total() == 1);
  CHECK(parse_spec("tau0(T3) @ g=0 d=1,2").spec.beta == CurveClass{1, 2});
  CHECK_THROWS_AS(parse_spec("tau0(T2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_spec("tau0(T2) g=0"), std::invalid_argument);
}

TEST_CASE("primary values come from the table") {
  TargetGeometry p2 = builtin_geometry("p2");
  GWTable gw = wdvv_solve(p2, default_gw_seeds(p2, {3}), {3});
  DescendantEngine e(gw);
  CHECK(e.genus0(spec_of("tau0(T2)^8 @ g=0 d=3")) == 12);
  CHECK(e.genus0(spec_of("tau0(T2)^7 @ g=0 d=3")) == 0);
}

TEST_CASE("recursion is independent of the distinguished marks") {
  TargetGeometry p2 = builtin_geometry("p2");
  GWTable gw = wdvv_solve(p2, default_gw_seeds(p2, {3}), {3});
  DescendantEngine e(gw);
  DescendantSpec s = spec_of("tau1(T1) tau1(T2) tau0(T2)^5 @ g=0 d=3").canonical();
  Rational v = e.genus0(s);
  int checked = 0;
  const int n = static_cast<int>(s.insertions.size());
  for (int p1 = 0; p1 < n; ++p1) {
    if (s.insertions[p1].m == 0) continue;
    for (int p2 = 0; p2 < n; ++p2)
      for (int p3 = p2 + 1; p3 < n; ++p3) {
        if (p2 == p1 || p3 == p1) continue;
        CHECK(e.recursion_step(s, p1, p2, p3) == v);
        ++checked;
      }
  }
  CHECK(checked > 10);
}

TEST_CASE("string, dilaton and divisor rules on random specs") {
  TargetGeometry p2 = builtin_geometry("p2");
  GWTable gw = wdvv_solve(p2, default_gw_seeds(p2, {3}), {3});
  DescendantEngine e(gw);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int d = 1 + static_cast<int>(rng() % 3);
    int ones = static_cast<int>(rng() % 2);
    DescendantSpec base{0, {d}, {}};
    for (int i = 0; i < ones; ++i) base.insertions.push_back({1, 2});
    for (int i = 0; i + 2 * ones < 3 * d - 1; ++i) base.insertions.push_back({0, 2});
    Rational v = e.genus0(base);
    DescendantSpec with = base;
    with.insertions.push_back({0, 0});
    CHECK(e.genus0(with) == 0);
    with.insertions.back() = {1, 0};
    CHECK(e.genus0(with) == -2 * v);
    with.insertions.back() = {0, 1};
    CHECK(e.genus0(with) == d * v);
  }
}

TEST_CASE("genus-one degree-zero values") {
  TargetGeometry p2 = builtin_geometry("p2");
  auto dil = reduce_special(p2, spec_of("tau1(T0) @ g=1 d=0"));
  REQUIRE(dil.has_value());
  CHECK(dil->closed);
  CHECK(dil->factor == p2.euler / 24);
  auto div = reduce_special(p2, spec_of("tau0(T1) @ g=1 d=0"));
  REQUIRE(div.has_value());
  CHECK(div->factor == -p2.divisor_chern_integral(1) / 24);
  CHECK(div->factor == frac(-1, 8));
}

TEST_CASE("memo snapshot can be preloaded") {
  TargetGeometry p2 = builtin_geometry("p2");
  GWTable gw = wdvv_solve(p2, default_gw_seeds(p2, {2}), {2});
  DescendantEngine a(gw);
  Rational v = a.genus0(spec_of("tau1(T2)^2 tau0(T2) @ g=0 d=2"));
  DescendantEngine b(gw);
  for (const auto& [k, val] : a.memo_snapshot()) b.preload(k, val);
  CHECK(b.memo_size() == a.memo_size());
  CHECK(b.genus0(spec_of("tau1(T2)^2 tau0(T2) @ g=0 d=2")) == v);
  CHECK(descend_genus0(spec_of("tau0(T2)^5 @ g=0 d=2"), gw) == 1);
}
