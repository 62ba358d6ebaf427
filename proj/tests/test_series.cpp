#include "doctest.h"

#include "charnum/series.hpp"

#include <stdexcept>

using namespace charnum;

namespace {

VarSet one_var() { return VarSet{{"s"}, {"x"}, {}}; }

// Truncated exp(x) in degree 0: every invariant is 1.
SeriesTable exp_x(int order) {
  SeriesTable t(one_var(), {0});
  for (int n = 0; n <= order; ++n) t.set({0}, {n}, 1);
  return t;
}

}  // namespace

TEST_CASE("rational helpers reduce and print") {
  CHECK(to_string(frac(6, 12)) == "1/2");
  CHECK(to_string(frac(-4, 2)) == "-2");
  CHECK(parse_rational("-10/4") == frac(-5, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK(binomial(6, 2) == 15);
  CHECK(factorial(5) == 120);
  CHECK(multi_binomial({4, 3}, {2, 1}) == 18);
}

TEST_CASE("zero entries are not stored") {
  SeriesTable t(one_var(), {2});
  t.set({1}, {2}, 3);
  t.add({1}, {2}, -3);
  CHECK(t.empty());
  t.add({2}, {0}, frac(1, 3));
  CHECK(t.at({2}, {0}) == frac(1, 3));
  CHECK(t.at({2}, {5}) == 0);
}

TEST_CASE("divided-power product of exponentials") {
  // exp(x)^2 = exp(2x): invariants 2^n
  SeriesTable sq = series_product(exp_x(6), exp_x(6));
  for (int n = 0; n <= 6; ++n) CHECK(sq.at({0}, {n}) == Rational(1 << n));
}

TEST_CASE("product adds classes and respects the bound") {
  SeriesTable f(one_var(), {3}), g(one_var(), {3});
  f.set({1}, {1}, 2);
  g.set({2}, {1}, 5);
  g.set({3}, {0}, 7);
  SeriesTable p = series_product(f, g);
  // x/1! * x/1! = 2 x^2/2!, so the invariant at x^2 is 2 * (2*5)
  CHECK(p.at({3}, {2}) == 20);
  CHECK(p.at({4}, {1}) == 0);
  CHECK(series_product_at(f, g, {3}).at({3}, {2}) == 20);
}

TEST_CASE("derivatives shift the index") {
  SeriesTable f(one_var(), {2});
  f.set({2}, {3}, 11);
  CHECK(partial_derivative(f, "x").at({2}, {2}) == 11);
  // d/ds brings down the degree
  CHECK(partial_derivative(f, "s").at({2}, {3}) == 22);
  Poly x = Poly::variable({"x"}, "x");
  // x * f: coefficient 11 x^3/3! becomes 11 x^4/3!, invariant 11*4
  CHECK(multiply(f, x).at({2}, {4}) == 44);
  DiffOperator op{{{x * Rational(2), "x"}}};
  CHECK(apply_operator(f, op).at({2}, {3}) == 66);
}

TEST_CASE("linear substitution matches the multinomial expansion") {
  VarSet src{{"s"}, {"x"}, {}}, dst{{"s"}, {"u", "v"}, {}};
  SeriesTable f(src, {1});
  f.set({1}, {3}, 1);  // x^3/3!
  std::vector<std::string> uv{"u", "v"};
  SeriesTable g = linear_substitute(f, dst, {{"x", Poly::variable(uv, "u") + Poly::variable(uv, "v")}});
  // (u+v)^3/3! = sum u^a v^b/(a! b!)
  for (int a = 0; a <= 3; ++a) CHECK(g.at({1}, {a, 3 - a}) == 1);
}

TEST_CASE("aliases read degree weights") {
  VarSet q{{"u1", "u2"}, {"u"}, {{"s", {1, 1}}}};
  auto w = q.degree_weights("s");
  REQUIRE(w.has_value());
  CHECK(*w == std::vector<int>{1, 1});
  SeriesTable t(q, {2, 2});
  t.set({1, 2}, {1}, 1);
  CHECK(partial_derivative(t, "s").at({1, 2}, {1}) == 3);
  CHECK(partial_derivative(t, "u2").at({1, 2}, {1}) == 2);
}

TEST_CASE("serialization round trip") {
  SeriesTable t(VarSet{{"s"}, {"u", "v"}, {}}, {4});
  t.set({1}, {2, 0}, 1);
  t.set({4}, {0, 11}, frac(-7, 3));
  std::string text = serialize(t);
  CHECK(serialize(parse_series(text)) == text);
  CHECK(parse_series(text) == t);
  CHECK_THROWS_AS(parse_series("nonsense"), std::invalid_argument);
}

TEST_CASE("stratum and truncation") {
  SeriesTable t(one_var(), {3});
  t.set({1}, {0}, 1);
  t.set({3}, {0}, 2);
  CHECK(t.stratum({3}).size() == 1);
  CHECK(t.truncated({2}).size() == 1);
  CHECK(t.classes() == std::vector<CurveClass>{{1}, {3}});
}
