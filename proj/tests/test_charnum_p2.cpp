#include "doctest.h"

#include "charnum/charnum_p2.hpp"
#include "charnum/oracles.hpp"
#include "charnum/tangency.hpp"

using namespace charnum;

namespace {

const GWTable& plane_gw() {
  static const GWTable gw = [] {
    TargetGeometry p2 = builtin_geometry("p2");
    return wdvv_solve(p2, default_gw_seeds(p2, {5}), {5});
  }();
  return gw;
}

const SeriesTable& genus0() {
  static const SeriesTable g0 = charnum_genus0(plane_gw(), 5);
  return g0;
}

std::vector<Rational> row_by_b(const SeriesTable& t, int d, int genus, int c) {
  std::vector<Rational> out;
  for (const auto& idx : p2_indices(d, genus))
    if (idx[2] == c) out.push_back(t.at({d}, idx));
  return out;
}

std::vector<Rational> rationals(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("index ranges") {
  auto idx = p2_indices(2, 0);
  CHECK(idx.size() == 12);
  for (const auto& i : idx) CHECK(i[0] + i[1] + 2 * i[2] == 5);
  CHECK(p2_indices(3, 1).front() == MultiIndex{9, 0, 0});
}

TEST_CASE("genus-0 conics and cubics") {
  // the classical conic and nodal cubic characteristic numbers
  CHECK(row_by_b(genus0(), 1, 0, 0) == rationals({1, 0, 0}));
  CHECK(row_by_b(genus0(), 2, 0, 0) == rationals({1, 2, 4, 4, 2, 1}));
  CHECK(row_by_b(genus0(), 3, 0, 0) == rationals({12, 36, 100, 240, 480, 712, 756, 600, 400}));
  // conics through three points, tangent to a line at a given point
  CHECK(genus0().at({2}, {3, 0, 1}) == 1);
}

TEST_CASE("genus-0 numbers equal the descendant route") {
  DescendantEngine engine(plane_gw());
  for (int d = 1; d <= 3; ++d)
    for (const auto& idx : p2_indices(d, 0))
      CHECK(charnum_via_descendants(engine, idx[0], idx[1], idx[2], d) == genus0().at({d}, idx));
}

TEST_CASE("genus-0 residual equations vanish") {
  CHECK(p2_tangency_residual(genus0()).truncated({4}).empty());
  CHECK(p2_expanded_residual(genus0()).truncated({4}).empty());
  CHECK(p2_flag_residual(genus0()).truncated({4}).empty());
}

TEST_CASE("tangency expansion is binomial") {
  auto terms = tangency_expand(1, 2, 0, 1);
  REQUIRE(terms.size() == 3);
  CHECK(terms[1].second == 2);
  CHECK_THROWS_AS(tangency_expand(-1, 0, 0, 1), std::invalid_argument);
}

TEST_CASE("cover polynomials") {
  CoverPolynomials cp = cover_polynomials();
  // 1/2 * (1/2) v^6/(2!2!2!) carries the invariant 45 at v^6/6!
  CHECK(cp.elliptic.at({2}, {0, 6, 0}) * frac(1, 720) == frac(1, 2) * frac(1, 2) * frac(1, 8));
  // the bracket alone: 45 ways to pair six tangent lines over the branch points
  CHECK(2 * cp.elliptic.at({2}, {0, 6, 0}) == 45);
  CHECK(cp.elliptic.at({2}, {0, 4, 1}) == 4);
  for (const auto& [key, v] : cp.elliptic.entries()) CHECK(key.second[0] + key.second[1] + 2 * key.second[2] == 6);
  for (const auto& [key, v] : cp.genus2.entries()) CHECK(key.second[0] + key.second[1] + 2 * key.second[2] == 8);
  for (const auto& [key, v] : cp.elliptic.entries()) CHECK(key.first == CurveClass{2});
}

TEST_CASE("genus-1 cubics and quartics") {
  SeedTable seeds = read_seed_file(shipped_seed_path("p2_genus1.txt"));
  Genus1Result g1 = charnum_genus1(genus0(), seeds, 4);
  CHECK(g1.consistency.ok());
  CHECK(row_by_b(g1.enumerative, 3, 1, 0) ==
        rationals({1, 4, 16, 64, 256, 976, 3424, 9766, 21004, 33616}));
  CHECK(g1.enumerative.at({4}, {12, 0, 0}) == 225);
  // no smooth elliptic lines or conics
  for (int d = 1; d <= 2; ++d)
    for (const auto& idx : p2_indices(d, 1)) CHECK(g1.enumerative.at({d}, idx) == 0);
  for (const auto& [key, v] : g1.enumerative.entries()) {
    CHECK(is_integer(v));
    CHECK(v >= 0);
  }
  // the genus-1 tangency potential gives the virtual numbers directly
  SeriesTable gamma1 = trr_genus1_first(gamma0_pde(plane_gw()), seeds, builtin_geometry("p2"));
  SeriesTable direct = genus1_virtual_from_gamma(gamma1).truncated({4});
  SeriesTable predicted = genus1_virtual_prediction(genus0().truncated({4}), g1.enumerative);
  CHECK(cross_check(direct, predicted).ok());
}

TEST_CASE("genus-2 correction terms in both forms") {
  SeriesTable g0 = genus0().truncated({4});
  CHECK(cross_check(two_tail_term(g0), two_tail_explicit(g0, 4)).ok());
  CHECK(cross_check(double_cover_term(g0), double_cover_expanded(g0)).ok());
  SeedTable seeds = read_seed_file(shipped_seed_path("p2_genus1.txt"));
  SeriesTable g1 = charnum_genus1(genus0(), seeds, 4).enumerative;
  CHECK(cross_check(one_tail_term(g1), one_tail_explicit(g1, 4)).ok());
}

TEST_CASE("genus-2 inversion") {
  SeriesTable g0 = genus0().truncated({4});
  SeedTable seeds = read_seed_file(shipped_seed_path("p2_genus1.txt"));
  SeriesTable g1 = charnum_genus1(genus0(), seeds, 4).enumerative;
  SeriesTable corr = one_tail_term(g1) + two_tail_term(g0) + double_cover_term(g0);
  // virtual numbers made of corrections plus a known enumerative part come back to that part
  SeedTable virtual2(p2_char_variables(), {4});
  for (const auto& idx : p2_indices(4, 2)) virtual2.set({4}, idx, corr.at({4}, idx) + idx[0]);
  SeriesTable g2 = charnum_genus2(g0, g1, virtual2, 4);
  for (const auto& idx : p2_indices(4, 2)) CHECK(g2.at({4}, idx) == idx[0]);
  CHECK_THROWS_AS(charnum_genus2(g0, g1, virtual2, 3), ScopeError);
  SeedTable partial(p2_char_variables(), {4});
  CHECK_THROWS_AS(charnum_genus2(g0, g1, partial, 4), MissingSeedEntry);
}

TEST_CASE("tangency potential of the plane") {
  TargetGeometry p2 = builtin_geometry("p2");
  OverdeterminationReport report;
  SeriesTable gamma0 = gamma0_pde(plane_gw(), &report);
  CHECK(report.ok());
  CHECK(report.compared > 0);
  CHECK(trr_genus0_integrated(gamma0, p2, 1).truncated({4}).empty());
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) CHECK(trr_genus0_first(gamma0, p2, 1, i, j).truncated({4}).empty());
  CHECK(cross_check(p2_from_gamma(gamma0).truncated({4}), genus0().truncated({4})).ok());
  // degree-0 genus-1 incidence constants: -(1/24) h.c(T)
  Vec deg0 = genus1_degree0_incidence(p2);
  CHECK(deg0[1] == frac(-1, 8));
  CHECK(deg0[2] == 0);
}
