#pragma once

#include "charnum/gw.hpp"
#include "charnum/hurwitz.hpp"
#include "charnum/seeds.hpp"
#include "charnum/tangency.hpp"

namespace charnum {

// Quadric potentials: degree variables u1, u2 (partial degrees d1, d2) with s = u1 + u2 as an
// alias; exponents u (points), v (tangent (1,1)-curves), w (flags).
VarSet quadric_char_variables();
// x3 -> u + 2v, y1 -> v, y2 -> v, y3 -> w.
std::map<std::string, Poly> quadric_condition_images();
SeriesTable quadric_from_gamma(const SeriesTable& gamma);

// Indices (a,b,c) with a + b + 2c = 2(d1 + d2) - 1 + g.
std::vector<MultiIndex> quadric_indices(const CurveClass& beta, int genus);

DiffOperator quadric_line_operator(int ruling);  // L1 = d/du2 + 2v d/du, L2 = d/du1 + 2v d/du
DiffOperator quadric_point_operator();           // 2v d/du1 + 2v d/du2 + (4v^2 + 2w) d/du

// Classes within a bound: "d1,d2" caps each partial degree; a total-degree cap keeps d1 + d2 <= D.
struct QuadricBound {
  CurveClass box;
  int total = -1;  // -1 for no total cap
  bool contains(const CurveClass& beta) const;
};
QuadricBound quadric_total_bound(int total);

// Genus-0 numbers for all classes 0 < beta within the bound (gw must reach bound.box).
SeriesTable quadric_genus0(const GWTable& gw, const QuadricBound& bound);

struct RuleCovers {
  SeriesTable horizontal;  // I: covers of a (1,0) rule, classes (i,0)
  SeriesTable vertical;    // J: covers of a (0,1) rule, classes (0,j)
};
// Built from the genus-1 Hurwitz potential; the tables use quadric_char_variables and `box`.
RuleCovers rule_cover_potentials(const SeriesTable& hurwitz1, const CurveClass& box);

struct QuadricGenus1Result {
  SeriesTable virtual_numbers;  // from the genus-1 tangency potential
  SeriesTable enumerative;      // d1 > 0 and d2 > 0 only
  OverdeterminationReport consistency;
};
// seeds: primary genus-1 invariants of p1xp1 (variables of GWTable::variables).
QuadricGenus1Result quadric_genus1(const GWTable& gw, const SeriesTable& g0, const SeedTable& seeds,
                                   const QuadricBound& bound);

// (d1,d2; u1) <-> (d2,d1; u2) image of a quadric table.
SeriesTable swap_rulings(const SeriesTable& f);

}  // namespace charnum
