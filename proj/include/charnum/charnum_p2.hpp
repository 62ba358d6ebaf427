#pragma once

#include "charnum/descendants.hpp"
#include "charnum/gw.hpp"
#include "charnum/seeds.hpp"
#include "charnum/tangency.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace charnum {

// Requested genus-2 numbers in degrees where the degenerate double and triple covers of a line
// would need extra correction terms that are not implemented.
class ScopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Plane-curve potentials: degree variable s, exponents u (points), v (tangent lines), w (flags).
// A table entry at (d; a,b,c) is the number N_d(a,b,c).
VarSet p2_char_variables();
// Images of the tangency variables: x2 -> u + v, y1 -> v, y2 -> w.
std::map<std::string, Poly> p2_condition_images();
// Gamma (over tangency_variables(p2)) in condition variables; degree-0 strata are dropped.
SeriesTable p2_from_gamma(const SeriesTable& gamma);

// Indices (a,b,c) with a + b + 2c = 3d + g - 1.
std::vector<MultiIndex> p2_indices(int d, int genus);

DiffOperator line_operator();   // d/ds + 2v d/du
DiffOperator point_operator();  // 2v d/ds + (2v^2 + 2w) d/du

struct CoverPolynomials {
  SeriesTable elliptic;  // E: elliptic double covers of a line
  SeriesTable genus2;    // H: genus-2 double covers of a line
};
// Both live at d = 2; `bound` is the truncation degree of the returned tables (at least 2).
CoverPolynomials cover_polynomials(int bound = 2);

// Genus-0 numbers for 1 <= d <= dmax from the primary invariants.
SeriesTable charnum_genus0(const GWTable& gw, int dmax);

// (tau0(h^2) + tau1(h))^b expanded: C(b,k) times tau0(h^2)^(a+b-k) tau1(h)^k tau1(h^2)^c.
std::vector<std::pair<DescendantSpec, Integer>> tangency_expand(int a, int b, int c, int d);
Rational charnum_via_descendants(DescendantEngine& engine, int a, int b, int c, int d);

struct Genus1Result {
  SeriesTable with_covers;   // G1 + E
  SeriesTable enumerative;   // G1
  OverdeterminationReport consistency;  // v-equation at c >= 1 against the w-equation values
};
// Genus-1 numbers from G0 and the primary genus-1 seeds N_d(3d,0,0).
Genus1Result charnum_genus1(const SeriesTable& g0, const SeedTable& seeds, int dmax);
// G1 - (1/24) P G0 + E, the virtual numbers predicted from enumerative ones.
SeriesTable genus1_virtual_prediction(const SeriesTable& g0, const SeriesTable& g1);
// Virtual genus-1 numbers straight from the genus-1 tangency potential.
SeriesTable genus1_virtual_from_gamma(const SeriesTable& gamma1);

// Correction terms of genus 2, each as it enters the virtual numbers.
SeriesTable one_tail_term(const SeriesTable& g1);                  // -(1/24) P G1
SeriesTable one_tail_explicit(const SeriesTable& g1, int dmax);    // the same, coefficientwise
SeriesTable two_tail_term(const SeriesTable& g0);                  // (1/2)((1/24) P)^2 G0
SeriesTable two_tail_explicit(const SeriesTable& g0, int dmax);    // the six-term expansion
SeriesTable double_cover_term(const SeriesTable& g0);              // H_s L G0 + H_u P G0
SeriesTable double_cover_expanded(const SeriesTable& g0);          // node-by-node form of the same

// Genus-2 numbers for 4 <= d <= dmax from virtual genus-2 numbers. Throws ScopeError for dmax <= 3.
SeriesTable charnum_genus2(const SeriesTable& g0, const SeriesTable& g1, const SeedTable& virtual2, int dmax);

// Residuals of the integrated tangency equation, its expanded form and the flag equation.
SeriesTable p2_tangency_residual(const SeriesTable& g0);
SeriesTable p2_expanded_residual(const SeriesTable& g0);
SeriesTable p2_flag_residual(const SeriesTable& g0);

}  // namespace charnum
