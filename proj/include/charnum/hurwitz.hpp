#pragma once

#include "charnum/series.hpp"

namespace charnum {

// Potentials of simple Hurwitz numbers of P1: degree variable t, exponent v counting branch
// points. Entry (d; b) of genus g is the weighted number of degree-d genus-g covers simply
// branched over b = 2d + 2g - 2 given points.
VarSet hurwitz_variables();

struct HurwitzTables {
  SeriesTable genus0;
  SeriesTable genus1;  // empty table when not requested
};

// gmax is 0 or 1.
HurwitzTables hurwitz(int gmax, int dmax);

inline int hurwitz_branch_points(int genus, int d) { return 2 * d + 2 * genus - 2; }

}  // namespace charnum
