#pragma once

#include "charnum/gw.hpp"
#include "charnum/metric.hpp"
#include "charnum/seeds.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace charnum {

class TangencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Variables of the tangency potentials: x<D> for divisors as degree variables; x<k> for classes
// of codim >= 2 and y1..yr as exponent variables. x0 and y0 are left out (string and dilaton).
VarSet tangency_variables(const TargetGeometry& geom);

// gamma^{ef} at y0 = 0, over y1..yr.
PolyMatrix tangency_metric(const TargetGeometry& geom);

// Entries solved more than one way are compared; mismatches are listed here rather than thrown.
// Restricts the classes computed; must accept every class below an accepted one.
using ClassFilter = std::function<bool(const CurveClass&)>;

struct OverdeterminationReport {
  int compared = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

// Genus-0 tangency potential for beta > 0 up to gw.bound(), from the primary invariants and the
// genus-0 first-descendant differential equation with i = j = a divisor of positive degree.
SeriesTable gamma0_pde(const GWTable& gw, OverdeterminationReport* report = nullptr, const ClassFilter& include = {});

// LHS - RHS of the genus-0 equation for (k, i, j); k >= 1, i and j in 0..r.
SeriesTable trr_genus0_first(const SeriesTable& gamma0, const TargetGeometry& geom, int k, int i, int j);
// Same for the integrated equation with k = i = j; k must be a divisor.
SeriesTable trr_genus0_integrated(const SeriesTable& gamma0, const TargetGeometry& geom, int k);

// <tau0(T_f)>_{1,0} for every f: nonzero only for divisors.
Vec genus1_degree0_incidence(const TargetGeometry& geom);

// Genus-1 tangency potential for beta > 0 within gamma0's bound. The y = 0 slice comes from
// `seeds` (variables of GWTable::variables); every needed class must be present there.
SeriesTable trr_genus1_first(const SeriesTable& gamma0, const SeedTable& seeds, const TargetGeometry& geom,
                             OverdeterminationReport* report = nullptr, const ClassFilter& include = {});
// LHS - RHS of the genus-1 equation for k >= 1.
SeriesTable trr_genus1_residual(const SeriesTable& gamma0, const SeriesTable& gamma1, const TargetGeometry& geom,
                                int k);

// Linear change to condition variables. Exponent variables follow `images`; degree variables are
// renamed positionally to target.degree.
SeriesTable to_condition_variables(const SeriesTable& gamma, const VarSet& target,
                                   const std::map<std::string, Poly>& images);

// Same entries under a different variable set of identical shape.
SeriesTable relabel(const SeriesTable& f, const VarSet& target);

}  // namespace charnum
