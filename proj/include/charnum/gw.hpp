#pragma once

#include "charnum/geometry.hpp"
#include "charnum/seeds.hpp"
#include "charnum/series.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace charnum {

class WdvvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Genus-0 primary invariants for classes beta > 0 within a bound. Only insertions of codim >= 2
// ("core" classes) are stored; unit and divisor insertions are removed by the string and
// divisor equations on lookup.
class GWTable {
 public:
  GWTable() = default;
  GWTable(TargetGeometry geom, CurveClass bound);

  const TargetGeometry& geometry() const { return geom_; }
  const CurveClass& bound() const { return table_.bound(); }
  const std::vector<int>& core_classes() const { return core_; }
  const SeriesTable& table() const { return table_; }

  // Variable set of the stored table: divisor variables x<i> as degree variables, core x<k> as exponents.
  static VarSet variables(const TargetGeometry& geom);

  // Invariant with an arbitrary insertion multiset (basis indices); zero when the dimension fails.
  Rational value(const CurveClass& beta, const std::vector<int>& insertions) const;
  Rational core_value(const CurveClass& beta, const MultiIndex& counts) const { return table_.at(beta, counts); }
  void set_core(const CurveClass& beta, const MultiIndex& counts, const Rational& v) { table_.set(beta, counts, v); }

  // Core count vectors allowed by the dimension constraint at class beta.
  std::vector<MultiIndex> core_monomials(const CurveClass& beta) const;
  MultiIndex core_counts(const std::vector<int>& core_insertions) const;

 private:
  TargetGeometry geom_;
  std::vector<int> core_;
  SeriesTable table_;
};

// Classes 0 < beta <= bound, ordered by total degree and then lexicographically.
std::vector<CurveClass> positive_classes(const CurveClass& bound);

struct WdvvInstance {
  int a = 0, b = 0, c = 0, d = 0;  // basis indices
  MultiIndex extra;                // core counts of the remaining insertions
  CurveClass beta;
  std::string str() const;
};

// Degree-beta coefficient of F_{abe} g^{ef} F_{fcd} - F_{ace} g^{ef} F_{fbd}, classical part included.
Rational wdvv_residual(const GWTable& table, const WdvvInstance& inst);

// All instances at class beta with every index in 1..r, in lexicographic order.
std::vector<WdvvInstance> wdvv_instances(const TargetGeometry& geom, const CurveClass& beta);

struct WdvvSolveStats {
  std::vector<WdvvInstance> used;  // instances that raised the rank
};

// Seeds: core entries in the variables of GWTable::variables; explicit zeros count. Throws
// WdvvError on inconsistent seeds or when an invariant is left undetermined.
GWTable wdvv_solve(const TargetGeometry& geom, const SeedTable& seeds, const CurveClass& bound,
                   WdvvSolveStats* stats = nullptr);

// The genus-0 potential restricted to y = 0, i.e. the stored table.
SeriesTable gw_potential(const GWTable& table);

// Shipped minimal seed set for built-in targets (p<r>, p1xp1); gr24 reads its data file.
SeedTable default_gw_seeds(const TargetGeometry& geom, const CurveClass& bound);

}  // namespace charnum
