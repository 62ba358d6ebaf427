#pragma once

#include "charnum/geometry.hpp"
#include "charnum/poly.hpp"
#include "charnum/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace charnum {

struct PolyMatrix {
  std::vector<std::string> vars;
  std::vector<std::vector<Poly>> rows;

  int size() const { return static_cast<int>(rows.size()); }
  const Poly& at(int i, int j) const { return rows[i][j]; }
  bool operator==(const PolyMatrix& o) const;
  std::string str() const;
};

// y0, y1, ..., yr
std::vector<std::string> metric_vars(const TargetGeometry& geom);

struct DeformedMetric {
  PolyMatrix lower;  // gamma_{ij}
  PolyMatrix upper;  // gamma^{ij}
  int y0_order = 0;  // the exp(+-2 y0) factor is truncated at this y0-degree
};

// Both matrices from their cup-power sums; the non-T0 part of each sum is finite.
DeformedMetric deformed_metric(const TargetGeometry& geom, int y0_order = 0);

// Product truncated at y0-degree `y0_order` (other variables are never truncated).
PolyMatrix matrix_product(const PolyMatrix& a, const PolyMatrix& b, int y0_order);
bool is_identity(const PolyMatrix& m);

PolyMatrix numeric_matrix(const Mat& m, const std::vector<std::string>& vars);

// Every y-variable must be assigned; throws otherwise.
PolyMatrix substitute_metric(const PolyMatrix& m, const std::map<std::string, Poly>& assignment,
                             const std::vector<std::string>& target_vars);

// First-order operator sum_f m[row][f] d/d(column_vars[f]); empty column names are skipped.
DiffOperator row_operator(const PolyMatrix& m, int row, const std::vector<std::string>& column_vars);

}  // namespace charnum
