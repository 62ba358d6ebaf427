#include "doctest.h"

#include "charnum/metric.hpp"
#include "charnum/oracles.hpp"

using namespace charnum;

namespace {

PolyMatrix at_y0_zero(const PolyMatrix& m) {
  std::vector<std::string> ys(m.vars.begin() + 1, m.vars.end());
  std::map<std::string, Poly> assign{{"y0", Poly(ys)}};
  for (const auto& y : ys) assign[y] = Poly::variable(ys, y);
  return substitute_metric(m, assign, ys);
}

}  // namespace

TEST_CASE("plane metric equals the hand matrix") {
  PolyMatrix up = deformed_metric(builtin_geometry("p2")).upper;
  CHECK(at_y0_zero(up) == reference_metric_p2());
}

TEST_CASE("grassmannian metric on the line y1 = v") {
  TargetGeometry g = builtin_geometry("gr24");
  PolyMatrix up = deformed_metric(g).upper;
  std::vector<std::string> v{"v"};
  std::map<std::string, Poly> assign;
  for (const auto& y : up.vars) assign[y] = Poly(v);
  assign["y1"] = Poly::variable(v, "v");
  CHECK(substitute_metric(up, assign, v) == reference_metric_gr24());
}

TEST_CASE("lower and upper metrics are inverse") {
  for (const char* name : {"p1", "p2", "p3", "p4", "p1xp1", "gr24"}) {
    DeformedMetric m = deformed_metric(builtin_geometry(name), 5);
    CHECK(is_identity(matrix_product(m.lower, m.upper, 5)));
    CHECK(is_identity(matrix_product(m.upper, m.lower, 5)));
  }
}

TEST_CASE("undeformed limit is the Poincare pairing") {
  TargetGeometry p2 = builtin_geometry("p2");
  PolyMatrix up = deformed_metric(p2).upper;
  std::map<std::string, Poly> zero;
  for (const auto& y : up.vars) zero[y] = Poly(std::vector<std::string>{});
  PolyMatrix flat = substitute_metric(up, zero, {});
  CHECK(flat == numeric_matrix(p2.inverse_pairing, {}));
}

TEST_CASE("partial assignment is rejected") {
  PolyMatrix up = deformed_metric(builtin_geometry("p2")).upper;
  CHECK_THROWS(substitute_metric(up, {{"y1", Poly::variable({"y1"}, "y1")}}, {"y1"}));
}

TEST_CASE("row operators read the matrix") {
  PolyMatrix up = at_y0_zero(deformed_metric(builtin_geometry("p2")).upper);
  DiffOperator op = row_operator(up, 1, {"", "a", "b"});
  // row 1 is (0, 1, 2 y1); the first column is skipped
  REQUIRE(op.terms.size() == 2);
  CHECK(op.terms[0].second == "a");
  CHECK(op.terms[1].first == Poly::variable({"y1", "y2"}, "y1", 2));
}
