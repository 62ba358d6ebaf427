#pragma once

#include "charnum/metric.hpp"
#include "charnum/series.hpp"

#include <string>
#include <vector>

namespace charnum {

struct FactorizationCount {
  int d = 0;
  int b = 0;
  Rational count;  // transitive b-tuples of transpositions in S_d with product 1, over d!
  int genus() const { return (b - 2 * d + 2) / 2; }
};

// Exhaustive count, aggregated step by step over (partial product, orbit partition) states.
// Limited to d <= 5 and b <= 10; throws std::invalid_argument beyond.
FactorizationCount hurwitz_bruteforce(int d, int b);

struct Discrepancy {
  CurveClass beta;
  MultiIndex index;
  Rational left, right;
  std::string str() const;
};

struct CrossCheckReport {
  std::vector<Discrepancy> diffs;
  bool ok() const { return diffs.empty(); }
  std::string str() const;
};

// Entry-wise comparison; both tables must share their variables.
CrossCheckReport cross_check(const SeriesTable& a, const SeriesTable& b);

// Hand-entered reference matrices gamma^{ij} for p2 (at y0 = 0) and gr24 (y0 = 0, y1 = v,
// other y's = 0).
PolyMatrix reference_metric_p2();
PolyMatrix reference_metric_gr24();

struct SuiteResult {
  std::string suite;
  bool passed = true;
  std::vector<std::string> lines;
};

// "hurwitz", "p2-genus0", "p2-genus1", "metric".
std::vector<std::string> verify_suite_names();
// Throws std::invalid_argument for an unknown suite.
SuiteResult run_verify_suite(const std::string& suite);

}  // namespace charnum
