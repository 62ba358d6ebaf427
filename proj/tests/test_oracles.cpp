#include "doctest.h"

#include "charnum/cache.hpp"
#include "charnum/hurwitz.hpp"
#include "charnum/metric.hpp"
#include "charnum/oracles.hpp"

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>

using namespace charnum;

namespace {

// Plain enumeration of b-tuples of transpositions in S_d with trivial product and transitive
// action, divided by d!.
Rational naive_hurwitz(int d, int b) {
  std::vector<std::pair<int, int>> transpositions;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) transpositions.emplace_back(i, j);
  const int t = static_cast<int>(transpositions.size());
  if (t == 0) return b == 0 ? Rational(1) : Rational(0);
  long count = 0;
  std::vector<int> choice(b, 0);
  while (true) {
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int k = 0; k < b; ++k) {
      auto [i, j] = transpositions[choice[k]];
      std::swap(perm[i], perm[j]);
      parent[find(i)] = find(j);
    }
    bool identity = true, transitive = true;
    for (int i = 0; i < d; ++i) {
      identity = identity && perm[i] == i;
      transitive = transitive && find(i) == find(0);
    }
    if (identity && transitive) ++count;
    int k = 0;
    while (k < b && ++choice[k] == t) choice[k++] = 0;
    if (k == b) break;
  }
  return Rational(count) / Rational(factorial(d));
}

}  // namespace

TEST_CASE("Hurwitz recursion against plain enumeration") {
  HurwitzTables h = hurwitz(1, 4);
  for (int g = 0; g <= 1; ++g)
    for (int d = 1; d <= 4; ++d) {
      const int b = hurwitz_branch_points(g, d);
      Rational expected = naive_hurwitz(d, b);
      CHECK(hurwitz_bruteforce(d, b).count == expected);
      CHECK((g == 0 ? h.genus0 : h.genus1).at({d}, {b}) == expected);
    }
  CHECK(h.genus0.at({2}, {2}) == frac(1, 2));
  CHECK(hurwitz_bruteforce(3, 6).genus() == 1);
  CHECK_THROWS_AS(hurwitz_bruteforce(6, 2), std::invalid_argument);
}

TEST_CASE("Hurwitz recursion beyond enumeration") {
  HurwitzTables h = hurwitz(1, 5);
  CHECK(h.genus0.at({5}, {8}) == 8400);
  CHECK(h.genus1.at({5}, {10}) == 1189440);
  CHECK(hurwitz_bruteforce(5, 8).count == 8400);
}

TEST_CASE("cross check reports discrepancies") {
  VarSet vars{{"s"}, {"u"}, {}};
  SeriesTable a(vars, {2}), b(vars, {2});
  a.set({1}, {2}, 3);
  b.set({1}, {2}, 3);
  CHECK(cross_check(a, b).ok());
  b.set({2}, {5}, 1);
  CrossCheckReport r = cross_check(a, b);
  REQUIRE(r.diffs.size() == 1);
  CHECK(r.diffs[0].beta == CurveClass{2});
  CHECK(r.diffs[0].right == 1);
  CHECK(!r.str().empty());
  SeriesTable other(VarSet{{"s"}, {"w"}, {}}, {2});
  CHECK_THROWS(cross_check(a, other));
}

TEST_CASE("reference matrices are symmetric and unimodular at zero") {
  for (const PolyMatrix& m : {reference_metric_p2(), reference_metric_gr24()})
    for (int i = 0; i < m.size(); ++i)
      for (int j = 0; j < m.size(); ++j) CHECK(m.at(i, j) == m.at(j, i));
  CHECK(reference_metric_p2().size() == 3);
  CHECK(reference_metric_gr24().size() == 6);
}

TEST_CASE("verify suites pass") {
  for (const auto& name : verify_suite_names()) {
    SuiteResult r = run_verify_suite(name);
    CHECK_MESSAGE(r.passed, name);
    CHECK(!r.lines.empty());
  }
  CHECK_THROWS_AS(run_verify_suite("nope"), std::invalid_argument);
}

TEST_CASE("memo cache round trip") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "charnum-cache-test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  TargetGeometry p2 = builtin_geometry("p2");
  std::string path = (dir / "p2.cache").string();
  CHECK(load_cache(path, p2).empty());
  save_cache(path, p2, {{"tau0(T2)^2 @ g=0 d=1", 1}});
  save_cache(path, p2, {{"tau0(T2)^5 @ g=0 d=2", 1}, {"tau1(T2)^2 tau0(T2) @ g=0 d=2", frac(-1, 4)}});
  MemoRecords back = load_cache(path, p2);
  CHECK(back.size() == 3);
  CHECK(back.at("tau1(T2)^2 tau0(T2) @ g=0 d=2") == frac(-1, 4));
  // another target's fingerprint invalidates the file
  CHECK(load_cache(path, builtin_geometry("p3")).empty());
  {
    std::ofstream broken(path);
    broken << "garbage\n";
  }
  CHECK(load_cache(path, p2).empty());
  unsetenv("CHARNUM_CACHE_DIR");
  CHECK(!default_cache_path(p2).has_value());
  setenv("CHARNUM_CACHE_DIR", dir.string().c_str(), 1);
  auto located = default_cache_path(p2);
  REQUIRE(located.has_value());
  CHECK(located->find(dir.string()) == 0);
  fs::remove_all(dir);
}
