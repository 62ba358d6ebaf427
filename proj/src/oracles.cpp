#include "charnum/oracles.hpp"

#include "charnum/charnum_p2.hpp"
#include "charnum/hurwitz.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

namespace charnum {

namespace {

using Perm = std::vector<int>;

// relabel blocks in order of first appearance
std::vector<int> canonical_blocks(const std::vector<int>& blocks) {
  std::map<int, int> seen;
  std::vector<int> out(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    auto it = seen.try_emplace(blocks[i], static_cast<int>(seen.size())).first;
    out[i] = it->second;
  }
  return out;
}

}  // namespace

FactorizationCount hurwitz_bruteforce(int d, int b) {
  if (d < 1 || d > 5 || b < 0 || b > 10) throw std::invalid_argument("brute-force Hurwitz count limited to d <= 5, b <= 10");
  std::vector<std::pair<int, int>> transpositions;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) transpositions.emplace_back(i, j);
  Perm identity(d);
  std::iota(identity.begin(), identity.end(), 0);
  using State = std::pair<Perm, std::vector<int>>;
  std::map<State, Integer> states{{{identity, identity}, Integer(1)}};
  for (int step = 0; step < b; ++step) {
    std::map<State, Integer> next;
    for (const auto& [state, ways] : states)
      for (const auto& [i, j] : transpositions) {
        Perm p = state.first;
        std::swap(p[i], p[j]);  // p . (i j)
        std::vector<int> blocks = state.second;
        const int from = blocks[j], to = blocks[i];
        for (int& x : blocks)
          if (x == from) x = to;
        next[{p, canonical_blocks(blocks)}] += ways;
      }
    states = std::move(next);
  }
  Integer count = 0;
  auto it = states.find({identity, std::vector<int>(d, 0)});
  if (it != states.end()) count = it->second;
  FactorizationCount out;
  out.d = d;
  out.b = b;
  out.count = Rational(count) / Rational(factorial(d));
  out.count.canonicalize();
  return out;
}

std::string Discrepancy::str() const {
  return "class " + join_ints(beta) + " index " + join_ints(index) + ": " + to_string(left) + " vs " + to_string(right);
}

std::string CrossCheckReport::str() const {
  std::string s;
  for (const auto& d : diffs) s += d.str() + "\n";
  return s;
}

CrossCheckReport cross_check(const SeriesTable& a, const SeriesTable& b) {
  if (!(a.vars() == b.vars())) throw std::invalid_argument("cross_check needs tables over the same variables");
  CrossCheckReport r;
  auto ia = a.entries().begin(), ib = b.entries().begin();
  while (ia != a.entries().end() || ib != b.entries().end()) {
    if (ib == b.entries().end() || (ia != a.entries().end() && ia->first < ib->first)) {
      r.diffs.push_back({ia->first.first, ia->first.second, ia->second, 0});
      ++ia;
    } else if (ia == a.entries().end() || ib->first < ia->first) {
      r.diffs.push_back({ib->first.first, ib->first.second, 0, ib->second});
      ++ib;
    } else {
      if (ia->second != ib->second) r.diffs.push_back({ia->first.first, ia->first.second, ia->second, ib->second});
      ++ia;
      ++ib;
    }
  }
  return r;
}

namespace {

PolyMatrix from_rows(const std::vector<std::string>& vars, const std::vector<std::vector<Poly>>& rows) {
  PolyMatrix m;
  m.vars = vars;
  m.rows = rows;
  return m;
}

}  // namespace

PolyMatrix reference_metric_p2() {
  const std::vector<std::string> vars = {"y1", "y2"};
  auto c = [&](long n) { return Poly::constant(vars, n); };
  Poly y1 = Poly::variable(vars, "y1"), y2 = Poly::variable(vars, "y2");
  return from_rows(vars, {{c(0), c(0), c(1)}, {c(0), c(1), y1 * c(2)}, {c(1), y1 * c(2), y1 * y1 * c(2) + y2 * c(2)}});
}

PolyMatrix reference_metric_gr24() {
  const std::vector<std::string> vars = {"v"};
  auto c = [&](const Rational& n) { return Poly::constant(vars, n); };
  Poly v = Poly::variable(vars, "v");
  Poly v2 = v * v, v3 = v2 * v, v4 = v3 * v;
  return from_rows(vars, {
                             {c(0), c(0), c(0), c(0), c(0), c(1)},
                             {c(0), c(0), c(0), c(0), c(1), v * c(2)},
                             {c(0), c(0), c(1), c(0), v * c(2), v2 * c(2)},
                             {c(0), c(0), c(0), c(1), v * c(2), v2 * c(2)},
                             {c(0), c(1), v * c(2), v * c(2), v2 * c(4), v3 * c(frac(8, 3))},
                             {c(1), v * c(2), v2 * c(2), v2 * c(2), v3 * c(frac(8, 3)), v4 * c(frac(4, 3))},
                         });
}

std::vector<std::string> verify_suite_names() { return {"hurwitz", "p2-genus0", "p2-genus1", "metric"}; }

namespace {

void expect(SuiteResult& r, bool ok, const std::string& what) {
  r.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  r.passed = r.passed && ok;
}

void report_diffs(SuiteResult& r, const CrossCheckReport& rep, const std::string& what) {
  expect(r, rep.ok(), what);
  for (std::size_t i = 0; i < rep.diffs.size() && i < 10; ++i) r.lines.push_back("     " + rep.diffs[i].str());
}

SuiteResult suite_hurwitz() {
  SuiteResult r{"hurwitz", true, {}};
  HurwitzTables h = hurwitz(1, 4);
  for (int g = 0; g <= 1; ++g)
    for (int d = 1; d <= 4; ++d) {
      const int b = hurwitz_branch_points(g, d);
      Rational rec = (g == 0 ? h.genus0 : h.genus1).at({d}, {b});
      Rational brute = hurwitz_bruteforce(d, b).count;
      expect(r, rec == brute,
             "g=" + std::to_string(g) + " d=" + std::to_string(d) + " b=" + std::to_string(b) + ": recursion " +
                 to_string(rec) + ", enumeration " + to_string(brute));
    }
  return r;
}

SuiteResult suite_p2_genus0() {
  SuiteResult r{"p2-genus0", true, {}};
  const int dmax = 3;
  TargetGeometry g = builtin_geometry("p2");
  GWTable gw = wdvv_solve(g, default_gw_seeds(g, {dmax}), {dmax});
  SeriesTable pipeline = charnum_genus0(gw, dmax);
  DescendantEngine engine(gw);
  SeriesTable desc(p2_char_variables(), {dmax});
  for (int d = 1; d <= dmax; ++d)
    for (const auto& idx : p2_indices(d, 0))
      desc.set({d}, idx, charnum_via_descendants(engine, idx[0], idx[1], idx[2], d));
  report_diffs(r, cross_check(pipeline, desc), "pipeline equals the descendant recursion, d <= 3");
  report_diffs(r, cross_check(pipeline, p2_from_gamma(gamma0_pde(gw))),
               "pipeline equals the genus-0 tangency potential, d <= 3");
  SeriesTable res = p2_tangency_residual(pipeline);
  expect(r, res.empty(), "integrated tangency equation holds");
  expect(r, p2_flag_residual(pipeline).empty(), "flag equation holds");
  return r;
}

SuiteResult suite_p2_genus1() {
  SuiteResult r{"p2-genus1", true, {}};
  const int dmax = 4;
  TargetGeometry g = builtin_geometry("p2");
  GWTable gw = wdvv_solve(g, default_gw_seeds(g, {dmax}), {dmax});
  SeriesTable g0 = charnum_genus0(gw, dmax);
  SeedTable seeds = read_seed_file(shipped_seed_path("p2_genus1.txt"));
  Genus1Result direct = charnum_genus1(g0, seeds, dmax);
  expect(r, direct.consistency.ok(),
         "tangency and flag equations agree (" + std::to_string(direct.consistency.compared) + " entries)");
  OverdeterminationReport over;
  SeriesTable gamma1 = trr_genus1_first(gamma0_pde(gw), seeds, g, &over);
  expect(r, over.ok(), "genus-1 tangency potential is consistent (" + std::to_string(over.compared) + " entries)");
  report_diffs(r, cross_check(genus1_virtual_prediction(g0, direct.enumerative), genus1_virtual_from_gamma(gamma1)),
               "direct and virtual routes agree, d <= 4");
  bool integral = true;
  for (const auto& [k, v] : direct.enumerative.entries()) integral = integral && is_integer(v) && v >= 0;
  expect(r, integral, "enumerative entries are non-negative integers");
  return r;
}

SuiteResult suite_metric() {
  SuiteResult r{"metric", true, {}};
  {
    TargetGeometry g = builtin_geometry("p2");
    PolyMatrix up = deformed_metric(g).upper;
    std::vector<std::string> ys = {"y1", "y2"};
    PolyMatrix at0 = substitute_metric(
        up, {{"y0", Poly(ys)}, {"y1", Poly::variable(ys, "y1")}, {"y2", Poly::variable(ys, "y2")}}, ys);
    expect(r, at0 == reference_metric_p2(), "p2 gamma^{ij} matches the reference matrix");
  }
  {
    TargetGeometry g = builtin_geometry("gr24");
    PolyMatrix up = deformed_metric(g).upper;
    std::vector<std::string> vs = {"v"};
    std::map<std::string, Poly> assign;
    for (const auto& y : up.vars) assign[y] = Poly(vs);
    assign["y1"] = Poly::variable(vs, "v");
    expect(r, substitute_metric(up, assign, vs) == reference_metric_gr24(), "gr24 gamma^{ij} matches the reference matrix");
  }
  for (const std::string name : {"p1", "p2", "p3", "p1xp1", "gr24"}) {
    DeformedMetric m = deformed_metric(builtin_geometry(name), 6);
    expect(r, is_identity(matrix_product(m.lower, m.upper, 6)), name + ": lower times upper is the identity");
  }
  return r;
}

}  // namespace

SuiteResult run_verify_suite(const std::string& suite) {
  if (suite == "hurwitz") return suite_hurwitz();
  if (suite == "p2-genus0") return suite_p2_genus0();
  if (suite == "p2-genus1") return suite_p2_genus1();
  if (suite == "metric") return suite_metric();
  throw std::invalid_argument("unknown verify suite '" + suite + "'");
}

}  // namespace charnum
