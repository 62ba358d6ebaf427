#include "charnum/tangency.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace charnum {

VarSet tangency_variables(const TargetGeometry& geom) {
  VarSet vs = GWTable::variables(geom);
  for (int k = 1; k < geom.rank(); ++k) vs.vars.push_back("y" + std::to_string(k));
  return vs;
}

PolyMatrix tangency_metric(const TargetGeometry& geom) {
  PolyMatrix full = deformed_metric(geom, 0).upper;
  std::vector<std::string> ys(full.vars.begin() + 1, full.vars.end());
  std::map<std::string, Poly> assign;
  assign["y0"] = Poly(ys);
  for (const auto& y : ys) assign[y] = Poly::variable(ys, y);
  return substitute_metric(full, assign, ys);
}

namespace {

// d/dx_k with x0 giving zero
SeriesTable dx(const SeriesTable& f, int k) {
  if (k == 0) return SeriesTable(f.vars(), f.bound());
  return partial_derivative(f, "x" + std::to_string(k));
}

SeriesTable dxs(const SeriesTable& f, std::initializer_list<int> ks) {
  SeriesTable r = f;
  for (int k : ks) r = dx(r, k);
  return r;
}

// Directional derivative along T_a cup T_b.
SeriesTable dprod(const SeriesTable& f, const TargetGeometry& g, int a, int b) {
  SeriesTable r(f.vars(), f.bound());
  const Vec& p = g.cup_product(a, b);
  for (int m = 0; m < g.rank(); ++m)
    if (p[m] != 0) r += dx(f, m) * p[m];
  return r;
}

// sum_{e,f} multiply(A_e, gamma^{ef}) * B_f
SeriesTable metric_contract(const std::vector<SeriesTable>& A, const std::vector<SeriesTable>& B,
                            const PolyMatrix& gm, const CurveClass* target) {
  SeriesTable out(A[1].vars(), A[1].bound());
  for (int e = 1; e < gm.size(); ++e) {
    if (A[e].empty()) continue;
    for (int f = 1; f < gm.size(); ++f) {
      if (gm.rows[e][f].is_zero() || B[f].empty()) continue;
      SeriesTable left = multiply(A[e], gm.rows[e][f]);
      out += target ? series_product_at(left, B[f], *target) : series_product(left, B[f]);
    }
  }
  return out;
}

void weighted(const std::vector<int>& w, int target, std::vector<MultiIndex>& out) {
  MultiIndex cur(w.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == w.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int e = 0; e * w[k] <= left; ++e) {
      cur[k] = e;
      rec(k + 1, left - e * w[k]);
    }
    cur[k] = 0;
  };
  if (target >= 0) rec(0, target);
}

struct Layout {
  std::vector<int> core;  // basis index of each core exponent slot
  int ncore = 0;
  int rank = 0;
  std::vector<int> weights_g0, weights_g1;
};

Layout layout_of(const TargetGeometry& g) {
  Layout l;
  l.rank = g.rank();
  for (int k = 1; k < g.rank(); ++k)
    if (g.codim[k] >= 2) l.core.push_back(k);
  l.ncore = static_cast<int>(l.core.size());
  for (int k : l.core) l.weights_g0.push_back(g.codim[k] - 1);
  for (int k = 1; k < g.rank(); ++k) l.weights_g0.push_back(g.codim[k]);
  return l;
}

// Indices (core exponents, y exponents) allowed at class beta, sorted by y-degree then lexicographically.
std::vector<MultiIndex> indices_at(const TargetGeometry& g, const Layout& l, const CurveClass& beta, int genus) {
  std::vector<MultiIndex> out;
  int target = (g.dim - 3) * (1 - genus) + g.c1_degree(beta);
  weighted(l.weights_g0, target, out);
  auto ydeg = [&](const MultiIndex& m) {
    int s = 0;
    for (std::size_t i = l.ncore; i < m.size(); ++i) s += m[i];
    return s;
  };
  std::stable_sort(out.begin(), out.end(), [&](const MultiIndex& a, const MultiIndex& b) {
    int da = ydeg(a), db = ydeg(b);
    if (da != db) return da < db;
    return a < b;
  });
  return out;
}

// Value of the potential at (beta, idx) with extra tau0 insertions; divisors scale, T0 kills.
Rational x_lookup(const SeriesTable& f, const TargetGeometry& g, const Layout& l, const CurveClass& beta,
                  MultiIndex idx, std::initializer_list<int> extra) {
  Rational factor = 1;
  for (int k : extra) {
    if (k == 0) return 0;
    if (g.codim[k] == 1) {
      factor *= g.divisor_degree(k, beta);
    } else {
      auto it = std::find(l.core.begin(), l.core.end(), k);
      ++idx[it - l.core.begin()];
    }
  }
  if (factor == 0) return 0;
  return factor * f.at(beta, idx);
}

int first_positive_divisor(const TargetGeometry& g, const CurveClass& beta) {
  for (int d : g.divisors)
    if (g.divisor_degree(d, beta) > 0) return d;
  throw TangencyError("class " + join_ints(beta) + " has no divisor of positive degree");
}

}  // namespace

SeriesTable gamma0_pde(const GWTable& gw, OverdeterminationReport* report, const ClassFilter& include) {
  const TargetGeometry& g = gw.geometry();
  const Layout l = layout_of(g);
  const PolyMatrix gm = tangency_metric(g);
  SeriesTable table(tangency_variables(g), gw.bound());
  for (const auto& beta : positive_classes(gw.bound())) {
    if (include && !include(beta)) continue;
    const int D = first_positive_divisor(g, beta);
    const Rational dd = g.divisor_degree(D, beta);
    // quadratic terms only see lower classes, so they can be formed once per class
    std::vector<SeriesTable> ddd(l.rank);
    for (int f = 1; f < l.rank; ++f) ddd[f] = dxs(table, {f, D, D});
    std::map<int, SeriesTable> quad;
    auto quad_for = [&](int k) -> const SeriesTable& {
      auto it = quad.find(k);
      if (it != quad.end()) return it->second;
      std::vector<SeriesTable> left(l.rank);
      for (int e = 1; e < l.rank; ++e) left[e] = dxs(table, {k, e});
      return quad.emplace(k, metric_contract(left, ddd, gm, &beta)).first->second;
    };
    for (const auto& idx : indices_at(g, l, beta, 0)) {
      bool no_y = std::all_of(idx.begin() + l.ncore, idx.end(), [](int x) { return x == 0; });
      if (no_y) {
        MultiIndex core(idx.begin(), idx.begin() + l.ncore);
        table.set(beta, idx, gw.core_value(beta, core));
        continue;
      }
      std::vector<Rational> values;
      std::vector<int> ks;
      for (int slot = l.ncore; slot < static_cast<int>(idx.size()); ++slot) {
        if (idx[slot] == 0) continue;
        const int k = slot - l.ncore + 1;
        MultiIndex lower = idx;
        --lower[slot];
        Rational lin = 0;
        const Vec& dd_prod = g.cup_product(D, D);
        const Vec& kd_prod = g.cup_product(k, D);
        for (int m = 0; m < l.rank; ++m) {
          if (dd_prod[m] != 0) lin += dd_prod[m] * x_lookup(table, g, l, beta, lower, {k, m});
          if (kd_prod[m] != 0) lin -= 2 * kd_prod[m] * x_lookup(table, g, l, beta, lower, {m, D});
        }
        values.push_back((lin + quad_for(k).at(beta, lower)) / (dd * dd));
        ks.push_back(k);
        if (!report) break;
      }
      for (std::size_t t = 1; t < values.size(); ++t) {
        ++report->compared;
        if (values[t] != values[0])
          report->mismatches.push_back("genus 0 class " + join_ints(beta) + " index " + join_ints(idx) + ": y" +
                                       std::to_string(ks[0]) + " gives " + to_string(values[0]) + ", y" +
                                       std::to_string(ks[t]) + " gives " + to_string(values[t]));
      }
      table.set(beta, idx, values[0]);
    }
  }
  return table;
}

SeriesTable trr_genus0_first(const SeriesTable& gamma0, const TargetGeometry& g, int k, int i, int j) {
  if (k < 1 || k >= g.rank() || i < 0 || j < 0 || i >= g.rank() || j >= g.rank())
    throw std::invalid_argument("index out of range in the genus-0 equation");
  const PolyMatrix gm = tangency_metric(g);
  SeriesTable lhs = dxs(partial_derivative(gamma0, "y" + std::to_string(k)), {i, j});
  SeriesTable rhs = dprod(dx(gamma0, k), g, i, j);
  rhs -= dx(dprod(gamma0, g, k, i), j);
  rhs -= dx(dprod(gamma0, g, k, j), i);
  std::vector<SeriesTable> left(g.rank()), right(g.rank());
  for (int e = 1; e < g.rank(); ++e) {
    left[e] = dxs(gamma0, {k, e});
    right[e] = dxs(gamma0, {e, i, j});
  }
  rhs += metric_contract(left, right, gm, nullptr);
  return lhs - rhs;
}

SeriesTable trr_genus0_integrated(const SeriesTable& gamma0, const TargetGeometry& g, int k) {
  if (k < 1 || k >= g.rank() || g.codim[k] != 1)
    throw std::invalid_argument("the integrated equation needs a divisor index");
  const PolyMatrix gm = tangency_metric(g);
  SeriesTable lhs = dx(partial_derivative(gamma0, "y" + std::to_string(k)), k);
  SeriesTable rhs = dprod(gamma0, g, k, k) * Rational(-1);
  std::vector<SeriesTable> left(g.rank());
  for (int e = 1; e < g.rank(); ++e) left[e] = dxs(gamma0, {k, e});
  rhs += metric_contract(left, left, gm, nullptr) * frac(1, 2);
  return lhs - rhs;
}

Vec genus1_degree0_incidence(const TargetGeometry& g) {
  Vec out(g.rank(), Rational(0));
  for (int d : g.divisors) out[d] = -g.divisor_chern_integral(d) / 24;
  return out;
}

namespace {

// RHS of the genus-1 equation for y_k, at one class (target) or everywhere.
SeriesTable genus1_rhs(const SeriesTable& gamma0, const SeriesTable& gamma1, const TargetGeometry& g,
                       const PolyMatrix& gm, int k, const CurveClass* target) {
  const Vec c0 = genus1_degree0_incidence(g);
  std::vector<SeriesTable> left(g.rank()), right(g.rank());
  for (int e = 1; e < g.rank(); ++e) {
    left[e] = dxs(gamma0, {k, e});
    right[e] = dx(gamma1, e);
  }
  SeriesTable out = metric_contract(left, right, gm, target);
  for (int e = 1; e < g.rank(); ++e)
    for (int f = 1; f < g.rank(); ++f) {
      if (gm.rows[e][f].is_zero()) continue;
      Rational w = c0[f];
      SeriesTable third = dxs(gamma0, {k, e, f});
      SeriesTable t = multiply(dxs(gamma0, {k, e}), gm.rows[e][f]) * w;
      t += multiply(third, gm.rows[e][f]) * frac(1, 24);
      out += target ? t.stratum(*target) : t;
    }
  return out;
}

}  // namespace

SeriesTable trr_genus1_first(const SeriesTable& gamma0, const SeedTable& seeds, const TargetGeometry& g,
                             OverdeterminationReport* report, const ClassFilter& include) {
  const Layout l = layout_of(g);
  const PolyMatrix gm = tangency_metric(g);
  if (!(seeds.vars() == GWTable::variables(g))) throw TangencyError("genus-1 seed variables do not match the target");
  SeriesTable table(gamma0.vars(), gamma0.bound());
  for (const auto& beta : positive_classes(gamma0.bound())) {
    if (include && !include(beta)) continue;
    std::map<int, SeriesTable> rhs;
    auto rhs_for = [&](int k) -> const SeriesTable& {
      auto it = rhs.find(k);
      if (it != rhs.end()) return it->second;
      return rhs.emplace(k, genus1_rhs(gamma0, table, g, gm, k, &beta)).first->second;
    };
    for (const auto& idx : indices_at(g, l, beta, 1)) {
      bool no_y = std::all_of(idx.begin() + l.ncore, idx.end(), [](int x) { return x == 0; });
      if (no_y) {
        MultiIndex core(idx.begin(), idx.begin() + l.ncore);
        table.set(beta, idx, seeds.require(beta, core));
        continue;
      }
      std::vector<Rational> values;
      std::vector<int> ks;
      for (int slot = l.ncore; slot < static_cast<int>(idx.size()); ++slot) {
        if (idx[slot] == 0) continue;
        const int k = slot - l.ncore + 1;
        MultiIndex lower = idx;
        --lower[slot];
        values.push_back(rhs_for(k).at(beta, lower));
        ks.push_back(k);
        if (!report) break;
      }
      for (std::size_t t = 1; t < values.size(); ++t) {
        ++report->compared;
        if (values[t] != values[0])
          report->mismatches.push_back("genus 1 class " + join_ints(beta) + " index " + join_ints(idx) + ": y" +
                                       std::to_string(ks[0]) + " gives " + to_string(values[0]) + ", y" +
                                       std::to_string(ks[t]) + " gives " + to_string(values[t]));
      }
      table.set(beta, idx, values[0]);
    }
  }
  return table;
}

SeriesTable trr_genus1_residual(const SeriesTable& gamma0, const SeriesTable& gamma1, const TargetGeometry& g,
                                int k) {
  if (k < 1 || k >= g.rank()) throw std::invalid_argument("k out of range in the genus-1 equation");
  const PolyMatrix gm = tangency_metric(g);
  return partial_derivative(gamma1, "y" + std::to_string(k)) - genus1_rhs(gamma0, gamma1, g, gm, k, nullptr);
}

SeriesTable relabel(const SeriesTable& f, const VarSet& target) {
  if (target.degree.size() != f.vars().degree.size() || target.vars.size() != f.vars().vars.size())
    throw std::invalid_argument("relabel needs variable sets of the same shape");
  SeriesTable out(target, f.bound());
  for (const auto& [k, v] : f.entries()) out.set(k.first, k.second, v);
  return out;
}

SeriesTable to_condition_variables(const SeriesTable& gamma, const VarSet& target,
                                   const std::map<std::string, Poly>& images) {
  VarSet mid{gamma.vars().degree, target.vars, {}};
  SeriesTable moved = linear_substitute(gamma, mid, images);
  return relabel(moved, target);
}

}  // namespace charnum
