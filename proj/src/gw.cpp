#include "charnum/gw.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace charnum {

VarSet GWTable::variables(const TargetGeometry& geom) {
  VarSet vs;
  for (int d : geom.divisors) vs.degree.push_back("x" + std::to_string(d));
  for (int k = 1; k < geom.rank(); ++k)
    if (geom.codim[k] >= 2) vs.vars.push_back("x" + std::to_string(k));
  return vs;
}

GWTable::GWTable(TargetGeometry geom, CurveClass bound) : geom_(std::move(geom)) {
  for (int k = 1; k < geom_.rank(); ++k)
    if (geom_.codim[k] >= 2) core_.push_back(k);
  table_ = SeriesTable(variables(geom_), std::move(bound));
}

MultiIndex GWTable::core_counts(const std::vector<int>& core_insertions) const {
  MultiIndex m(core_.size(), 0);
  for (int i : core_insertions) {
    auto it = std::find(core_.begin(), core_.end(), i);
    if (it == core_.end()) throw std::invalid_argument("not a core class: " + std::to_string(i));
    ++m[it - core_.begin()];
  }
  return m;
}

namespace {

bool is_zero_class(const CurveClass& c) {
  return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

// Multisets over `weights` (counts per slot) with weighted sum equal to target.
void weighted_multisets(const std::vector<int>& weights, int target, std::vector<MultiIndex>& out) {
  MultiIndex cur(weights.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == weights.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int e = 0; e * weights[k] <= left; ++e) {
      cur[k] = e;
      rec(k + 1, left - e * weights[k]);
    }
    cur[k] = 0;
  };
  if (target >= 0) rec(0, target);
}

}  // namespace

std::vector<MultiIndex> GWTable::core_monomials(const CurveClass& beta) const {
  std::vector<int> w;
  for (int k : core_) w.push_back(geom_.codim[k] - 1);
  std::vector<MultiIndex> out;
  weighted_multisets(w, geom_.dim - 3 + geom_.c1_degree(beta), out);
  return out;
}

Rational GWTable::value(const CurveClass& beta, const std::vector<int>& insertions) const {
  if (is_zero_class(beta)) throw std::invalid_argument("genus-0 invariants need a positive class");
  Rational factor = 1;
  std::vector<int> core;
  for (int i : insertions) {
    if (i == 0) return 0;
    if (geom_.codim[i] == 1) {
      factor *= geom_.divisor_degree(i, beta);
      if (factor == 0) return 0;
    } else {
      core.push_back(i);
    }
  }
  int codims = 0;
  for (int i : core) codims += geom_.codim[i];
  if (codims != vdim(geom_, 0, beta, static_cast<int>(core.size()))) return 0;
  if (!table_.within_bound(beta)) throw std::out_of_range("class " + join_ints(beta) + " beyond the solved bound");
  return factor * table_.at(beta, core_counts(core));
}

std::vector<CurveClass> positive_classes(const CurveClass& bound) {
  std::vector<CurveClass> out;
  CurveClass cur(bound.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == bound.size()) {
      if (!is_zero_class(cur)) out.push_back(cur);
      return;
    }
    for (int e = 0; e <= bound[k]; ++e) {
      cur[k] = e;
      rec(k + 1);
    }
  };
  rec(0);
  std::stable_sort(out.begin(), out.end(), [](const CurveClass& a, const CurveClass& b) {
    int sa = std::accumulate(a.begin(), a.end(), 0), sb = std::accumulate(b.begin(), b.end(), 0);
    if (sa != sb) return sa < sb;
    return a < b;
  });
  return out;
}

std::string WdvvInstance::str() const {
  return "WDVV(" + std::to_string(a) + "," + std::to_string(b) + "|" + std::to_string(c) + "," + std::to_string(d) +
         "; extra=" + join_ints(extra) + "; beta=" + join_ints(beta) + ")";
}

namespace {

// Affine form sum coeffs[j] * unknown_j + constant.
struct LinExpr {
  Rational constant = 0;
  std::map<int, Rational> coeffs;
  void add(const LinExpr& o, const Rational& w) {
    if (w == 0) return;
    constant += w * o.constant;
    for (const auto& [j, c] : o.coeffs) {
      auto& slot = coeffs[j];
      slot += w * c;
      if (slot == 0) coeffs.erase(j);
    }
  }
  bool trivial() const { return coeffs.empty() && constant == 0; }
};

using Lookup = std::function<LinExpr(const CurveClass&, const std::vector<int>&)>;

LinExpr wdvv_expression(const TargetGeometry& geom, const std::vector<int>& core, const WdvvInstance& inst,
                        const Lookup& lookup) {
  const int n = geom.rank();
  std::vector<CurveClass> firsts;
  {
    CurveClass cur(inst.beta.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == inst.beta.size()) {
        firsts.push_back(cur);
        return;
      }
      for (int e = 0; e <= inst.beta[k]; ++e) {
        cur[k] = e;
        rec(k + 1);
      }
    };
    rec(0);
  }
  std::vector<MultiIndex> splits;
  {
    MultiIndex cur(inst.extra.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == inst.extra.size()) {
        splits.push_back(cur);
        return;
      }
      for (int e = 0; e <= inst.extra[k]; ++e) {
        cur[k] = e;
        rec(k + 1);
      }
    };
    rec(0);
  }
  auto expand = [&](const MultiIndex& counts) {
    std::vector<int> v;
    for (std::size_t k = 0; k < counts.size(); ++k)
      for (int t = 0; t < counts[k]; ++t) v.push_back(core[k]);
    return v;
  };
  // invariant (beta1; x, y, e, S1) as an affine form; classical when beta1 = 0
  auto term = [&](const CurveClass& b1, int x, int y, int e, const MultiIndex& s1) -> LinExpr {
    LinExpr r;
    if (is_zero_class(b1)) {
      bool empty = std::all_of(s1.begin(), s1.end(), [](int t) { return t == 0; });
      if (empty) r.constant = geom.triple(x, y, e);
      return r;
    }
    std::vector<int> ins = expand(s1);
    ins.push_back(x);
    ins.push_back(y);
    ins.push_back(e);
    return lookup(b1, ins);
  };
  LinExpr total;
  for (const auto& b1 : firsts) {
    CurveClass b2(b1.size());
    for (std::size_t i = 0; i < b1.size(); ++i) b2[i] = inst.beta[i] - b1[i];
    if (is_zero_class(b1) && is_zero_class(b2)) continue;
    for (const auto& s1 : splits) {
      MultiIndex s2(s1.size());
      for (std::size_t i = 0; i < s1.size(); ++i) s2[i] = inst.extra[i] - s1[i];
      Rational mult(multi_binomial(inst.extra, s1));
      for (int side = 0; side < 2; ++side) {
        int p = inst.a, q = side == 0 ? inst.b : inst.c;
        int r = side == 0 ? inst.c : inst.b, s = inst.d;
        Rational sign = side == 0 ? 1 : -1;
        for (int e = 0; e < n; ++e)
          for (int f = 0; f < n; ++f) {
            const Rational& g = geom.inverse_pairing[e][f];
            if (g == 0) continue;
            LinExpr left = term(b1, p, q, e, s1);
            if (left.trivial()) continue;
            LinExpr right = term(b2, f, r, s, s2);
            if (right.trivial()) continue;
            // at most one side can involve unknowns (the other has a smaller or zero class)
            if (!left.coeffs.empty() && !right.coeffs.empty())
              throw WdvvError("internal: quadratic unknown term in " + inst.str());
            LinExpr prod;
            if (left.coeffs.empty()) {
              prod.add(right, left.constant);
            } else {
              prod.add(left, right.constant);
            }
            total.add(prod, sign * mult * g);
          }
      }
    }
  }
  return total;
}

}  // namespace

std::vector<WdvvInstance> wdvv_instances(const TargetGeometry& geom, const CurveClass& beta) {
  std::vector<int> core, w;
  for (int k = 1; k < geom.rank(); ++k)
    if (geom.codim[k] >= 2) {
      core.push_back(k);
      w.push_back(geom.codim[k] - 1);
    }
  std::vector<WdvvInstance> out;
  const int r = geom.rank();
  for (int a = 1; a < r; ++a)
    for (int b = 1; b < r; ++b)
      for (int c = 1; c < r; ++c)
        for (int d = 1; d < r; ++d) {
          int target = geom.dim + geom.c1_degree(beta) - geom.codim[a] - geom.codim[b] - geom.codim[c] - geom.codim[d];
          std::vector<MultiIndex> extras;
          weighted_multisets(w, target, extras);
          for (auto& e : extras) out.push_back({a, b, c, d, e, beta});
        }
  return out;
}

Rational wdvv_residual(const GWTable& table, const WdvvInstance& inst) {
  Lookup lookup = [&](const CurveClass& b, const std::vector<int>& ins) {
    LinExpr r;
    r.constant = table.value(b, ins);
    return r;
  };
  LinExpr e = wdvv_expression(table.geometry(), table.core_classes(), inst, lookup);
  return e.constant;
}

GWTable wdvv_solve(const TargetGeometry& geom, const SeedTable& seeds, const CurveClass& bound,
                   WdvvSolveStats* stats) {
  GWTable table(geom, bound);
  if (!(seeds.vars() == GWTable::variables(geom))) throw WdvvError("seed table variables do not match the target");
  for (const auto& [k, v] : seeds.values()) {
    if (!table.table().within_bound(k.first)) continue;
    auto monos = table.core_monomials(k.first);
    if (std::find(monos.begin(), monos.end(), k.second) == monos.end())
      throw WdvvError("seed at class " + join_ints(k.first) + " index " + join_ints(k.second) + " violates the dimension constraint");
  }
  for (const auto& beta : positive_classes(bound)) {
    auto unknowns = table.core_monomials(beta);
    if (unknowns.empty()) continue;
    std::map<MultiIndex, int> slot;
    for (std::size_t j = 0; j < unknowns.size(); ++j) slot[unknowns[j]] = static_cast<int>(j);
    const int n = static_cast<int>(unknowns.size());

    // reduced row echelon rows: pivot -> (coeffs, constant), pivot coefficient 1
    std::map<int, LinExpr> rows;
    std::map<int, std::string> row_origin;
    auto insert = [&](LinExpr e, const std::string& origin) -> bool {
      for (const auto& [p, row] : rows) {
        auto it = e.coeffs.find(p);
        if (it != e.coeffs.end()) {
          Rational c = it->second;
          e.add(row, -c);
        }
      }
      if (e.coeffs.empty()) {
        if (e.constant != 0) {
          std::string used;
          for (const auto& [p, o] : row_origin) used += " " + o;
          throw WdvvError("inconsistent data at class " + join_ints(beta) + ": " + origin +
                          " contradicts" + used + " (residual " + to_string(e.constant) + ")");
        }
        return false;
      }
      int p = e.coeffs.begin()->first;
      Rational lead = e.coeffs.begin()->second;
      LinExpr norm;
      norm.add(e, 1 / lead);
      for (auto& [q, row] : rows) {
        auto it = row.coeffs.find(p);
        if (it != row.coeffs.end()) {
          Rational c = it->second;
          row.add(norm, -c);
        }
      }
      rows[p] = norm;
      row_origin[p] = origin;
      return true;
    };
    bool seeded_class = false;
    for (const auto& m : unknowns) {
      auto seeded = seeds.find(beta, m);
      if (!seeded) continue;
      seeded_class = true;
      const Rational& v = *seeded;
      LinExpr e;
      e.coeffs[slot[m]] = 1;
      e.constant = -v;
      insert(e, "seed[" + join_ints(beta) + ";" + join_ints(m) + "]");
    }

    Lookup lookup = [&](const CurveClass& b, const std::vector<int>& ins) {
      LinExpr r;
      if (b != beta) {
        r.constant = table.value(b, ins);
        return r;
      }
      Rational factor = 1;
      std::vector<int> core;
      for (int i : ins) {
        if (i == 0) return r;
        if (geom.codim[i] == 1) {
          factor *= geom.divisor_degree(i, b);
        } else {
          core.push_back(i);
        }
      }
      if (factor == 0) return r;
      int codims = 0;
      for (int i : core) codims += geom.codim[i];
      if (codims != vdim(geom, 0, b, static_cast<int>(core.size()))) return r;
      r.coeffs[slot.at(table.core_counts(core))] = factor;
      return r;
    };
    // orbit relations of the target's automorphisms
    for (const auto& perm : geom.symmetries) {
      for (const auto& m : unknowns) {
        std::vector<int> moved;
        for (std::size_t k = 0; k < m.size(); ++k)
          for (int t = 0; t < m[k]; ++t) moved.push_back(perm[table.core_classes()[k]]);
        MultiIndex image = table.core_counts(moved);
        if (image == m) continue;
        LinExpr e;
        e.coeffs[slot[m]] = 1;
        e.coeffs[slot.at(image)] = -1;
        insert(e, "symmetry[" + join_ints(m) + "~" + join_ints(image) + "]");
      }
    }
    // a seeded class runs through every instance so a wrong seed is caught
    if (static_cast<int>(rows.size()) < n || seeded_class) {
      for (const auto& inst : wdvv_instances(geom, beta)) {
        LinExpr e = wdvv_expression(geom, table.core_classes(), inst, lookup);
        if (e.trivial()) continue;
        if (insert(e, inst.str()) && stats) stats->used.push_back(inst);
        if (static_cast<int>(rows.size()) == n && !seeded_class) break;
      }
    }
    if (static_cast<int>(rows.size()) < n) {
      std::string missing;
      for (const auto& m : unknowns)
        if (!rows.count(slot[m])) missing += " [" + join_ints(m) + "]";
      throw WdvvError("insufficient seeds: no equation determines class " + join_ints(beta) + " invariants" + missing);
    }
    for (const auto& m : unknowns) table.set_core(beta, m, -rows[slot[m]].constant);
  }
  return table;
}

SeriesTable gw_potential(const GWTable& table) { return table.table(); }

SeedTable default_gw_seeds(const TargetGeometry& geom, const CurveClass& bound) {
  SeedTable seeds(GWTable::variables(geom), bound);
  GWTable shape(geom, bound);
  auto within = [&](const CurveClass& c) { return shape.table().within_bound(c); };
  if (geom.name == "gr24") {
    SeedTable file = read_seed_file(shipped_seed_path("gr24_genus0.txt"));
    if (!(file.vars() == seeds.vars())) throw WdvvError("gr24 seed file variables do not match the target");
    for (const auto& [k, v] : file.values())
      if (within(k.first)) seeds.set(k.first, k.second, v);
    return seeds;
  }
  const auto& core = shape.core_classes();
  if (geom.name == "p1xp1") {
    MultiIndex one_point = shape.core_counts({3});
    if (within({1, 0})) seeds.set({1, 0}, one_point, 1);
    if (within({0, 1})) seeds.set({0, 1}, one_point, 1);
    return seeds;
  }
  if (geom.divisors.size() == 1 && !core.empty() && geom.labels.size() == static_cast<std::size_t>(geom.dim + 1)) {
    // projective space: one line through two points
    if (within({1})) seeds.set({1}, shape.core_counts({geom.dim, geom.dim}), 1);
    return seeds;
  }
  throw WdvvError("no default seeds for target " + geom.name);
}

}  // namespace charnum
