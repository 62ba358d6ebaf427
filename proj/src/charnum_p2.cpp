#include "charnum/charnum_p2.hpp"

#include <algorithm>

namespace charnum {

namespace {

const std::vector<std::string> kUVW = {"u", "v", "w"};

Poly var(const std::string& name) { return Poly::variable(kUVW, name); }
Poly num(const Rational& c) { return Poly::constant(kUVW, c); }

void require_p2(const TargetGeometry& g) {
  if (g.rank() != 3 || g.dim != 2 || g.divisors.size() != 1)
    throw std::invalid_argument("plane-curve numbers need the target p2");
}

SeriesTable d(const SeriesTable& f, const std::string& v) { return partial_derivative(f, v); }
SeriesTable d(const SeriesTable& f, const std::string& v1, const std::string& v2) {
  return partial_derivative(partial_derivative(f, v1), v2);
}

int bound_of(const SeriesTable& f) { return f.bound().at(0); }

Rational C2(int n) { return n < 2 ? Rational(0) : frac(n * (n - 1), 2); }

// Zero outside the table instead of a key error for negative entries.
Rational N(const SeriesTable& f, int deg, int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0 || deg < 1 || deg > bound_of(f)) return 0;
  return f.at({deg}, {a, b, c});
}

// (1/24) R, the linear part of the genus-1 equations for removing a tangency (removed = "s") or a
// flag (removed = "u").
SeriesTable genus1_linear_part(const SeriesTable& g0, const std::string& removed) {
  const DiffOperator L = line_operator(), P = point_operator();
  SeriesTable g = d(g0, removed);
  SeriesTable r = apply_operator(d(g, "s"), L);
  r += apply_operator(d(g, "u"), P);
  r -= apply_operator(g, L) * Rational(2);
  r += g * Rational(2);
  r -= d(g, "s");
  r -= multiply(d(g, "v"), var("v") * num(2));
  r -= multiply(d(g, "w"), var("v") * var("v") * num(2) + var("w") * num(2));
  return r * frac(1, 24);
}

}  // namespace

VarSet p2_char_variables() { return VarSet{{"s"}, kUVW, {}}; }

std::map<std::string, Poly> p2_condition_images() {
  return {{"x2", var("u") + var("v")}, {"y1", var("v")}, {"y2", var("w")}};
}

SeriesTable p2_from_gamma(const SeriesTable& gamma) {
  // The degree-0 shift of the genus-1 and genus-2 potentials never reaches these strata.
  SeriesTable positive(gamma.vars(), gamma.bound());
  for (const auto& [k, v] : gamma.entries())
    if (k.first.at(0) > 0) positive.set(k.first, k.second, v);
  return to_condition_variables(positive, p2_char_variables(), p2_condition_images());
}

std::vector<MultiIndex> p2_indices(int deg, int genus) {
  std::vector<MultiIndex> out;
  const int total = 3 * deg + genus - 1;
  for (int c = 0; 2 * c <= total; ++c)
    for (int b = 0; b + 2 * c <= total; ++b) out.push_back({total - b - 2 * c, b, c});
  return out;  // c ascending, then b ascending
}

DiffOperator line_operator() { return DiffOperator{{{num(1), "s"}, {var("v") * num(2), "u"}}}; }

DiffOperator point_operator() {
  return DiffOperator{{{var("v") * num(2), "s"}, {var("v") * var("v") * num(2) + var("w") * num(2), "u"}}};
}

CoverPolynomials cover_polynomials(int bound) {
  if (bound < 2) throw std::invalid_argument("cover polynomials live in degree 2");
  struct Term {
    Rational monomial_coef;  // coefficient of u^a v^b w^c inside the bracket
    int a, b, c;
  };
  // Bracket terms: products of (2u)^a/a!, v^b/(...), w^c/c!. The last one of each list is the cover
  // of the flag line itself, branched over its meets with the tangent lines, with the flag mark on
  // either sheet over the flag point. Without it N1_2(0,4,1) would come out as 1.
  const std::vector<Term> e_terms = {
      {frac(1, 2) / (2 * 2 * 2), 0, 6, 0}, {frac(2, 2 * 6), 1, 5, 0}, {frac(4, 2 * 24), 2, 4, 0},
      {frac(1, 2 * 2), 0, 4, 1},           {frac(2, 6), 1, 3, 1},     {frac(1, 2 * 2), 0, 2, 2},
      {frac(2, 24), 0, 4, 1}};
  const std::vector<Term> h_terms = {
      {frac(1, 2) / (2 * 2 * 24), 0, 8, 0}, {frac(2, 2 * 120), 1, 7, 0}, {frac(4, 2 * 720), 2, 6, 0},
      {frac(1, 2 * 24), 0, 6, 1},           {frac(2, 120), 1, 5, 1},     {frac(1, 24 * 2), 0, 4, 2},
      {frac(2, 720), 0, 6, 1}};
  auto build = [&](const std::vector<Term>& terms) {
    SeriesTable t(p2_char_variables(), {bound});
    for (const auto& term : terms) {
      Rational idx_fact(factorial(term.a) * factorial(term.b) * factorial(term.c));
      t.add({2}, {term.a, term.b, term.c}, frac(1, 2) * term.monomial_coef * idx_fact);
    }
    return t;
  };
  return {build(e_terms), build(h_terms)};
}

SeriesTable charnum_genus0(const GWTable& gw, int dmax) {
  require_p2(gw.geometry());
  if (dmax < 1 || gw.bound().at(0) < dmax) throw std::invalid_argument("primary invariants do not reach dmax");
  const DiffOperator L = line_operator(), P = point_operator();
  SeriesTable G(p2_char_variables(), {dmax});
  for (int deg = 1; deg <= dmax; ++deg) {
    const CurveClass beta{deg};
    // products only involve lower degrees
    SeriesTable Gs = d(G, "s"), Gss = d(G, "s", "s"), Gus = d(G, "u", "s"), Guu = d(G, "u", "u");
    SeriesTable QV = series_product_at(Gss, apply_operator(Gs, L), beta);
    QV += series_product_at(Gus, apply_operator(Gs, P), beta);
    SeriesTable QW = series_product_at(Gus, apply_operator(Gss, L), beta);
    QW += series_product_at(Guu, apply_operator(Gss, P), beta);
    for (const auto& idx : p2_indices(deg, 0)) {
      const int a = idx[0], b = idx[1], c = idx[2];
      Rational value;
      if (b == 0 && c == 0) {
        value = gw.value(beta, std::vector<int>(a, 2));
      } else if (c == 0) {
        value = (Rational(deg - 1) * N(G, deg, a + 1, b - 1, 0) + frac(1, 2) * QV.at(beta, {a, b - 1, 0})) / deg;
      } else {
        value = (N(G, deg, a + 2, b, c - 1) + QW.at(beta, {a, b, c - 1})) / (deg * deg);
      }
      G.set(beta, idx, value);
    }
  }
  return G;
}

std::vector<std::pair<DescendantSpec, Integer>> tangency_expand(int a, int b, int c, int deg) {
  if (a < 0 || b < 0 || c < 0 || deg < 1) throw std::invalid_argument("negative condition count");
  std::vector<std::pair<DescendantSpec, Integer>> out;
  for (int k = 0; k <= b; ++k) {
    DescendantSpec spec;
    spec.genus = 0;
    spec.beta = {deg};
    for (int i = 0; i < a + b - k; ++i) spec.insertions.push_back({0, 2});
    for (int i = 0; i < k; ++i) spec.insertions.push_back({1, 1});
    for (int i = 0; i < c; ++i) spec.insertions.push_back({1, 2});
    out.emplace_back(spec.canonical(), binomial(b, k));
  }
  return out;
}

Rational charnum_via_descendants(DescendantEngine& engine, int a, int b, int c, int deg) {
  Rational total = 0;
  for (const auto& [spec, mult] : tangency_expand(a, b, c, deg)) total += Rational(mult) * engine.genus0(spec);
  return total;
}

Genus1Result charnum_genus1(const SeriesTable& g0, const SeedTable& seeds, int dmax) {
  if (dmax < 1 || bound_of(g0) < dmax) throw std::invalid_argument("genus-0 numbers do not reach dmax");
  VarSet seed_vars{{"x1"}, {"x2"}, {}};
  if (!(seeds.vars() == seed_vars)) throw std::invalid_argument("genus-1 seeds for p2 must use degree=x1 vars=x2");
  const DiffOperator L = line_operator(), P = point_operator();
  const SeriesTable RV = genus1_linear_part(g0, "s"), RW = genus1_linear_part(g0, "u");
  const SeriesTable LG0s = apply_operator(d(g0, "s"), L), PG0s = apply_operator(d(g0, "s"), P);
  const SeriesTable LG0u = apply_operator(d(g0, "u"), L), PG0u = apply_operator(d(g0, "u"), P);
  Genus1Result res;
  SeriesTable& G = res.with_covers;
  G = SeriesTable(p2_char_variables(), {dmax});
  for (int deg = 1; deg <= dmax; ++deg) {
    const CurveClass beta{deg};
    SeriesTable G1s = d(G, "s"), G1u = d(G, "u");
    SeriesTable V = series_product_at(LG0s, G1s, beta) + series_product_at(PG0s, G1u, beta) + RV.stratum(beta);
    SeriesTable W = series_product_at(LG0u, G1s, beta) + series_product_at(PG0u, G1u, beta) + RW.stratum(beta);
    for (const auto& idx : p2_indices(deg, 1)) {
      const int a = idx[0], b = idx[1], c = idx[2];
      Rational value;
      if (c == 0 && b == 0) {
        value = seeds.require(beta, {a});
      } else if (c == 0) {
        value = N(G, deg, a + 1, b - 1, 0) + V.at(beta, {a, b - 1, 0});
      } else {
        value = W.at(beta, {a, b, c - 1});
        if (b > 0) {
          Rational alt = N(G, deg, a + 1, b - 1, c) + V.at(beta, {a, b - 1, c});
          ++res.consistency.compared;
          if (alt != value)
            res.consistency.mismatches.push_back("genus 1 d=" + std::to_string(deg) + " (" + join_ints(idx) +
                                                 "): flag equation gives " + to_string(value) +
                                                 ", tangency equation gives " + to_string(alt));
        }
      }
      G.set(beta, idx, value);
    }
  }
  res.enumerative = G - cover_polynomials(std::max(2, dmax)).elliptic.truncated({dmax});
  return res;
}

SeriesTable genus1_virtual_prediction(const SeriesTable& g0, const SeriesTable& g1) {
  const int bound = std::min(bound_of(g0), bound_of(g1));
  SeriesTable out = g1.truncated({bound});
  out -= apply_operator(g0.truncated({bound}), point_operator()) * frac(1, 24);
  out += cover_polynomials(std::max(2, bound)).elliptic.truncated({bound});
  return out;
}

SeriesTable genus1_virtual_from_gamma(const SeriesTable& gamma1) { return p2_from_gamma(gamma1); }

SeriesTable one_tail_term(const SeriesTable& g1) {
  return apply_operator(g1, point_operator()) * frac(-1, 24);
}

SeriesTable one_tail_explicit(const SeriesTable& g1, int dmax) {
  SeriesTable out(p2_char_variables(), {dmax});
  for (int deg = 1; deg <= dmax; ++deg)
    for (const auto& idx : p2_indices(deg, 2)) {
      const int a = idx[0], b = idx[1], c = idx[2];
      Rational t = Rational(2 * b * deg) * N(g1, deg, a, b - 1, c) + 4 * C2(b) * N(g1, deg, a + 1, b - 2, c) +
                   Rational(2 * c) * N(g1, deg, a + 1, b, c - 1);
      out.set({deg}, idx, -t / 24);
    }
  return out;
}

SeriesTable two_tail_term(const SeriesTable& g0) {
  const DiffOperator P = point_operator();
  return apply_operator(apply_operator(g0, P), P) * frac(1, 2 * 24 * 24);
}

SeriesTable two_tail_explicit(const SeriesTable& g0, int dmax) {
  SeriesTable out(p2_char_variables(), {dmax});
  for (int deg = 1; deg <= dmax; ++deg)
    for (const auto& idx : p2_indices(deg, 2)) {
      const int a = idx[0], b = idx[1], c = idx[2];
      const Rational dd = deg;
      // C(b;2,1) = b!/(2!1!(b-3)!) and C(b;2,2) = b!/(2!2!(b-4)!)
      const Rational b21 = b >= 3 ? frac(b * (b - 1) * (b - 2), 2) : Rational(0);
      const Rational b22 = b >= 4 ? frac(b * (b - 1) * (b - 2) * (b - 3), 4) : Rational(0);
      Rational t = 4 * dd * dd * C2(b) * N(g0, deg, a, b - 2, c);
      t += 8 * dd * b21 * N(g0, deg, a + 1, b - 3, c);
      t += 8 * b22 * N(g0, deg, a + 2, b - 4, c);
      t += Rational(4 * b * c) * dd * N(g0, deg, a + 1, b - 1, c - 1);
      t += Rational(8 * c) * C2(b) * N(g0, deg, a + 2, b - 2, c - 1);
      t += 4 * C2(c) * N(g0, deg, a + 2, b, c - 2);
      out.set({deg}, idx, t / (24 * 24));
    }
  return out;
}

SeriesTable double_cover_term(const SeriesTable& g0) {
  const SeriesTable H = cover_polynomials(std::max(2, bound_of(g0))).genus2.truncated(g0.bound());
  return series_product(d(H, "s"), apply_operator(g0, line_operator())) +
         series_product(d(H, "u"), apply_operator(g0, point_operator()));
}

SeriesTable double_cover_expanded(const SeriesTable& g0) {
  const SeriesTable H = cover_polynomials(std::max(2, bound_of(g0))).genus2.truncated(g0.bound());
  const SeriesTable Hs = d(H, "s"), Hu = d(H, "u"), Gs = d(g0, "s"), Gu = d(g0, "u");
  const Poly v = var("v"), w = var("w");
  // glued on the honest genus-2 side, then on a point of the rational side, then the three node
  // positions: on a line, at a crossing of two lines, at a flag point
  SeriesTable out = series_product(Hs, Gs + multiply(Gu, v * num(2)));
  out += series_product(multiply(Hu, v * num(2)), Gs);
  out += series_product(multiply(Hu, v * v * num(2)), Gu);
  out += series_product(multiply(Hu, w * num(2)), Gu);
  return out;
}

SeriesTable charnum_genus2(const SeriesTable& g0, const SeriesTable& g1, const SeedTable& virtual2, int dmax) {
  if (dmax <= 3)
    throw ScopeError("genus-2 numbers are only available for d >= 4: in degrees 2 and 3 the degenerate covers "
                     "of a line contribute the correction terms Q2 and Q3, which are not computed");
  if (bound_of(g0) < dmax || bound_of(g1) < dmax) throw std::invalid_argument("lower-genus numbers do not reach dmax");
  if (!(virtual2.vars().degree == std::vector<std::string>{"s"} && virtual2.vars().vars == kUVW))
    throw std::invalid_argument("virtual genus-2 numbers must use degree=s vars=u,v,w");
  const SeriesTable G0 = g0.truncated({dmax}), G1 = g1.truncated({dmax});
  const SeriesTable corrections = one_tail_term(G1) + two_tail_term(G0) + double_cover_term(G0);
  SeriesTable out(p2_char_variables(), {dmax});
  for (int deg = 4; deg <= dmax; ++deg)
    for (const auto& idx : p2_indices(deg, 2))
      out.set({deg}, idx, virtual2.require({deg}, idx) - corrections.at({deg}, idx));
  return out;
}

SeriesTable p2_tangency_residual(const SeriesTable& g0) {
  SeriesTable Gs = d(g0, "s"), Gss = d(g0, "s", "s"), Gus = d(g0, "u", "s");
  SeriesTable rhs = Gus - d(g0, "u");
  rhs += (series_product(Gss, apply_operator(Gs, line_operator())) +
          series_product(Gus, apply_operator(Gs, point_operator()))) *
         frac(1, 2);
  return d(g0, "v", "s") - rhs;
}

SeriesTable p2_expanded_residual(const SeriesTable& g0) {
  SeriesTable Gss = d(g0, "s", "s"), Gus = d(g0, "u", "s");
  SeriesTable rhs = Gus - d(g0, "u");
  rhs += series_product(Gss, Gss) * frac(1, 2);
  rhs += multiply(series_product(Gss, Gus), var("v") * num(2));
  rhs += multiply(series_product(Gus, Gus), var("v") * var("v") + var("w"));
  return d(g0, "v", "s") - rhs;
}

SeriesTable p2_flag_residual(const SeriesTable& g0) {
  SeriesTable Gss = d(g0, "s", "s"), Gus = d(g0, "u", "s"), Guu = d(g0, "u", "u");
  SeriesTable rhs = Guu + series_product(Gus, apply_operator(Gss, line_operator())) +
                    series_product(Guu, apply_operator(Gss, point_operator()));
  return d(d(g0, "w"), "s", "s") - rhs;
}

}  // namespace charnum
