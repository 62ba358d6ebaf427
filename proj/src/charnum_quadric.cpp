#include "charnum/charnum_quadric.hpp"

#include <algorithm>

namespace charnum {

namespace {

const std::vector<std::string> kUVW = {"u", "v", "w"};

Poly var(const std::string& name) { return Poly::variable(kUVW, name); }
Poly num(const Rational& c) { return Poly::constant(kUVW, c); }

SeriesTable d(const SeriesTable& f, const std::string& a) { return partial_derivative(f, a); }
SeriesTable d(const SeriesTable& f, const std::string& a, const std::string& b) {
  return partial_derivative(partial_derivative(f, a), b);
}

SeriesTable keep(const SeriesTable& f, const QuadricBound& bound) {
  SeriesTable out(f.vars(), bound.box);
  for (const auto& [k, v] : f.entries())
    if (bound.contains(k.first)) out.set(k.first, k.second, v);
  return out;
}

void require_quadric(const TargetGeometry& g) {
  if (g.rank() != 4 || g.dim != 2 || g.divisors.size() != 2)
    throw std::invalid_argument("quadric numbers need the target p1xp1");
}

}  // namespace

VarSet quadric_char_variables() { return VarSet{{"u1", "u2"}, kUVW, {DegreeForm{"s", {1, 1}}}}; }

std::map<std::string, Poly> quadric_condition_images() {
  return {{"x3", var("u") + var("v") * num(2)}, {"y1", var("v")}, {"y2", var("v")}, {"y3", var("w")}};
}

SeriesTable quadric_from_gamma(const SeriesTable& gamma) {
  SeriesTable positive(gamma.vars(), gamma.bound());
  for (const auto& [k, v] : gamma.entries())
    if (std::any_of(k.first.begin(), k.first.end(), [](int x) { return x > 0; })) positive.set(k.first, k.second, v);
  return to_condition_variables(positive, quadric_char_variables(), quadric_condition_images());
}

std::vector<MultiIndex> quadric_indices(const CurveClass& beta, int genus) {
  std::vector<MultiIndex> out;
  const int total = 2 * (beta.at(0) + beta.at(1)) - 1 + genus;
  for (int c = 0; 2 * c <= total; ++c)
    for (int b = 0; b + 2 * c <= total; ++b) out.push_back({total - b - 2 * c, b, c});
  return out;
}

DiffOperator quadric_line_operator(int ruling) {
  if (ruling != 1 && ruling != 2) throw std::invalid_argument("ruling is 1 or 2");
  return DiffOperator{{{num(1), ruling == 1 ? "u2" : "u1"}, {var("v") * num(2), "u"}}};
}

DiffOperator quadric_point_operator() {
  return DiffOperator{
      {{var("v") * num(2), "u1"}, {var("v") * num(2), "u2"}, {var("v") * var("v") * num(4) + var("w") * num(2), "u"}}};
}

bool QuadricBound::contains(const CurveClass& beta) const {
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (beta[i] > box.at(i)) return false;
  return total < 0 || beta.at(0) + beta.at(1) <= total;
}

QuadricBound quadric_total_bound(int total) { return QuadricBound{{total, total}, total}; }

SeriesTable quadric_genus0(const GWTable& gw, const QuadricBound& bound) {
  require_quadric(gw.geometry());
  for (std::size_t i = 0; i < 2; ++i)
    if (gw.bound().at(i) < bound.box.at(i)) throw std::invalid_argument("primary invariants do not reach the bound");
  const DiffOperator L1 = quadric_line_operator(1), L2 = quadric_line_operator(2), P = quadric_point_operator();
  SeriesTable G(quadric_char_variables(), bound.box);
  for (const auto& beta : positive_classes(bound.box)) {
    if (!bound.contains(beta)) continue;
    const int D = beta[0] + beta[1];
    SeriesTable Gs = d(G, "s"), Gss = d(G, "s", "s");
    SeriesTable QV = series_product_at(d(G, "s", "u1"), apply_operator(Gs, L1), beta);
    QV += series_product_at(d(G, "s", "u2"), apply_operator(Gs, L2), beta);
    QV += series_product_at(d(G, "u", "s"), apply_operator(Gs, P), beta);
    SeriesTable QW = series_product_at(d(G, "u", "u1"), apply_operator(Gss, L1), beta);
    QW += series_product_at(d(G, "u", "u2"), apply_operator(Gss, L2), beta);
    QW += series_product_at(d(G, "u", "u"), apply_operator(Gss, P), beta);
    for (const auto& idx : quadric_indices(beta, 0)) {
      const int a = idx[0], b = idx[1], c = idx[2];
      Rational value;
      if (b == 0 && c == 0)
        value = gw.value(beta, std::vector<int>(a, 3));
      else if (c == 0)
        value = (Rational(2 * D - 2) * G.at(beta, {a + 1, b - 1, 0}) + frac(1, 2) * QV.at(beta, {a, b - 1, 0})) / D;
      else
        value = (2 * G.at(beta, {a + 2, b, c - 1}) + QW.at(beta, {a, b, c - 1})) / (D * D);
      G.set(beta, idx, value);
    }
  }
  return G;
}

RuleCovers rule_cover_potentials(const SeriesTable& hurwitz1, const CurveClass& box) {
  RuleCovers out{SeriesTable(quadric_char_variables(), box), SeriesTable(quadric_char_variables(), box)};
  for (int ruling = 0; ruling < 2; ++ruling) {
    // H1(u_i, v) placed on the classes of one ruling
    SeriesTable H(quadric_char_variables(), box);
    for (const auto& [k, v] : hurwitz1.entries()) {
      CurveClass beta{0, 0};
      beta[ruling] = k.first.at(0);
      if (H.within_bound(beta)) H.set(beta, {0, k.second.at(0), 0}, v);
    }
    const std::string along = ruling == 0 ? "u1" : "u2";
    // fixed by a point (choice of mark among the sheets), by a crossing of two tangent curves,
    // or by a flag
    SeriesTable cover = multiply(d(H, along), var("u"));
    cover += multiply(d(H, "v"), var("v") * var("v") + var("w"));
    (ruling == 0 ? out.horizontal : out.vertical) = cover;
  }
  return out;
}

QuadricGenus1Result quadric_genus1(const GWTable& gw, const SeriesTable& g0, const SeedTable& seeds,
                                   const QuadricBound& bound) {
  require_quadric(gw.geometry());
  QuadricGenus1Result res;
  const ClassFilter inside = [&](const CurveClass& beta) { return bound.contains(beta); };
  SeriesTable gamma0 = gamma0_pde(gw, nullptr, inside).truncated(bound.box);
  SeriesTable gamma1 = trr_genus1_first(gamma0, seeds, gw.geometry(), &res.consistency, inside);
  res.virtual_numbers = keep(quadric_from_gamma(gamma1), bound);
  const int cover_max = std::max(bound.box[0], bound.box[1]);
  const RuleCovers rc = rule_cover_potentials(hurwitz(1, cover_max).genus1, bound.box);
  const SeriesTable G0 = keep(g0, bound);
  const DiffOperator L1 = quadric_line_operator(1), L2 = quadric_line_operator(2), P = quadric_point_operator();
  SeriesTable PG0 = apply_operator(G0, P);
  SeriesTable covers = series_product(d(rc.horizontal, "u1"), apply_operator(G0, L1));
  covers += series_product(d(rc.horizontal, "u"), PG0);
  covers += series_product(d(rc.vertical, "u2"), apply_operator(G0, L2));
  covers += series_product(d(rc.vertical, "u"), PG0);
  SeriesTable g1 = res.virtual_numbers + PG0 * frac(1, 24) - covers;
  res.enumerative = SeriesTable(quadric_char_variables(), bound.box);
  for (const auto& [k, v] : g1.entries())
    if (k.first[0] > 0 && k.first[1] > 0 && bound.contains(k.first)) res.enumerative.set(k.first, k.second, v);
  return res;
}

SeriesTable swap_rulings(const SeriesTable& f) {
  CurveClass box{f.bound().at(1), f.bound().at(0)};
  SeriesTable out(f.vars(), box);
  for (const auto& [k, v] : f.entries()) out.set({k.first.at(1), k.first.at(0)}, k.second, v);
  return out;
}

}  // namespace charnum
