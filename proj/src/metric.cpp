#include "charnum/metric.hpp"

#include <functional>
#include <stdexcept>

namespace charnum {

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  if (size() != o.size()) return false;
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (!(rows[i][j] == o.rows[i][j])) return false;
  return true;
}

std::string PolyMatrix::str() const {
  std::string s = "[";
  for (int i = 0; i < size(); ++i) {
    if (i) s += ",\n ";
    s += "[";
    for (int j = 0; j < size(); ++j) {
      if (j) s += ", ";
      s += rows[i][j].str();
    }
    s += "]";
  }
  return s + "]";
}

std::vector<std::string> metric_vars(const TargetGeometry& geom) {
  std::vector<std::string> v;
  for (int i = 0; i < geom.rank(); ++i) v.push_back("y" + std::to_string(i));
  return v;
}

namespace {

// sum over s (with s_0 = 0) of (scale*y)^s / s! * T^s as a vector of polynomial coefficients
std::vector<Poly> cup_exponential(const TargetGeometry& geom, const std::vector<std::string>& vars, int scale) {
  const int n = geom.rank();
  std::vector<Poly> out(n, Poly(vars));
  Poly::Monomial mono(n, 0);
  std::function<void(int, const Vec&, Rational)> rec = [&](int k, const Vec& power, Rational coef) {
    if (k == n) {
      for (int i = 0; i < n; ++i)
        if (power[i] != 0) out[i].add_term(mono, coef * power[i]);
      return;
    }
    Vec p = power;
    Rational c = coef;
    for (int e = 0;; ++e) {
      bool zero = true;
      for (const auto& x : p) zero = zero && x == 0;
      if (zero) break;
      mono[k] = e;
      rec(k + 1, p, c);
      p = geom.cup_vec(p, basis_vector(n, k));
      c *= frac(scale, e + 1);
    }
    mono[k] = 0;
  };
  rec(1, basis_vector(n, 0), Rational(1));
  return out;
}

Poly exp_y0(const std::vector<std::string>& vars, int scale, int order) {
  Poly p(vars);
  Poly::Monomial m(vars.size(), 0);
  Rational c = 1;
  for (int e = 0; e <= order; ++e) {
    m[0] = e;
    p.add_term(m, c);
    c *= frac(scale, e + 1);
  }
  return p;
}

Poly truncate_y0(const Poly& p, int order) {
  Poly r(p.vars());
  for (const auto& [m, c] : p.terms())
    if (m[0] <= order) r.add_term(m, c);
  return r;
}

}  // namespace

DeformedMetric deformed_metric(const TargetGeometry& geom, int y0_order) {
  if (y0_order < 0) throw std::invalid_argument("negative y0 order");
  const int n = geom.rank();
  auto vars = metric_vars(geom);
  auto lower_exp = cup_exponential(geom, vars, -2);
  auto upper_exp = cup_exponential(geom, vars, 2);
  Poly lower_factor = exp_y0(vars, -2, y0_order), upper_factor = exp_y0(vars, 2, y0_order);
  std::vector<Vec> dual(n);  // dual basis vectors sum_m g^{km} T_m
  for (int k = 0; k < n; ++k) dual[k] = geom.inverse_pairing[k];
  DeformedMetric out;
  out.y0_order = y0_order;
  out.lower.vars = out.upper.vars = vars;
  out.lower.rows.assign(n, std::vector<Poly>(n, Poly(vars)));
  out.upper.rows.assign(n, std::vector<Poly>(n, Poly(vars)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec lower_pair = geom.cup_vec(basis_vector(n, i), basis_vector(n, j));
      Vec upper_pair = geom.cup_vec(dual[i], dual[j]);
      Poly lo(vars), up(vars);
      for (int k = 0; k < n; ++k) {
        Rational li = geom.integral(geom.cup_vec(basis_vector(n, k), lower_pair));
        Rational ui = geom.integral(geom.cup_vec(basis_vector(n, k), upper_pair));
        if (li != 0) lo += lower_exp[k] * li;
        if (ui != 0) up += upper_exp[k] * ui;
      }
      out.lower.rows[i][j] = truncate_y0(lo * lower_factor, y0_order);
      out.upper.rows[i][j] = truncate_y0(up * upper_factor, y0_order);
    }
  return out;
}

PolyMatrix matrix_product(const PolyMatrix& a, const PolyMatrix& b, int y0_order) {
  PolyMatrix r;
  r.vars = a.vars;
  const int n = a.size();
  r.rows.assign(n, std::vector<Poly>(n, Poly(a.vars)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Poly s(a.vars);
      for (int k = 0; k < n; ++k) s += a.rows[i][k] * b.rows[k][j];
      r.rows[i][j] = a.vars.empty() || a.vars[0] != "y0" ? s : truncate_y0(s, y0_order);
    }
  return r;
}

bool is_identity(const PolyMatrix& m) {
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j)
      if (!(m.rows[i][j] == Poly::constant(m.vars, i == j ? 1 : 0))) return false;
  return true;
}

PolyMatrix numeric_matrix(const Mat& m, const std::vector<std::string>& vars) {
  PolyMatrix r;
  r.vars = vars;
  for (const auto& row : m) {
    std::vector<Poly> pr;
    for (const auto& x : row) pr.push_back(Poly::constant(vars, x));
    r.rows.push_back(pr);
  }
  return r;
}

PolyMatrix substitute_metric(const PolyMatrix& m, const std::map<std::string, Poly>& assignment,
                             const std::vector<std::string>& target_vars) {
  for (const auto& v : m.vars)
    if (!assignment.count(v)) throw std::invalid_argument("assignment does not cover " + v);
  PolyMatrix r;
  r.vars = target_vars;
  for (const auto& row : m.rows) {
    std::vector<Poly> pr;
    for (const auto& p : row) pr.push_back(p.substitute(assignment, target_vars));
    r.rows.push_back(pr);
  }
  return r;
}

DiffOperator row_operator(const PolyMatrix& m, int row, const std::vector<std::string>& column_vars) {
  DiffOperator op;
  for (int f = 0; f < m.size(); ++f) {
    if (column_vars[f].empty() || m.rows[row][f].is_zero()) continue;
    op.terms.emplace_back(m.rows[row][f], column_vars[f]);
  }
  return op;
}

}  // namespace charnum
