#include "charnum/poly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace charnum {

Poly Poly::constant(std::vector<std::string> vars, const Rational& c) {
  Poly p(std::move(vars));
  p.add_term(Monomial(p.vars_.size(), 0), c);
  return p;
}

Poly Poly::variable(std::vector<std::string> vars, const std::string& name, const Rational& c) {
  Poly p(std::move(vars));
  int i = p.var_index(name);
  if (i < 0) throw std::invalid_argument("unknown polynomial variable: " + name);
  Monomial m(p.vars_.size(), 0);
  m[i] = 1;
  p.add_term(m, c);
  return p;
}

int Poly::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != vars_.size()) throw std::invalid_argument("monomial length mismatch");
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::total_degree() const {
  int best = -1;
  for (const auto& [m, c] : terms_) best = std::max(best, std::accumulate(m.begin(), m.end(), 0));
  return best;
}

Poly Poly::truncated(int max_degree) const {
  Poly r(vars_);
  for (const auto& [m, c] : terms_)
    if (std::accumulate(m.begin(), m.end(), 0) <= max_degree) r.terms_.emplace(m, c);
  return r;
}

Poly Poly::rebased(const std::vector<std::string>& vars) const {
  std::vector<int> slot(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    slot[i] = it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
  }
  Poly r(vars);
  for (const auto& [m, c] : terms_) {
    Monomial n(vars.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (slot[i] < 0) throw std::invalid_argument("variable not available after rebase: " + vars_[i]);
      n[slot[i]] = m[i];
    }
    r.add_term(n, c);
  }
  return r;
}

Poly Poly::aligned(const Poly& o) const {
  std::vector<std::string> all = vars_;
  for (const auto& v : o.vars_)
    if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
  return o.rebased(all);
}

Poly& Poly::operator+=(const Poly& o) {
  Poly rhs = aligned(o);
  if (rhs.vars_ != vars_) *this = rebased(rhs.vars_);
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  Poly rhs = aligned(o);
  if (rhs.vars_ != vars_) *this = rebased(rhs.vars_);
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly rb = a.aligned(b);
  Poly ra = a.rebased(rb.vars_);
  Poly r(rb.vars_);
  for (const auto& [ma, ca] : ra.terms_)
    for (const auto& [mb, cb] : rb.terms_) {
      Poly::Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

bool Poly::operator==(const Poly& o) const {
  Poly d = *this;
  d -= o;
  return d.is_zero();
}

Poly pow(const Poly& p, int e) {
  Poly r = Poly::constant(p.vars(), 1);
  for (int i = 0; i < e; ++i) r = r * p;
  return r;
}

Poly Poly::substitute(const std::map<std::string, Poly>& assignment,
                      const std::vector<std::string>& target_vars) const {
  std::vector<Poly> images;
  for (const auto& v : vars_) {
    auto it = assignment.find(v);
    if (it != assignment.end()) {
      images.push_back(it->second.rebased(target_vars));
    } else if (std::find(target_vars.begin(), target_vars.end(), v) != target_vars.end()) {
      images.push_back(Poly::variable(target_vars, v));
    } else {
      images.push_back(Poly(target_vars));  // unassigned, unused variables map to zero
      bool used = false;
      int idx = var_index(v);
      for (const auto& [m, c] : terms_) used = used || m[idx] > 0;
      if (used) throw std::invalid_argument("substitution does not cover variable " + v);
    }
  }
  Poly r(target_vars);
  for (const auto& [m, c] : terms_) {
    Poly t = Poly::constant(target_vars, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) t = t * pow(images[i], m[i]);
    r += t;
  }
  return r;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    int dx = std::accumulate(x.first.begin(), x.first.end(), 0);
    int dy = std::accumulate(y.first.begin(), y.first.end(), 0);
    if (dx != dy) return dx > dy;
    return x.first > y.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : ordered) {
    Rational mag = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    if (mono.empty()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += to_string(mag) + "*" + mono;
    }
  }
  return out;
}

}  // namespace charnum
