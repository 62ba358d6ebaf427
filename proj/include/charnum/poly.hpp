#pragma once

#include "charnum/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace charnum {

// Multivariate polynomial with rational coefficients over a named variable list.
class Poly {
 public:
  using Monomial = std::vector<int>;

  Poly() = default;
  explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static Poly constant(std::vector<std::string> vars, const Rational& c);
  static Poly variable(std::vector<std::string> vars, const std::string& name, const Rational& c = 1);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  int var_index(const std::string& name) const;  // -1 when absent

  void add_term(const Monomial& m, const Rational& c);
  Rational coeff(const Monomial& m) const;
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  // Drops every term whose total degree exceeds `max_degree`.
  Poly truncated(int max_degree) const;

  // Same polynomial over a different (super)set of variables. Throws if a used variable is missing.
  Poly rebased(const std::vector<std::string>& vars) const;

  // Replaces each variable by a polynomial over `target_vars`; missing entries are kept as is
  // only if the variable also appears in `target_vars`.
  Poly substitute(const std::map<std::string, Poly>& assignment,
                  const std::vector<std::string>& target_vars) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  bool operator==(const Poly& o) const;

  std::string str() const;

 private:
  Poly aligned(const Poly& o) const;
  std::vector<std::string> vars_;
  std::map<Monomial, Rational> terms_;
};

Poly pow(const Poly& p, int e);

}  // namespace charnum
