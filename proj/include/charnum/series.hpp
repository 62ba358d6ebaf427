#pragma once

#include "charnum/poly.hpp"
#include "charnum/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace charnum {

using CurveClass = std::vector<int>;
using MultiIndex = std::vector<int>;

// A named linear form on curve classes, e.g. s = u1 + u2 with weights (1,1).
struct DegreeForm {
  std::string name;
  std::vector<int> weights;
  bool operator==(const DegreeForm&) const = default;
};

// Variables of a potential. Degree variables carry the exp(d.u) grading; exponent variables
// carry the divided-power expansion.
struct VarSet {
  std::vector<std::string> degree;
  std::vector<std::string> vars;
  std::vector<DegreeForm> aliases;

  int var_index(const std::string& name) const;
  std::optional<std::vector<int>> degree_weights(const std::string& name) const;
  bool operator==(const VarSet&) const = default;
};

// Graded table of invariants keyed by (curve class, exponent multi-index). The stored value is
// the invariant itself; the generating function coefficient is value / idx!.
class SeriesTable {
 public:
  using Key = std::pair<CurveClass, MultiIndex>;

  SeriesTable() = default;
  SeriesTable(VarSet vars, CurveClass bound);

  const VarSet& vars() const { return vars_; }
  const CurveClass& bound() const { return bound_; }
  const std::map<Key, Rational>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  bool within_bound(const CurveClass& c) const;
  Rational at(const CurveClass& c, const MultiIndex& m) const;
  void set(const CurveClass& c, const MultiIndex& m, const Rational& v);
  void add(const CurveClass& c, const MultiIndex& m, const Rational& v);

  // Entries of a single class.
  SeriesTable stratum(const CurveClass& c) const;
  // Entries whose class is componentwise <= c, with the bound lowered to c.
  SeriesTable truncated(const CurveClass& c) const;
  std::vector<CurveClass> classes() const;

  SeriesTable& operator+=(const SeriesTable& o);
  SeriesTable& operator-=(const SeriesTable& o);
  SeriesTable& operator*=(const Rational& c);
  friend SeriesTable operator+(SeriesTable a, const SeriesTable& b) { return a += b; }
  friend SeriesTable operator-(SeriesTable a, const SeriesTable& b) { return a -= b; }
  friend SeriesTable operator*(SeriesTable a, const Rational& c) { return a *= c; }
  bool operator==(const SeriesTable& o) const { return vars_ == o.vars_ && entries_ == o.entries_; }

 private:
  void check_key(const CurveClass& c, const MultiIndex& m) const;
  VarSet vars_;
  CurveClass bound_;
  std::map<Key, Rational> entries_;
};

// Divided-power product; bound is the componentwise minimum of the inputs.
SeriesTable series_product(const SeriesTable& f, const SeriesTable& g);
// Only the stratum of class `target` of the product.
SeriesTable series_product_at(const SeriesTable& f, const SeriesTable& g, const CurveClass& target);

SeriesTable partial_derivative(const SeriesTable& f, const std::string& var);

// Multiplication by a polynomial in the exponent variables.
SeriesTable multiply(const SeriesTable& f, const Poly& p);

// Sum of coefficient * d/d(var) terms.
struct DiffOperator {
  std::vector<std::pair<Poly, std::string>> terms;
};
SeriesTable apply_operator(const SeriesTable& f, const DiffOperator& op);

// Linear change of exponent variables: each old exponent variable becomes a homogeneous linear
// polynomial in the new exponent variables. Degree variables are kept.
SeriesTable linear_substitute(const SeriesTable& f, const VarSet& target,
                              const std::map<std::string, Poly>& images);

// Canonical text: header line, then "class ; index ; value" records in key order.
std::string serialize(const SeriesTable& f);
// Lines starting with '#' are comments. Throws std::invalid_argument on malformed input.
SeriesTable parse_series(const std::string& text);

// Raw records of the canonical text, explicit zeros kept, comment lines collected.
struct ParsedTable {
  VarSet vars;
  CurveClass bound;
  std::vector<std::pair<SeriesTable::Key, Rational>> records;
  std::vector<std::string> comments;
};
ParsedTable parse_table_text(const std::string& text);

std::string join_ints(const std::vector<int>& v, char sep = ',');

}  // namespace charnum
