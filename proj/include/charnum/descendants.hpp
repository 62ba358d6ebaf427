#pragma once

#include "charnum/gw.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace charnum {

// tau_m(T_cls)
struct Insertion {
  int m = 0;
  int cls = 0;
  auto operator<=>(const Insertion&) const = default;
};

struct DescendantSpec {
  int genus = 0;
  CurveClass beta;
  std::vector<Insertion> insertions;

  // Sorted insertions; the multiset is all that matters.
  DescendantSpec canonical() const;
  // "tau0(T2)^4 tau1(T1) @ g=0 d=2", canonical order; used as memo and cache key.
  std::string key() const;
  int psi_total() const;
};

struct ParsedSpec {
  DescendantSpec spec;
  std::string target;  // empty when not given
};
// Grammar: insertion tokens "tau<m>(T<k>)" with optional "^<count>", then "@", then
// "g=<genus>", "d=<d>" or "d=<d1>,<d2>", optional "target=<name>".
ParsedSpec parse_spec(const std::string& text);

// One application of the string, dilaton or divisor equation, or a (g,beta) = (1,0) special value.
struct ReduceStep {
  Rational factor;
  DescendantSpec rest;
  bool closed = false;  // the spec evaluated to `factor`; `rest` is unused
};
// nullopt when no rule applies.
std::optional<ReduceStep> reduce_special(const TargetGeometry& geom, const DescendantSpec& spec);

// Genus-0 enumerative descendants from the primary invariants, via the genus-0 topological
// recursion. Memoized; safe to call from several threads.
class DescendantEngine {
 public:
  explicit DescendantEngine(const GWTable& gw) : gw_(&gw), geom_(&gw.geometry()) {}

  Rational genus0(const DescendantSpec& spec);
  Rational genus0(const CurveClass& beta, std::vector<Insertion> ins);

  // One recursion step with the distinguished marks given as positions into spec.insertions
  // (p1 must carry m >= 1); the resulting smaller invariants use the default choices.
  Rational recursion_step(const DescendantSpec& spec, int p1, int p2, int p3);

  std::map<std::string, Rational> memo_snapshot() const;
  void preload(const std::string& key, const Rational& v);
  std::size_t memo_size() const;

 private:
  Rational evaluate(const CurveClass& beta, std::vector<Insertion> ins);
  Rational recurse(const CurveClass& beta, std::vector<Insertion> ins);
  Rational apply_rec(const CurveClass& beta, const std::vector<Insertion>& ins, int p1, int p2, int p3);

  const GWTable* gw_;
  const TargetGeometry* geom_;
  mutable std::mutex mu_;
  std::map<std::string, Rational> memo_;
};

// Convenience wrapper with a fresh engine.
Rational descend_genus0(const DescendantSpec& spec, const GWTable& gw);

}  // namespace charnum
