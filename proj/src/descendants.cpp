#include "charnum/descendants.hpp"

#include <algorithm>
#include <functional>
#include <regex>
#include <sstream>

namespace charnum {

DescendantSpec DescendantSpec::canonical() const {
  DescendantSpec s = *this;
  std::sort(s.insertions.begin(), s.insertions.end());
  return s;
}

int DescendantSpec::psi_total() const {
  int t = 0;
  for (const auto& i : insertions) t += i.m;
  return t;
}

std::string DescendantSpec::key() const {
  DescendantSpec s = canonical();
  std::string out;
  for (std::size_t i = 0; i < s.insertions.size();) {
    std::size_t j = i;
    while (j < s.insertions.size() && s.insertions[j] == s.insertions[i]) ++j;
    if (!out.empty()) out += " ";
    out += "tau" + std::to_string(s.insertions[i].m) + "(T" + std::to_string(s.insertions[i].cls) + ")";
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out + " @ g=" + std::to_string(genus) + " d=" + join_ints(beta);
}

ParsedSpec parse_spec(const std::string& text) {
  auto at = text.find('@');
  if (at == std::string::npos) throw std::invalid_argument("spec needs '@ g=.. d=..'");
  ParsedSpec out;
  static const std::regex tok(R"(tau(\d+)\(T(\d+)\)(?:\^(\d+))?)");
  std::istringstream left(text.substr(0, at));
  std::string w;
  while (left >> w) {
    std::smatch m;
    if (!std::regex_match(w, m, tok)) throw std::invalid_argument("bad insertion token: " + w);
    int count = m[3].matched ? std::stoi(m[3]) : 1;
    for (int t = 0; t < count; ++t) out.spec.insertions.push_back({std::stoi(m[1]), std::stoi(m[2])});
  }
  std::istringstream right(text.substr(at + 1));
  bool have_g = false, have_d = false;
  while (right >> w) {
    auto eq = w.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value after '@': " + w);
    std::string k = w.substr(0, eq), v = w.substr(eq + 1);
    if (k == "g") {
      out.spec.genus = std::stoi(v);
      have_g = true;
    } else if (k == "d") {
      std::stringstream ds(v);
      std::string part;
      while (std::getline(ds, part, ',')) {
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
          throw std::invalid_argument("bad degree: " + v);
        out.spec.beta.push_back(std::stoi(part));
      }
      have_d = true;
    } else if (k == "target") {
      out.target = v;
    } else {
      throw std::invalid_argument("unknown spec key: " + k);
    }
  }
  if (!have_g || !have_d) throw std::invalid_argument("spec needs both g= and d=");
  if (out.spec.genus < 0) throw std::invalid_argument("negative genus");
  return out;
}

namespace {

bool zero_class(const CurveClass& c) {
  return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

}  // namespace

std::optional<ReduceStep> reduce_special(const TargetGeometry& geom, const DescendantSpec& spec) {
  const bool degree0 = zero_class(spec.beta);
  if (degree0 && spec.genus == 0) throw std::invalid_argument("descendants are undefined for (g,beta) = (0,0)");
  for (const auto& i : spec.insertions)
    if (i.cls < 0 || i.cls >= geom.rank() || i.m < 0) throw std::invalid_argument("insertion out of range");
  for (const auto& i : spec.insertions)
    if (i.m == 0 && i.cls == 0) return ReduceStep{0, {}, true};
  if (degree0 && spec.genus == 1 && spec.insertions.size() == 1) {
    const Insertion& i = spec.insertions[0];
    if (i.m == 1 && i.cls == 0) return ReduceStep{geom.euler / 24, {}, true};
    if (i.m == 0 && geom.codim[i.cls] == 1) return ReduceStep{-geom.divisor_chern_integral(i.cls) / 24, {}, true};
  }
  for (std::size_t p = 0; p < spec.insertions.size(); ++p) {
    const Insertion& i = spec.insertions[p];
    Rational factor;
    if (i.m == 1 && i.cls == 0)
      factor = 2 * spec.genus - 2;
    else if (i.m == 0 && geom.codim[i.cls] == 1)
      factor = geom.divisor_degree(i.cls, spec.beta);
    else
      continue;
    ReduceStep step{factor, spec, false};
    step.rest.insertions.erase(step.rest.insertions.begin() + static_cast<long>(p));
    return step;
  }
  return std::nullopt;
}

Rational DescendantEngine::genus0(const DescendantSpec& spec) {
  if (spec.genus != 0) throw std::invalid_argument("the genus-0 engine got genus " + std::to_string(spec.genus));
  return genus0(spec.beta, spec.insertions);
}

Rational DescendantEngine::genus0(const CurveClass& beta, std::vector<Insertion> ins) {
  if (beta.size() != geom_->divisors.size()) throw std::invalid_argument("class has the wrong number of coordinates");
  if (zero_class(beta)) throw std::invalid_argument("descendants are undefined for (g,beta) = (0,0)");
  for (int x : beta)
    if (x < 0) return 0;
  for (const auto& i : ins)
    if (i.cls < 0 || i.cls >= geom_->rank() || i.m < 0) throw std::invalid_argument("insertion out of range");
  return evaluate(beta, std::move(ins));
}

std::map<std::string, Rational> DescendantEngine::memo_snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_;
}

void DescendantEngine::preload(const std::string& key, const Rational& v) {
  std::lock_guard<std::mutex> lock(mu_);
  memo_[key] = v;
}

std::size_t DescendantEngine::memo_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.size();
}

Rational DescendantEngine::evaluate(const CurveClass& beta, std::vector<Insertion> ins) {
  const TargetGeometry& g = *geom_;
  Rational factor = 1;
  std::vector<Insertion> kept;
  for (const auto& i : ins) {
    if (i.cls == 0 && i.m == 0) return 0;
    if (i.cls == 0 && i.m == 1) {
      factor *= -2;
    } else if (i.m == 0 && g.codim[i.cls] == 1) {
      factor *= g.divisor_degree(i.cls, beta);
      if (factor == 0) return 0;
    } else {
      kept.push_back(i);
    }
  }
  int degree = 0;
  for (const auto& i : kept) degree += i.m + g.codim[i.cls];
  if (degree != vdim(g, 0, beta, static_cast<int>(kept.size()))) return 0;
  std::sort(kept.begin(), kept.end());
  DescendantSpec spec{0, beta, kept};
  std::string key = spec.key();
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return factor * it->second;
  }
  Rational v;
  bool primary = std::all_of(kept.begin(), kept.end(), [](const Insertion& i) { return i.m == 0; });
  if (primary) {
    std::vector<int> classes;
    for (const auto& i : kept) classes.push_back(i.cls);
    v = gw_->value(beta, classes);
  } else {
    v = recurse(beta, kept);
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(key, v);
  }
  return factor * v;
}

Rational DescendantEngine::recurse(const CurveClass& beta, std::vector<Insertion> ins) {
  const TargetGeometry& g = *geom_;
  Rational pad = 1;
  if (ins.size() < 3) {
    int divisor = -1;
    for (int d : g.divisors)
      if (g.divisor_degree(d, beta) != 0) {
        divisor = d;
        break;
      }
    if (divisor < 0) throw std::domain_error("no divisor with nonzero degree on class " + join_ints(beta));
    while (ins.size() < 3) {
      ins.push_back({0, divisor});
      pad /= g.divisor_degree(divisor, beta);
    }
  }
  int p1 = 0;
  for (int p = 1; p < static_cast<int>(ins.size()); ++p)
    if (ins[p].m > ins[p1].m || (ins[p].m == ins[p1].m && ins[p].cls < ins[p1].cls)) p1 = p;
  int p2 = -1, p3 = -1;
  for (int p = 0; p < static_cast<int>(ins.size()); ++p) {
    if (p == p1) continue;
    if (p2 < 0)
      p2 = p;
    else if (p3 < 0)
      p3 = p;
  }
  return pad * apply_rec(beta, ins, p1, p2, p3);
}

Rational DescendantEngine::recursion_step(const DescendantSpec& spec, int p1, int p2, int p3) {
  const int n = static_cast<int>(spec.insertions.size());
  auto bad = [n](int p) { return p < 0 || p >= n; };
  if (bad(p1) || bad(p2) || bad(p3) || p1 == p2 || p1 == p3 || p2 == p3)
    throw std::invalid_argument("distinguished marks must be three distinct positions");
  if (spec.insertions[p1].m < 1) throw std::invalid_argument("p1 must carry a psi class");
  if (spec.genus != 0) throw std::invalid_argument("recursion step is genus 0 only");
  return apply_rec(spec.beta, spec.insertions, p1, p2, p3);
}

namespace {

// distinct insertion types with multiplicities
using Pool = std::vector<std::pair<Insertion, int>>;

Pool pool_of(const std::vector<Insertion>& v) {
  std::vector<Insertion> s = v;
  std::sort(s.begin(), s.end());
  Pool out;
  for (const auto& i : s) {
    if (!out.empty() && out.back().first == i)
      ++out.back().second;
    else
      out.push_back({i, 1});
  }
  return out;
}

// all sub-multisets of a pool: callback(counts, multiplicity = product of binomials)
void for_each_sub(const Pool& pool, const std::function<bool(std::size_t)>& allowed,
                  const std::function<void(const std::vector<int>&, const Integer&)>& f) {
  std::vector<int> cur(pool.size(), 0);
  std::function<void(std::size_t, Integer)> rec = [&](std::size_t k, Integer mult) {
    if (k == pool.size()) {
      f(cur, mult);
      return;
    }
    int top = allowed(k) ? pool[k].second : 0;
    for (int c = 0; c <= top; ++c) {
      cur[k] = c;
      rec(k + 1, mult * binomial(pool[k].second, c));
    }
    cur[k] = 0;
  };
  rec(0, 1);
}

}  // namespace

Rational DescendantEngine::apply_rec(const CurveClass& beta, const std::vector<Insertion>& ins, int p1, int p2,
                                     int p3) {
  const TargetGeometry& g = *geom_;
  const int n = g.rank();
  Insertion a1{ins[p1].m - 1, ins[p1].cls}, a2 = ins[p2], a3 = ins[p3];
  std::vector<Insertion> rest;
  for (int p = 0; p < static_cast<int>(ins.size()); ++p)
    if (p != p1 && p != p2 && p != p3) rest.push_back(ins[p]);

  Rational total = 0;
  auto merged = [&](const Insertion& x, const Insertion& y, const Insertion& other, const Rational& sign) {
    const Vec& prod = g.cup_product(x.cls, y.cls);
    for (int k = 0; k < n; ++k) {
      if (prod[k] == 0) continue;
      std::vector<Insertion> v = rest;
      v.push_back({x.m + y.m, k});
      v.push_back(other);
      total += sign * prod[k] * evaluate(beta, v);
    }
  };
  merged(a2, a3, a1, 1);
  merged(a1, a2, a3, -1);
  merged(a1, a3, a2, -1);

  // Splitting terms. For one side: the fixed marks (p1, or p2 and p3), the chosen part S' of the
  // rest, and the subset B of marks with m > 0 whose classes move to the gluing mark.
  Pool pool = pool_of(rest);
  auto side_vector = [&](const CurveClass& b, const std::vector<Insertion>& fixed, const std::vector<int>& share) {
    Vec out(n, Rational(0));
    Pool mine;
    for (std::size_t k = 0; k < pool.size(); ++k)
      if (share[k] > 0) mine.push_back({pool[k].first, share[k]});
    // fixed marks are distinct marks; subsets over them are plain choices
    const int nf = static_cast<int>(fixed.size());
    for (int mask = 0; mask < (1 << nf); ++mask) {
      bool ok = true;
      for (int t = 0; t < nf; ++t)
        if ((mask >> t & 1) && fixed[t].m == 0) ok = false;
      if (!ok) continue;
      for_each_sub(
          mine, [&](std::size_t k) { return mine[k].first.m > 0; },
          [&](const std::vector<int>& bcount, const Integer& mult) {
            std::vector<Insertion> keep;
            Vec cls = basis_vector(n, 0);
            int mb = 0;
            for (int t = 0; t < nf; ++t) {
              if (mask >> t & 1) {
                cls = g.cup_vec(cls, basis_vector(n, fixed[t].cls));
                mb += fixed[t].m - 1;
              } else {
                keep.push_back(fixed[t]);
              }
            }
            for (std::size_t k = 0; k < mine.size(); ++k) {
              for (int c = 0; c < bcount[k]; ++c) {
                cls = g.cup_vec(cls, basis_vector(n, mine[k].first.cls));
                mb += mine[k].first.m - 1;
              }
              for (int c = bcount[k]; c < mine[k].second; ++c) keep.push_back(mine[k].first);
            }
            bool zero = std::all_of(cls.begin(), cls.end(), [](const Rational& x) { return x == 0; });
            if (zero) return;
            for (int e = 0; e < n; ++e) {
              Vec glue = g.cup_vec(cls, basis_vector(n, e));
              Rational acc = 0;
              for (int k = 0; k < n; ++k) {
                if (glue[k] == 0) continue;
                std::vector<Insertion> v = keep;
                v.push_back({mb, k});
                acc += glue[k] * evaluate(b, v);
              }
              out[e] += Rational(mult) * acc;
            }
          });
    }
    return out;
  };

  std::vector<CurveClass> firsts;
  {
    CurveClass cur(beta.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == beta.size()) {
        CurveClass other(beta.size());
        for (std::size_t i = 0; i < beta.size(); ++i) other[i] = beta[i] - cur[i];
        if (!zero_class(cur) && !zero_class(other)) firsts.push_back(cur);
        return;
      }
      for (int e = 0; e <= beta[k]; ++e) {
        cur[k] = e;
        rec(k + 1);
      }
    };
    rec(0);
  }
  for (const auto& b1 : firsts) {
    CurveClass b2(beta.size());
    for (std::size_t i = 0; i < beta.size(); ++i) b2[i] = beta[i] - b1[i];
    for_each_sub(
        pool, [](std::size_t) { return true; },
        [&](const std::vector<int>& left, const Integer& mult) {
          std::vector<int> right(pool.size());
          for (std::size_t k = 0; k < pool.size(); ++k) right[k] = pool[k].second - left[k];
          Vec lv = side_vector(b1, {a1}, left);
          if (std::all_of(lv.begin(), lv.end(), [](const Rational& x) { return x == 0; })) return;
          Vec rv = side_vector(b2, {a2, a3}, right);
          Rational s = 0;
          for (int e = 0; e < n; ++e) {
            if (lv[e] == 0) continue;
            for (int f = 0; f < n; ++f)
              if (g.inverse_pairing[e][f] != 0) s += lv[e] * g.inverse_pairing[e][f] * rv[f];
          }
          total += Rational(mult) * s;
        });
  }
  return total;
}

Rational descend_genus0(const DescendantSpec& spec, const GWTable& gw) {
  DescendantEngine engine(gw);
  return engine.genus0(spec);
}

}  // namespace charnum
