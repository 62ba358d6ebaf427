#include "charnum/series.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace charnum {

int VarSet::var_index(const std::string& name) const {
  auto it = std::find(vars.begin(), vars.end(), name);
  return it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
}

std::optional<std::vector<int>> VarSet::degree_weights(const std::string& name) const {
  for (std::size_t i = 0; i < degree.size(); ++i)
    if (degree[i] == name) {
      std::vector<int> w(degree.size(), 0);
      w[i] = 1;
      return w;
    }
  for (const auto& a : aliases)
    if (a.name == name) return a.weights;
  return std::nullopt;
}

SeriesTable::SeriesTable(VarSet vars, CurveClass bound) : vars_(std::move(vars)), bound_(std::move(bound)) {
  if (bound_.size() != vars_.degree.size()) throw std::invalid_argument("bound length differs from degree variables");
}

bool SeriesTable::within_bound(const CurveClass& c) const {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] < 0 || c[i] > bound_[i]) return false;
  return true;
}

void SeriesTable::check_key(const CurveClass& c, const MultiIndex& m) const {
  if (c.size() != vars_.degree.size() || m.size() != vars_.vars.size())
    throw std::invalid_argument("key shape does not match the variable set");
  for (int e : m)
    if (e < 0) throw std::invalid_argument("negative exponent");
}

Rational SeriesTable::at(const CurveClass& c, const MultiIndex& m) const {
  auto it = entries_.find(Key{c, m});
  return it == entries_.end() ? Rational(0) : it->second;
}

void SeriesTable::set(const CurveClass& c, const MultiIndex& m, const Rational& v) {
  check_key(c, m);
  if (!within_bound(c)) throw std::out_of_range("class " + join_ints(c) + " outside truncation bound");
  if (v == 0)
    entries_.erase(Key{c, m});
  else
    entries_[Key{c, m}] = v;
}

void SeriesTable::add(const CurveClass& c, const MultiIndex& m, const Rational& v) {
  if (v == 0) return;
  check_key(c, m);
  if (!within_bound(c)) return;
  auto [it, fresh] = entries_.try_emplace(Key{c, m}, v);
  if (!fresh) {
    it->second += v;
    if (it->second == 0) entries_.erase(it);
  }
}

SeriesTable SeriesTable::stratum(const CurveClass& c) const {
  SeriesTable r(vars_, bound_);
  for (auto it = entries_.lower_bound(Key{c, {}}); it != entries_.end() && it->first.first == c; ++it)
    r.entries_.insert(*it);
  return r;
}

SeriesTable SeriesTable::truncated(const CurveClass& c) const {
  SeriesTable r(vars_, c);
  for (const auto& [k, v] : entries_)
    if (r.within_bound(k.first)) r.entries_.insert({k, v});
  return r;
}

std::vector<CurveClass> SeriesTable::classes() const {
  std::vector<CurveClass> out;
  for (const auto& [k, v] : entries_)
    if (out.empty() || out.back() != k.first) out.push_back(k.first);
  return out;
}

SeriesTable& SeriesTable::operator+=(const SeriesTable& o) {
  if (!(vars_ == o.vars_)) throw std::invalid_argument("variable-set mismatch");
  for (const auto& [k, v] : o.entries_) add(k.first, k.second, v);
  return *this;
}

SeriesTable& SeriesTable::operator-=(const SeriesTable& o) {
  if (!(vars_ == o.vars_)) throw std::invalid_argument("variable-set mismatch");
  for (const auto& [k, v] : o.entries_) add(k.first, k.second, -v);
  return *this;
}

SeriesTable& SeriesTable::operator*=(const Rational& c) {
  if (c == 0) {
    entries_.clear();
    return *this;
  }
  for (auto& [k, v] : entries_) v *= c;
  return *this;
}

namespace {

using Stratum = std::vector<std::pair<MultiIndex, Rational>>;

std::map<CurveClass, Stratum> by_class(const SeriesTable& f) {
  std::map<CurveClass, Stratum> out;
  for (const auto& [k, v] : f.entries()) out[k.first].emplace_back(k.second, v);
  return out;
}

void convolve(const Stratum& a, const Stratum& b, const CurveClass& cls, SeriesTable& out) {
  for (const auto& [ia, va] : a)
    for (const auto& [ib, vb] : b) {
      MultiIndex n(ia.size());
      for (std::size_t i = 0; i < n.size(); ++i) n[i] = ia[i] + ib[i];
      out.add(cls, n, Rational(multi_binomial(n, ia)) * va * vb);
    }
}

CurveClass min_bound(const SeriesTable& f, const SeriesTable& g) {
  CurveClass b(f.bound().size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = std::min(f.bound()[i], g.bound()[i]);
  return b;
}

}  // namespace

SeriesTable series_product(const SeriesTable& f, const SeriesTable& g) {
  if (!(f.vars() == g.vars())) throw std::invalid_argument("variable-set mismatch in product");
  SeriesTable out(f.vars(), min_bound(f, g));
  auto fs = by_class(f), gs = by_class(g);
  for (const auto& [ca, sa] : fs)
    for (const auto& [cb, sb] : gs) {
      CurveClass c(ca.size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = ca[i] + cb[i];
      if (out.within_bound(c)) convolve(sa, sb, c, out);
    }
  return out;
}

SeriesTable series_product_at(const SeriesTable& f, const SeriesTable& g, const CurveClass& target) {
  if (!(f.vars() == g.vars())) throw std::invalid_argument("variable-set mismatch in product");
  SeriesTable out(f.vars(), min_bound(f, g));
  if (!out.within_bound(target)) return out;
  auto fs = by_class(f), gs = by_class(g);
  for (const auto& [ca, sa] : fs) {
    CurveClass cb(ca.size());
    bool ok = true;
    for (std::size_t i = 0; i < cb.size(); ++i) {
      cb[i] = target[i] - ca[i];
      ok = ok && cb[i] >= 0;
    }
    if (!ok) continue;
    auto it = gs.find(cb);
    if (it != gs.end()) convolve(sa, it->second, target, out);
  }
  return out;
}

SeriesTable partial_derivative(const SeriesTable& f, const std::string& var) {
  SeriesTable out(f.vars(), f.bound());
  if (auto w = f.vars().degree_weights(var)) {
    for (const auto& [k, v] : f.entries()) {
      long scale = 0;
      for (std::size_t i = 0; i < w->size(); ++i) scale += static_cast<long>((*w)[i]) * k.first[i];
      out.add(k.first, k.second, v * Rational(scale));
    }
    return out;
  }
  int j = f.vars().var_index(var);
  if (j < 0) throw std::invalid_argument("unknown variable: " + var);
  for (const auto& [k, v] : f.entries()) {
    if (k.second[j] == 0) continue;
    MultiIndex m = k.second;
    --m[j];
    out.add(k.first, m, v);
  }
  return out;
}

SeriesTable multiply(const SeriesTable& f, const Poly& p) {
  Poly q = p.rebased(f.vars().vars);
  SeriesTable out(f.vars(), f.bound());
  for (const auto& [mono, c] : q.terms())
    for (const auto& [k, v] : f.entries()) {
      MultiIndex m = k.second;
      Integer w = 1;
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (int t = 1; t <= mono[i]; ++t) w *= m[i] + t;
        m[i] += mono[i];
      }
      out.add(k.first, m, v * c * Rational(w));
    }
  return out;
}

SeriesTable apply_operator(const SeriesTable& f, const DiffOperator& op) {
  SeriesTable out(f.vars(), f.bound());
  for (const auto& [coef, var] : op.terms) {
    if (coef.is_zero()) continue;
    out += multiply(partial_derivative(f, var), coef);
  }
  return out;
}

SeriesTable linear_substitute(const SeriesTable& f, const VarSet& target,
                              const std::map<std::string, Poly>& images) {
  if (f.vars().degree != target.degree) throw std::invalid_argument("degree variables must be preserved");
  const auto& old_vars = f.vars().vars;
  const std::size_t nn = target.vars.size();
  // rows[i]: list of (new slot, coefficient) for old variable i
  std::vector<std::vector<std::pair<int, Rational>>> rows(old_vars.size());
  for (std::size_t i = 0; i < old_vars.size(); ++i) {
    auto it = images.find(old_vars[i]);
    if (it == images.end()) throw std::invalid_argument("no image for variable " + old_vars[i]);
    Poly img = it->second.rebased(target.vars);
    for (const auto& [mono, c] : img.terms()) {
      int deg = 0, slot = -1;
      for (std::size_t j = 0; j < mono.size(); ++j) {
        deg += mono[j];
        if (mono[j]) slot = static_cast<int>(j);
      }
      if (deg != 1) throw std::invalid_argument("image of " + old_vars[i] + " is not linear homogeneous");
      rows[i].emplace_back(slot, c);
    }
  }
  SeriesTable out(target, f.bound());
  for (const auto& [k, v] : f.entries()) {
    // distribute each old exponent over the new variables of its image
    std::function<void(std::size_t, MultiIndex&, Rational)> rec = [&](std::size_t i, MultiIndex& acc, Rational w) {
      if (i == old_vars.size()) {
        Integer mf = 1;
        for (int e : acc) mf *= factorial(static_cast<unsigned>(e));
        out.add(k.first, acc, v * w * Rational(mf));
        return;
      }
      const auto& row = rows[i];
      int n = k.second[i];
      if (n == 0) {
        rec(i + 1, acc, w);
        return;
      }
      if (row.empty()) return;
      std::function<void(std::size_t, int, Rational)> split = [&](std::size_t r, int left, Rational ww) {
        if (r + 1 == row.size()) {
          Rational c = ww;
          for (int t = 0; t < left; ++t) c *= row[r].second;
          c /= Rational(factorial(static_cast<unsigned>(left)));
          acc[row[r].first] += left;
          rec(i + 1, acc, c);
          acc[row[r].first] -= left;
          return;
        }
        Rational p = 1;
        for (int t = 0; t <= left; ++t) {
          acc[row[r].first] += t;
          split(r + 1, left - t, ww * p / Rational(factorial(static_cast<unsigned>(t))));
          acc[row[r].first] -= t;
          p *= row[r].second;
        }
      };
      split(0, n, w);
    };
    MultiIndex acc(nn, 0);
    rec(0, acc, Rational(1));
  }
  return out;
}

std::string join_ints(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

namespace {

std::string join_names(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i];
  }
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& tok : split(trim(s), ',')) {
    std::string t = trim(tok);
    if (t.empty() || t.find_first_not_of("0123456789-") != std::string::npos)
      throw std::invalid_argument("malformed integer list: '" + s + "'");
    out.push_back(std::stoi(t));
  }
  return out;
}

}  // namespace

std::string serialize(const SeriesTable& f) {
  std::ostringstream os;
  os << "@series degree=" << join_names(f.vars().degree) << " vars=" << join_names(f.vars().vars)
     << " bound=" << join_ints(f.bound());
  for (const auto& a : f.vars().aliases) os << " alias=" << a.name << ":" << join_ints(a.weights);
  os << "\n";
  for (const auto& [k, v] : f.entries())
    os << join_ints(k.first) << " ; " << join_ints(k.second) << " ; " << to_string(v) << "\n";
  return os.str();
}

ParsedTable parse_table_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  bool have_header = false;
  ParsedTable out;
  SeriesTable shape;
  std::map<SeriesTable::Key, bool> seen;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      out.comments.push_back(trim(t.substr(1)));
      continue;
    }
    if (!have_header) {
      if (t.rfind("@series", 0) != 0) throw std::invalid_argument("missing @series header");
      bool have_bound = false;
      std::istringstream hs(t.substr(7));
      std::string tok;
      while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("malformed header token: " + tok);
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "degree") {
          out.vars.degree = split(val, ',');
        } else if (key == "vars") {
          out.vars.vars = split(val, ',');
        } else if (key == "bound") {
          out.bound = parse_ints(val);
          have_bound = true;
        } else if (key == "alias") {
          auto colon = val.find(':');
          if (colon == std::string::npos) throw std::invalid_argument("malformed alias: " + val);
          out.vars.aliases.push_back({val.substr(0, colon), parse_ints(val.substr(colon + 1))});
        } else {
          throw std::invalid_argument("unknown header key: " + key);
        }
      }
      if (!have_bound) throw std::invalid_argument("header lacks bound");
      shape = SeriesTable(out.vars, out.bound);
      have_header = true;
      continue;
    }
    auto parts = split(t, ';');
    std::string where = "line " + std::to_string(lineno) + ": ";
    if (parts.size() != 3) throw std::invalid_argument(where + "expected 'class ; index ; value'");
    CurveClass c = parse_ints(parts[0]);
    MultiIndex m = trim(parts[1]).empty() ? MultiIndex{} : parse_ints(parts[1]);
    if (c.size() != out.vars.degree.size() || m.size() != out.vars.vars.size())
      throw std::invalid_argument(where + "record shape does not match the header");
    for (int e : m)
      if (e < 0) throw std::invalid_argument(where + "negative exponent");
    if (!shape.within_bound(c)) throw std::invalid_argument(where + "class outside bound");
    if (seen[{c, m}]) throw std::invalid_argument(where + "duplicate record");
    seen[{c, m}] = true;
    out.records.push_back({{c, m}, parse_rational(parts[2])});
  }
  if (!have_header) throw std::invalid_argument("missing @series header");
  return out;
}

SeriesTable parse_series(const std::string& text) {
  ParsedTable p = parse_table_text(text);
  SeriesTable out(p.vars, p.bound);
  for (const auto& [k, v] : p.records) out.set(k.first, k.second, v);
  return out;
}

}  // namespace charnum
