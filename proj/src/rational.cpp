#include "charnum/rational.hpp"

#include <mutex>
#include <stdexcept>

namespace charnum {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto valid_int = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string num(text.substr(0, slash));
  std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  if (!valid_int(num, true) || !valid_int(den, false))
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

namespace {
std::mutex table_mutex;
std::vector<Integer> fact_table{1};
std::vector<std::vector<Integer>> binom_rows{{1}};
}  // namespace

Integer factorial(unsigned n) {
  std::lock_guard lock(table_mutex);
  while (fact_table.size() <= n) fact_table.push_back(fact_table.back() * Integer(fact_table.size()));
  return fact_table[n];
}

Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::lock_guard lock(table_mutex);
  while (binom_rows.size() <= n) {
    const auto& prev = binom_rows.back();
    std::vector<Integer> row(prev.size() + 1);
    row.front() = row.back() = 1;
    for (std::size_t i = 1; i + 1 < row.size(); ++i) row[i] = prev[i - 1] + prev[i];
    binom_rows.push_back(std::move(row));
  }
  return binom_rows[n][k];
}

Integer multi_binomial(const std::vector<int>& n, const std::vector<int>& k) {
  Integer r = 1;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (k[i] < 0 || k[i] > n[i]) return 0;
    r *= binomial(static_cast<unsigned>(n[i]), static_cast<unsigned>(k[i]));
  }
  return r;
}

}  // namespace charnum
