#include "charnum/seeds.hpp"

#include <fstream>
#include <sstream>

namespace charnum {

std::optional<Rational> SeedTable::find(const CurveClass& c, const MultiIndex& m) const {
  auto it = values_.find({c, m});
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

Rational SeedTable::require(const CurveClass& c, const MultiIndex& m) const {
  if (auto v = find(c, m)) return *v;
  throw MissingSeedEntry("seed " + source_ + " has no entry for class " + join_ints(c) + " index " + join_ints(m));
}

SeriesTable SeedTable::table() const {
  SeriesTable t(vars_, bound_);
  for (const auto& [k, v] : values_) t.set(k.first, k.second, v);
  return t;
}

SeedTable SeedTable::parse(const std::string& text, const std::string& source) {
  ParsedTable p = parse_table_text(text);
  SeedTable s(p.vars, p.bound);
  for (const auto& [k, v] : p.records) s.values_[k] = v;
  s.provenance_ = p.comments;
  s.source_ = source;
  return s;
}

SeedTable read_seed_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingSeedFile(path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return SeedTable::parse(ss.str(), path);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string shipped_seed_path(const std::string& file) { return std::string(CHARNUM_DATA_DIR) + "/seeds/" + file; }

}  // namespace charnum
