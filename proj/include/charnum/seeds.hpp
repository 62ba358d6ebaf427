#pragma once

#include "charnum/series.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace charnum {

// A required seed file could not be opened.
class MissingSeedFile : public std::runtime_error {
 public:
  explicit MissingSeedFile(std::string path)
      : std::runtime_error("missing seed file: " + path), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// A seed file was read but lacks an entry the computation needs.
class MissingSeedEntry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Externally supplied invariants. Unlike SeriesTable, an explicit zero is a statement, so it is
// kept apart from "not supplied".
class SeedTable {
 public:
  SeedTable() = default;
  SeedTable(VarSet vars, CurveClass bound) : vars_(std::move(vars)), bound_(std::move(bound)) {}

  const VarSet& vars() const { return vars_; }
  const CurveClass& bound() const { return bound_; }
  const std::map<SeriesTable::Key, Rational>& values() const { return values_; }
  // '#' lines of the file, in order; the header naming where the numbers come from.
  const std::vector<std::string>& provenance() const { return provenance_; }
  std::string source() const { return source_; }

  void set(const CurveClass& c, const MultiIndex& m, const Rational& v) { values_[{c, m}] = v; }
  std::optional<Rational> find(const CurveClass& c, const MultiIndex& m) const;
  // Throws MissingSeedEntry naming the key and the source.
  Rational require(const CurveClass& c, const MultiIndex& m) const;
  SeriesTable table() const;

  static SeedTable parse(const std::string& text, const std::string& source = "<text>");

 private:
  VarSet vars_;
  CurveClass bound_;
  std::map<SeriesTable::Key, Rational> values_;
  std::vector<std::string> provenance_;
  std::string source_;
};

// Throws MissingSeedFile when the path cannot be opened.
SeedTable read_seed_file(const std::string& path);
// Location of a file under the shipped data/seeds directory.
std::string shipped_seed_path(const std::string& file);

}  // namespace charnum
