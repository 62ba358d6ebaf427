#include "CLI11.hpp"
#include "json.hpp"

#include "charnum/cache.hpp"
#include "charnum/charnum_p2.hpp"
#include "charnum/charnum_quadric.hpp"
#include "charnum/descendants.hpp"
#include "charnum/hurwitz.hpp"
#include "charnum/oracles.hpp"
#include "charnum/tangency.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace charnum;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSeeds = 3;
constexpr int kExitFailure = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- output ----

// Arrays expand to one column per component (d -> d1, d2) in csv and md.
std::vector<std::pair<std::string, std::string>> flatten(const Json& row) {
  std::vector<std::pair<std::string, std::string>> cells;
  for (auto it = row.begin(); it != row.end(); ++it) {
    if (it.value().is_array()) {
      for (std::size_t i = 0; i < it.value().size(); ++i)
        cells.emplace_back(it.key() + std::to_string(i + 1), it.value()[i].dump());
    } else if (it.value().is_string()) {
      cells.emplace_back(it.key(), it.value().get<std::string>());
    } else {
      cells.emplace_back(it.key(), it.value().dump());
    }
  }
  return cells;
}

void emit(std::ostream& os, const std::vector<Json>& rows, const std::string& format) {
  if (format == "json") {
    os << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? ",\n " : "\n ") << rows[i].dump();
    os << (rows.empty() ? "]\n" : "\n]\n");
    return;
  }
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> body;
  for (const auto& r : rows) {
    auto cells = flatten(r);
    if (header.empty())
      for (const auto& c : cells) header.push_back(c.first);
    std::vector<std::string> line;
    for (const auto& c : cells) line.push_back(c.second);
    body.push_back(line);
  }
  if (format == "csv") {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& line : body) {
      for (std::size_t i = 0; i < line.size(); ++i) os << (i ? "," : "") << line[i];
      os << "\n";
    }
    return;
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& line : body)
    for (std::size_t i = 0; i < line.size() && i < width.size(); ++i) width[i] = std::max(width[i], line[i].size());
  auto print_line = [&](const std::vector<std::string>& cells) {
    os << "|";
    for (std::size_t i = 0; i < cells.size(); ++i) os << " " << std::string(width[i] - cells[i].size(), ' ') << cells[i] << " |";
    os << "\n";
  };
  print_line(header);
  os << "|";
  for (auto w : width) os << std::string(w + 1, '-') << ":|";
  os << "\n";
  for (const auto& line : body) print_line(line);
}

Json class_json(const CurveClass& beta) {
  if (beta.size() == 1) return beta[0];
  Json arr = Json::array();
  for (int x : beta) arr.push_back(x);
  return arr;
}

void add_char_records(std::vector<Json>& rows, const SeriesTable& table, const CurveClass& beta,
                      const std::vector<MultiIndex>& indices) {
  for (const auto& idx : indices) {
    Json r;
    r["d"] = class_json(beta);
    r["a"] = idx[0];
    r["b"] = idx[1];
    r["c"] = idx[2];
    r["value"] = to_string(table.at(beta, idx));
    rows.push_back(r);
  }
}

// ---- argument helpers ----

TargetGeometry resolve_target(const std::string& target) {
  try {
    return builtin_geometry(target);
  } catch (const std::exception&) {
  }
  if (std::filesystem::exists(target)) {
    std::ifstream in(target);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_geometry(ss.str());
  }
  throw UsageError("unknown target '" + target + "' (built-ins: p<r>, p1xp1, gr24, or a geometry file)");
}

std::vector<int> parse_degree_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(part, &used);
      if (used != part.size() || v < 1) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("--dmax expects positive integers, got '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("--dmax is empty");
  return out;
}

int single_degree(const std::string& text) {
  auto v = parse_degree_list(text);
  if (v.size() != 1) throw UsageError("--dmax expects a single degree for this target");
  return v[0];
}

CurveClass gw_bound(const TargetGeometry& geom, const std::string& dmax) {
  auto v = parse_degree_list(dmax);
  if (v.size() == 1) return CurveClass(geom.divisors.size(), v[0]);
  if (v.size() != geom.divisors.size()) throw UsageError("--dmax needs one degree per divisor class");
  return v;
}

QuadricBound quadric_bound(const std::string& dmax) {
  auto v = parse_degree_list(dmax);
  if (v.size() == 1) return quadric_total_bound(v[0]);
  if (v.size() != 2) throw UsageError("--dmax for p1xp1 is D or D1,D2");
  return QuadricBound{v, -1};
}

SeedTable seeds_or_default(const std::string& given, const std::string& shipped) {
  return read_seed_file(given.empty() ? shipped_seed_path(shipped) : given);
}

// ---- subcommands ----

struct Options {
  std::string target = "p2";
  int genus = 0;
  std::string dmax;
  std::string format = "json";
  std::string seeds;
  std::string cache;
  bool no_cache = false;
  std::string spec;
  std::string suite = "all";
  bool genus_given = false;
};

int run_compute(const Options& o) {
  std::vector<Json> rows;
  if (o.target == "p2") {
    const int dmax = single_degree(o.dmax);
    if (o.genus < 0 || o.genus > 2) throw UsageError("p2 numbers are computed for genus 0, 1 and 2");
    if (o.genus == 2 && dmax <= 3)
      throw ScopeError("genus-2 numbers need d >= 4: the degree-2 and degree-3 correction terms Q2 and Q3 are "
                       "not computed");
    TargetGeometry geom = builtin_geometry("p2");
    GWTable gw = wdvv_solve(geom, default_gw_seeds(geom, {dmax}), {dmax});
    SeriesTable g0 = charnum_genus0(gw, dmax);
    if (o.genus == 0) {
      for (int d = 1; d <= dmax; ++d) add_char_records(rows, g0, {d}, p2_indices(d, 0));
    } else {
      SeedTable s1 = seeds_or_default(o.genus == 1 ? o.seeds : "", "p2_genus1.txt");
      Genus1Result g1 = charnum_genus1(g0, s1, dmax);
      if (!g1.consistency.ok())
        throw std::runtime_error("genus-1 seeds fail the consistency check: " + g1.consistency.mismatches.front());
      if (o.genus == 1) {
        for (int d = 1; d <= dmax; ++d) add_char_records(rows, g1.enumerative, {d}, p2_indices(d, 1));
      } else {
        SeedTable virtual2 = seeds_or_default(o.seeds, "p2_genus2_virtual.txt");
        SeriesTable g2 = charnum_genus2(g0, g1.enumerative, virtual2, dmax);
        for (int d = 4; d <= dmax; ++d) add_char_records(rows, g2, {d}, p2_indices(d, 2));
      }
    }
  } else if (o.target == "p1xp1") {
    if (o.genus < 0 || o.genus > 1) throw UsageError("p1xp1 numbers are computed for genus 0 and 1");
    QuadricBound bound = quadric_bound(o.dmax);
    TargetGeometry geom = builtin_geometry("p1xp1");
    GWTable gw = wdvv_solve(geom, default_gw_seeds(geom, bound.box), bound.box);
    SeriesTable g0 = quadric_genus0(gw, bound);
    SeriesTable out = g0;
    if (o.genus == 1) {
      QuadricGenus1Result g1 = quadric_genus1(gw, g0, seeds_or_default(o.seeds, "p1xp1_genus1.txt"), bound);
      if (!g1.consistency.ok())
        throw std::runtime_error("genus-1 seeds fail the consistency check: " + g1.consistency.mismatches.front());
      out = g1.enumerative;
    }
    for (const auto& beta : positive_classes(bound.box)) {
      if (!bound.contains(beta)) continue;
      if (o.genus == 1 && (beta[0] == 0 || beta[1] == 0)) continue;
      add_char_records(rows, out, beta, quadric_indices(beta, o.genus));
    }
  } else {
    throw UsageError("compute supports the targets p2 and p1xp1");
  }
  emit(std::cout, rows, o.format);
  return 0;
}

int run_gw(const Options& o) {
  TargetGeometry geom = resolve_target(o.target);
  CurveClass bound = gw_bound(geom, o.dmax);
  GWTable gw = wdvv_solve(geom, default_gw_seeds(geom, bound), bound);
  std::vector<Json> rows;
  for (const auto& beta : positive_classes(bound))
    for (const auto& counts : gw.core_monomials(beta)) {
      Json r;
      r["d"] = class_json(beta);
      for (std::size_t i = 0; i < counts.size(); ++i) r["T" + std::to_string(gw.core_classes()[i])] = counts[i];
      r["value"] = to_string(gw.core_value(beta, counts));
      rows.push_back(r);
    }
  emit(std::cout, rows, o.format);
  return 0;
}

std::optional<std::string> cache_path(const Options& o, const TargetGeometry& geom) {
  if (o.no_cache) return std::nullopt;
  if (!o.cache.empty()) return o.cache;
  return default_cache_path(geom);
}

// Genus-1 first descendants read off the genus-1 tangency potential.
Rational genus1_descendant(const TargetGeometry& geom, DescendantSpec spec, const std::string& seeds_file) {
  Rational factor = 1;
  while (auto step = reduce_special(geom, spec)) {
    if (step->closed) return factor * step->factor;
    factor *= step->factor;
    if (factor == 0) return 0;
    spec = step->rest;
  }
  for (const auto& ins : spec.insertions)
    if (ins.m > 1) throw UsageError("genus-1 descendants are available for psi powers <= 1 only");
  VarSet vars = tangency_variables(geom);
  std::vector<int> core;
  for (int k = 1; k < geom.rank(); ++k)
    if (geom.codim[k] >= 2) core.push_back(k);
  MultiIndex idx(vars.vars.size(), 0);
  int codims = 0;
  for (const auto& ins : spec.insertions) {
    codims += geom.codim[ins.cls] + ins.m;
    if (ins.m == 1) {
      ++idx[core.size() + ins.cls - 1];
    } else {
      auto it = std::find(core.begin(), core.end(), ins.cls);
      ++idx[it - core.begin()];
    }
  }
  if (codims != vdim(geom, 1, spec.beta, static_cast<int>(spec.insertions.size()))) return 0;
  GWTable gw = wdvv_solve(geom, default_gw_seeds(geom, spec.beta), spec.beta);
  std::string file = seeds_file;
  if (file.empty()) {
    if (geom.name != "p2" && geom.name != "p1xp1")
      throw MissingSeedFile(shipped_seed_path(geom.name + "_genus1.txt"));
    file = shipped_seed_path(geom.name + "_genus1.txt");
  }
  SeriesTable gamma1 = trr_genus1_first(gamma0_pde(gw), read_seed_file(file), geom);
  return factor * gamma1.at(spec.beta, idx);
}

int run_descendant(const Options& o) {
  ParsedSpec parsed;
  try {
    parsed = parse_spec(o.spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string target = parsed.target.empty() ? o.target : parsed.target;
  TargetGeometry geom = resolve_target(target);
  const DescendantSpec& spec = parsed.spec;
  if (spec.beta.size() != geom.divisors.size()) throw UsageError("the class needs one degree per divisor class");
  Rational value;
  if (spec.genus == 1) {
    value = genus1_descendant(geom, spec, o.seeds);
  } else if (spec.genus == 0) {
    if (std::all_of(spec.beta.begin(), spec.beta.end(), [](int x) { return x == 0; }))
      throw UsageError("genus-0 descendants are not defined in degree 0");
    GWTable gw = wdvv_solve(geom, default_gw_seeds(geom, spec.beta), spec.beta);
    DescendantEngine engine(gw);
    auto path = cache_path(o, geom);
    if (path)
      for (const auto& [k, v] : load_cache(*path, geom)) engine.preload(k, v);
    value = engine.genus0(spec);
    if (path) save_cache(*path, geom, engine.memo_snapshot());
  } else {
    throw UsageError("descendants are available in genus 0 and 1");
  }
  if (o.format == "json") {
    Json r;
    r["spec"] = spec.canonical().key();
    r["target"] = geom.name;
    r["value"] = to_string(value);
    std::cout << r.dump() << "\n";
  } else {
    std::cout << to_string(value) << "\n";
  }
  return 0;
}

int run_hurwitz(const Options& o) {
  const int dmax = single_degree(o.dmax);
  if (o.genus_given && (o.genus < 0 || o.genus > 1)) throw UsageError("Hurwitz numbers are computed for genus 0 and 1");
  HurwitzTables h = hurwitz(1, dmax);
  std::vector<Json> rows;
  for (int g = 0; g <= 1; ++g) {
    if (o.genus_given && g != o.genus) continue;
    for (int d = 1; d <= dmax; ++d) {
      Json r;
      r["g"] = g;
      r["d"] = d;
      r["b"] = hurwitz_branch_points(g, d);
      r["value"] = to_string((g == 0 ? h.genus0 : h.genus1).at({d}, {hurwitz_branch_points(g, d)}));
      rows.push_back(r);
    }
  }
  emit(std::cout, rows, o.format);
  return 0;
}

int run_metric(const Options& o) {
  TargetGeometry geom = resolve_target(o.target);
  PolyMatrix up = deformed_metric(geom).upper;
  std::vector<std::string> ys(up.vars.begin() + 1, up.vars.end());
  std::map<std::string, Poly> assign{{"y0", Poly(ys)}};
  for (const auto& y : ys) assign[y] = Poly::variable(ys, y);
  std::cout << "exp(2*y0) * " << substitute_metric(up, assign, ys).str() << "\n";
  return 0;
}

int run_verify(const Options& o) {
  std::vector<std::string> suites;
  if (o.suite == "all")
    suites = verify_suite_names();
  else
    suites = {o.suite};
  bool ok = true;
  for (const auto& name : suites) {
    SuiteResult r;
    try {
      r = run_verify_suite(name);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    std::cout << "[" << r.suite << "] " << (r.passed ? "passed" : "FAILED") << "\n";
    for (const auto& line : r.lines) std::cout << "  " << line << "\n";
    ok = ok && r.passed;
  }
  return ok ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Characteristic numbers and enumerative descendants"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> formats = {"json", "csv", "md"};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--target", o.target, "p2, p1xp1, gr24, p<r>, or a geometry file");
    sub->add_option("--format", o.format, "json, csv or md")->check(CLI::IsMember(formats));
  };

  auto* compute = app.add_subcommand("compute", "characteristic numbers of p2 or p1xp1");
  add_common(compute);
  compute->add_option("--genus", o.genus, "0, 1 or 2 (p2); 0 or 1 (p1xp1)");
  compute->add_option("--dmax", o.dmax, "D; for p1xp1 D (total degree) or D1,D2")->required();
  compute->add_option("--seeds", o.seeds, "genus-1 primary invariants (genus 1) or virtual genus-2 numbers (genus 2)");

  auto* gw = app.add_subcommand("gw", "genus-0 primary invariants from associativity");
  add_common(gw);
  gw->add_option("--dmax", o.dmax, "D or one degree per divisor class")->required();

  auto* desc = app.add_subcommand("descendant", "one enumerative descendant, e.g. 'tau0(T2)^4 tau1(T1) @ g=0 d=2'");
  add_common(desc);
  desc->add_option("spec", o.spec, "descendant spec")->required();
  desc->add_option("--seeds", o.seeds, "genus-1 primary invariants for genus-1 specs");
  desc->add_option("--cache", o.cache, "memo cache file");
  desc->add_flag("--no-cache", o.no_cache, "ignore the cache");

  auto* hur = app.add_subcommand("hurwitz", "simple Hurwitz numbers of P1");
  add_common(hur);
  hur->add_option("--dmax", o.dmax, "largest cover degree")->required();
  auto* hur_genus = hur->add_option("--genus", o.genus, "0 or 1 (default both)");

  auto* met = app.add_subcommand("metric", "deformed metric gamma^{ij}");
  add_common(met);

  auto* ver = app.add_subcommand("verify", "built-in cross-checks");
  ver->add_option("--suite", o.suite, "hurwitz, p2-genus0, p2-genus1, metric, or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  o.genus_given = hur_genus->count() > 0;

  try {
    if (compute->parsed()) return run_compute(o);
    if (gw->parsed()) return run_gw(o);
    if (desc->parsed()) return run_descendant(o);
    if (hur->parsed()) return run_hurwitz(o);
    if (met->parsed()) return run_metric(o);
    if (ver->parsed()) return run_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MissingSeedFile& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSeeds;
  } catch (const MissingSeedEntry& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSeeds;
  } catch (const ScopeError& e) {
    std::cerr << "error: out of enumerative scope: " << e.what() << "\n";
    return kExitSeeds;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
