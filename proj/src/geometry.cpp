#include "charnum/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>

namespace charnum {

Vec basis_vector(int rank, int i) {
  Vec v(rank, Rational(0));
  v[i] = 1;
  return v;
}

const Vec& TargetGeometry::cup_product(int i, int j) const {
  if (i < 0 || j < 0 || i >= rank() || j >= rank())
    throw std::out_of_range("basis index out of range: " + std::to_string(i) + "," + std::to_string(j));
  return cup[i][j];
}

Vec TargetGeometry::cup_vec(const Vec& a, const Vec& b) const {
  Vec out(rank(), Rational(0));
  for (int i = 0; i < rank(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < rank(); ++j) {
      if (b[j] == 0) continue;
      Rational w = a[i] * b[j];
      for (int k = 0; k < rank(); ++k)
        if (cup[i][j][k] != 0) out[k] += w * cup[i][j][k];
    }
  }
  return out;
}

Rational TargetGeometry::integral(const Vec& a) const {
  Rational s = 0;
  for (int k = 0; k < rank(); ++k) s += a[k] * pairing[0][k];
  return s;
}

Rational TargetGeometry::triple(int i, int j, int l) const {
  Rational s = 0;
  for (int k = 0; k < rank(); ++k) s += cup[i][j][k] * pairing[k][l];
  return s;
}

int TargetGeometry::divisor_slot(int basis_index) const {
  auto it = std::find(divisors.begin(), divisors.end(), basis_index);
  return it == divisors.end() ? -1 : static_cast<int>(it - divisors.begin());
}

int TargetGeometry::c1_degree(const CurveClass& beta) const {
  Rational s = 0;
  for (std::size_t k = 0; k < divisors.size(); ++k) s += c1[k] * beta[k];
  if (!is_integer(s)) throw GeometryError("non-integral first Chern degree");
  return static_cast<int>(s.get_num().get_si());
}

Rational TargetGeometry::divisor_degree(int basis_index, const CurveClass& beta) const {
  int slot = divisor_slot(basis_index);
  return slot < 0 ? Rational(0) : Rational(beta[slot]);
}

Rational TargetGeometry::divisor_chern_integral(int basis_index) const {
  return integral(cup_vec(basis_vector(rank(), basis_index), chern));
}

std::string TargetGeometry::fingerprint() const {
  std::ostringstream os;
  os << name << "|" << dim << "|";
  for (int c : codim) os << c << ",";
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) {
      os << to_string(pairing[i][j]) << ",";
      for (int k = 0; k < rank(); ++k)
        if (cup[i][j][k] != 0) os << i << "." << j << "." << k << "=" << to_string(cup[i][j][k]) << ";";
    }
  for (int d : divisors) os << d << ",";
  for (const auto& c : c1) os << to_string(c) << ",";
  for (const auto& c : chern) os << to_string(c) << ",";
  for (const auto& perm : symmetries) {
    os << "sym";
    for (int i : perm) os << i << ",";
  }
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (unsigned char ch : os.str()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  std::ostringstream hex;
  hex << std::hex << h;
  return hex.str();
}

int vdim(const TargetGeometry& geom, int genus, const CurveClass& beta, int marks) {
  return (geom.dim - 3) * (1 - genus) + geom.c1_degree(beta) + marks;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep))
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

int to_int(const std::string& s) {
  Rational q = parse_rational(s);
  if (!is_integer(q)) throw GeometryError("expected integer, got " + s);
  return static_cast<int>(q.get_num().get_si());
}

// Exact Gauss-Jordan inverse; returns false when singular.
bool invert(const Mat& m, Mat& inv) {
  int n = static_cast<int>(m.size());
  Mat a = m;
  inv.assign(n, Vec(n, Rational(0)));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return false;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rational p = a[col][col];
    for (int c = 0; c < n; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (int c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return true;
}

std::string idx(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

void validate(TargetGeometry& g) {
  const int n = g.rank();
  if (n == 0) throw GeometryError("empty basis");
  if (static_cast<int>(g.codim.size()) != n) throw GeometryError("codim list length differs from basis");
  if (g.codim[0] != 0) throw GeometryError("T0 must be the fundamental class (codim 0)");
  if (static_cast<int>(g.pairing.size()) != n) throw GeometryError("pairing must be a full " + std::to_string(n) + "x" + std::to_string(n) + " table");
  for (const auto& row : g.pairing)
    if (static_cast<int>(row.size()) != n) throw GeometryError("pairing row has wrong length");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.pairing[i][j] != g.pairing[j][i]) throw GeometryError("pairing not symmetric at " + idx(i, j));
  if (!invert(g.pairing, g.inverse_pairing)) throw GeometryError("pairing is singular");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.pairing[i][j] != 0 && g.codim[i] + g.codim[j] != g.dim)
        throw GeometryError("pairing entry " + idx(i, j) + " violates degree count");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (g.cup[i][j][k] != 0 && g.codim[k] != g.codim[i] + g.codim[j])
          throw GeometryError("cup " + idx(i, j) + " has a component in T" + std::to_string(k) + " of the wrong degree");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        Vec left = g.cup_vec(g.cup[i][j], basis_vector(n, l));
        Vec right = g.cup_vec(basis_vector(n, i), g.cup[j][l]);
        if (left != right)
          throw GeometryError("cup not associative at (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(l) + ")");
      }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.integral(g.cup[i][j]) != g.pairing[i][j])
        throw GeometryError("pairing entry " + idx(i, j) + " disagrees with the cup product");
  for (int d : g.divisors)
    if (d <= 0 || d >= n || g.codim[d] != 1) throw GeometryError("divisor index " + std::to_string(d) + " is not of codim 1");
  for (int i = 0; i < n; ++i)
    if (g.codim[i] == 1 && g.divisor_slot(i) < 0) throw GeometryError("codim-1 class T" + std::to_string(i) + " missing from divisors");
  if (g.c1.size() != g.divisors.size()) throw GeometryError("c1 must have one entry per divisor");
  if (static_cast<int>(g.chern.size()) != n) throw GeometryError("chern must have one entry per basis element");
  if (g.chern[0] != 1) throw GeometryError("total Chern class must start with 1");
  for (int i = 0; i < n; ++i)
    if (g.codim[i] == 1 && g.chern[i] != g.c1[g.divisor_slot(i)])
      throw GeometryError("c1 disagrees with the degree-one part of chern");
  if (g.integral(g.chern) != g.euler) throw GeometryError("euler disagrees with the top Chern class");
  for (const auto& perm : g.symmetries) {
    if (static_cast<int>(perm.size()) != n) throw GeometryError("symmetry must permute the whole basis");
    std::vector<bool> hit(n, false);
    for (int i : perm) {
      if (i < 0 || i >= n || hit[i]) throw GeometryError("symmetry is not a permutation");
      hit[i] = true;
    }
    for (int i = 0; i < n; ++i) {
      if (g.codim[perm[i]] != g.codim[i]) throw GeometryError("symmetry moves T" + std::to_string(i) + " to another degree");
      if (g.codim[i] == 1 && perm[i] != i) throw GeometryError("symmetry must fix divisor T" + std::to_string(i));
      if (g.chern[perm[i]] != g.chern[i]) throw GeometryError("symmetry does not preserve chern at T" + std::to_string(i));
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (g.pairing[perm[i]][perm[j]] != g.pairing[i][j]) throw GeometryError("symmetry does not preserve the pairing at " + idx(i, j));
        for (int k = 0; k < n; ++k)
          if (g.cup[perm[i]][perm[j]][perm[k]] != g.cup[i][j][k]) throw GeometryError("symmetry does not preserve the cup at " + idx(i, j));
      }
  }
}

}  // namespace

TargetGeometry load_geometry(const std::string& config) {
  TargetGeometry g;
  std::map<std::string, std::string> kv;
  std::vector<std::string> pairing_rows, cup_rows;
  std::string section;
  std::istringstream is(config);
  std::string raw;
  while (std::getline(is, raw)) {
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    if (trim(raw).empty()) continue;
    bool indented = raw[0] == ' ' || raw[0] == '\t';
    std::string line = trim(raw);
    if (indented && !section.empty()) {
      (section == "pairing" ? pairing_rows : cup_rows).push_back(line);
      continue;
    }
    section.clear();
    if (line.back() == ':') {
      section = trim(line.substr(0, line.size() - 1));
      if (section != "pairing" && section != "cup") throw GeometryError("unknown table: " + section);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw GeometryError("expected 'key = value': " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  for (const char* key : {"name", "dim", "basis", "codim", "divisors", "c1", "chern", "euler"})
    if (!kv.count(key)) throw GeometryError(std::string("missing key: ") + key);
  try {
    g.name = kv["name"];
    g.dim = to_int(kv["dim"]);
    g.labels = words(kv["basis"]);
    for (const auto& w : words(kv["codim"])) g.codim.push_back(to_int(w));
    for (const auto& w : words(kv["divisors"])) g.divisors.push_back(to_int(w));
    for (const auto& w : words(kv["c1"])) g.c1.push_back(parse_rational(w));
    for (const auto& w : words(kv["chern"])) g.chern.push_back(parse_rational(w));
    g.euler = parse_rational(kv["euler"]);
    if (kv.count("symmetries"))
      for (const auto& perm : split_list(kv["symmetries"], ';')) {
        std::vector<int> p;
        for (const auto& w : words(perm)) p.push_back(to_int(w));
        g.symmetries.push_back(p);
      }
    const int n = g.rank();
    for (const auto& row : pairing_rows) {
      Vec r;
      for (const auto& w : words(row)) r.push_back(parse_rational(w));
      g.pairing.push_back(r);
    }
    g.cup.assign(n, std::vector<Vec>(n, Vec(n, Rational(0))));
    std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
    for (int j = 0; j < n; ++j) {
      g.cup[0][j] = basis_vector(n, j);
      g.cup[j][0] = basis_vector(n, j);
      given[0][j] = given[j][0] = true;
    }
    for (const auto& row : cup_rows) {
      // "i j : k=c k=c ..."  (empty right side means zero)
      auto colon = row.find(':');
      if (colon == std::string::npos) throw GeometryError("cup row needs ':' : " + row);
      auto lhs = words(row.substr(0, colon));
      if (lhs.size() != 2) throw GeometryError("cup row needs two indices: " + row);
      int i = to_int(lhs[0]), j = to_int(lhs[1]);
      if (i < 0 || j < 0 || i >= n || j >= n) throw GeometryError("cup index out of range: " + row);
      Vec v(n, Rational(0));
      for (const auto& term : words(row.substr(colon + 1))) {
        auto e = term.find('=');
        if (e == std::string::npos) throw GeometryError("cup term needs k=c: " + term);
        int k = to_int(term.substr(0, e));
        if (k < 0 || k >= n) throw GeometryError("cup target out of range: " + term);
        v[k] += parse_rational(term.substr(e + 1));
      }
      for (auto [a, b] : {std::pair{i, j}, std::pair{j, i}}) {
        if (given[a][b] && g.cup[a][b] != v) throw GeometryError("cup not commutative at " + idx(a, b));
        g.cup[a][b] = v;
        given[a][b] = true;
      }
    }
  } catch (const std::invalid_argument& e) {
    throw GeometryError(std::string("malformed geometry config: ") + e.what());
  }
  validate(g);
  return g;
}

namespace {

std::string projective_config(int r) {
  std::ostringstream os;
  os << "name = p" << r << "\ndim = " << r << "\nbasis =";
  for (int i = 0; i <= r; ++i) os << " h^" << i;
  os << "\ncodim =";
  for (int i = 0; i <= r; ++i) os << " " << i;
  os << "\ndivisors = 1\nc1 = " << r + 1 << "\nchern =";
  for (int i = 0; i <= r; ++i) os << " " << binomial(r + 1, i).get_str();
  os << "\neuler = " << r + 1 << "\npairing:\n";
  for (int i = 0; i <= r; ++i) {
    os << " ";
    for (int j = 0; j <= r; ++j) os << " " << (i + j == r ? 1 : 0);
    os << "\n";
  }
  os << "cup:\n";
  for (int i = 1; i <= r; ++i)
    for (int j = i; j <= r; ++j) {
      os << "  " << i << " " << j << " :";
      if (i + j <= r) os << " " << i + j << "=1";
      os << "\n";
    }
  return os.str();
}

const char* kQuadric = R"(name = p1xp1
dim = 2
basis = 1 H1 H2 pt
codim = 0 1 1 2
divisors = 1 2
c1 = 2 2
chern = 1 2 2 4
euler = 4
pairing:
  0 0 0 1
  0 0 1 0
  0 1 0 0
  1 0 0 0
cup:
  1 1 :
  1 2 : 3=1
  2 2 :
)";

// Schubert basis 1, s1, s2, s11, s21, s22; products checked against a Schur-polynomial oracle in the tests.
const char* kGrassmannian = R"(name = gr24
dim = 4
basis = 1 s1 s2 s11 s21 s22
codim = 0 1 2 2 3 4
divisors = 1
c1 = 4
chern = 1 4 7 7 12 6
euler = 6
symmetries = 0 1 3 2 4 5
pairing:
  0 0 0 0 0 1
  0 0 0 0 1 0
  0 0 1 0 0 0
  0 0 0 1 0 0
  0 1 0 0 0 0
  1 0 0 0 0 0
cup:
  1 1 : 2=1 3=1
  1 2 : 4=1
  1 3 : 4=1
  1 4 : 5=1
  2 2 : 5=1
  3 3 : 5=1
  2 3 :
)";

}  // namespace

std::string builtin_config(const std::string& name) {
  if (name == "p1xp1") return kQuadric;
  if (name == "gr24") return kGrassmannian;
  if (name.size() >= 2 && name[0] == 'p' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
    int r = std::stoi(name.substr(1));
    if (r >= 1 && r <= 12) return projective_config(r);
  }
  throw GeometryError("unknown built-in target: " + name);
}

TargetGeometry builtin_geometry(const std::string& name) { return load_geometry(builtin_config(name)); }

}  // namespace charnum
