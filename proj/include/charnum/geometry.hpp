#pragma once

#include "charnum/rational.hpp"
#include "charnum/series.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace charnum {

using Vec = std::vector<Rational>;
using Mat = std::vector<std::vector<Rational>>;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cohomology ring of a target: basis T_0..T_r, cup structure constants, pairing, divisors,
// first Chern class and total Chern class.
struct TargetGeometry {
  std::string name;
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<int> codim;
  std::vector<std::vector<Vec>> cup;  // cup[i][j][k]
  Mat pairing;
  Mat inverse_pairing;
  std::vector<int> divisors;  // basis indices spanning H^2; curve classes are coordinates against these
  Vec c1;                     // first Chern class in divisor coordinates
  Vec chern;                  // total Chern class in basis coordinates
  Rational euler;
  // Basis permutations induced by automorphisms of X that fix every divisor class, e.g. the
  // duality of Gr(2,4) swapping s2 and s11. Invariants are constant on their orbits.
  std::vector<std::vector<int>> symmetries;

  int rank() const { return static_cast<int>(labels.size()); }
  const Vec& cup_product(int i, int j) const;
  Vec cup_vec(const Vec& a, const Vec& b) const;
  Rational integral(const Vec& a) const;  // coefficient against the point class, via the pairing with T_0
  Rational triple(int i, int j, int l) const;
  int divisor_slot(int basis_index) const;  // -1 when not a divisor
  int c1_degree(const CurveClass& beta) const;
  Rational divisor_degree(int basis_index, const CurveClass& beta) const;
  Rational divisor_chern_integral(int basis_index) const;  // integral of D cup c(T_X)
  std::string fingerprint() const;
};

int vdim(const TargetGeometry& geom, int genus, const CurveClass& beta, int marks);

// Structured text: "key = value" lines and indented tables under "pairing:" and "cup:".
TargetGeometry load_geometry(const std::string& config);

// "p2", "p1xp1", "gr24", or "p<r>" for projective space of dimension r >= 1.
TargetGeometry builtin_geometry(const std::string& name);
std::string builtin_config(const std::string& name);

Vec basis_vector(int rank, int i);

}  // namespace charnum
