#include "charnum/hurwitz.hpp"

#include <stdexcept>

namespace charnum {

VarSet hurwitz_variables() { return VarSet{{"t"}, {"v"}, {}}; }

HurwitzTables hurwitz(int gmax, int dmax) {
  if (gmax < 0 || gmax > 1) throw std::invalid_argument("Hurwitz numbers are computed for genus 0 and 1 only");
  if (dmax < 1) throw std::invalid_argument("dmax must be positive");
  HurwitzTables out{SeriesTable(hurwitz_variables(), {dmax}), SeriesTable(hurwitz_variables(), {dmax})};
  SeriesTable& H0 = out.genus0;
  SeriesTable& H1 = out.genus1;
  // H0_vt = v H0_tt H0_tt, i.e. d N0_d(b+1) = b [H0_tt^2](d; b-1)
  H0.set({1}, {0}, 1);
  for (int d = 2; d <= dmax; ++d) {
    SeriesTable Htt = partial_derivative(partial_derivative(H0, "t"), "t");
    SeriesTable sq = series_product_at(Htt, Htt, {d});
    const int b = hurwitz_branch_points(0, d) - 1;
    H0.set({d}, {b + 1}, Rational(b) * sq.at({d}, {b - 1}) / d);
  }
  if (gmax == 0) return out;
  // H1_v = 2v H0_tt H1_t + (1/24) 2v (H0_ttt - H0_tt)
  SeriesTable H0tt = partial_derivative(partial_derivative(H0, "t"), "t");
  for (int d = 1; d <= dmax; ++d) {
    SeriesTable prod = series_product_at(H0tt, partial_derivative(H1, "t"), {d});
    const int b = hurwitz_branch_points(1, d) - 1;
    Rational lin = Rational(Integer(d) * d * d - Integer(d) * d) * H0.at({d}, {b - 1});
    H1.set({d}, {b + 1}, Rational(2 * b) * prod.at({d}, {b - 1}) + frac(2 * b, 24) * lin);
  }
  return out;
}

}  // namespace charnum
