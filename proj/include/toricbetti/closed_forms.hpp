#ifndef TORICBETTI_CLOSED_FORMS_HPP
#define TORICBETTI_CLOSED_FORMS_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "toricbetti/polygon.hpp"
#include "toricbetti/table.hpp"

namespace toricbetti {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(std::int64_t n, std::int64_t k);
/// Narrowing with a range check; throws RangeError when the value does not fit.
Count to_count(const BigInt& v);

/// A closed-form or conjectured value for one table entry.
struct EntryPrediction {
  int index = 0;
  Strand strand = Strand::linear;
  std::optional<Count> value;
  std::string source;
  /// Conjectural predictions are never written into a table as facts.
  bool conjectural = false;
};

/// b_ℓ − c_{N−1−ℓ} for 1 <= ℓ <= N−2.
Count antidiagonal_difference(const LatticePolygon& poly, int ell);
/// The same difference restricted to one bidegree, as an alternating sum of
/// generating-function coefficients.
Count antidiagonal_difference_bigraded(const LatticePolygon& poly, int ell, LatticePoint s);

struct HeringSchenck {
  /// Indices ℓ in [1, N−3] with c_ℓ = 0.
  std::set<int> zero;
  /// N − |∂Δ ∩ Z²|: the largest ℓ with c_ℓ nonzero (the first nonzero entry
  /// of the quadratic row as the table is printed).
  int first_nonzero = 0;
};
HeringSchenck hering_schenck_zero_region(const LatticePolygon& poly);

/// b₁, b₂, b_{N−3}, c₁, c₂, c_{N−3} (entries outside 1..N−3 are omitted).
std::vector<EntryPrediction> six_easy_entries(const LatticePolygon& poly);

/// 2·B_Δ, where b_{N−4} = (N−4)·B_Δ.
Count twice_bn4_factor(const LatticePolygon& poly);
EntryPrediction entry_bN4(const LatticePolygon& poly);
EntryPrediction entry_c3(const LatticePolygon& poly);

/// Full table for polygons with no interior points.
BettiTable eagon_northcott_table(const LatticePolygon& poly);

Count scroll_strand_lower_bound(const LatticePolygon& poly);
Count kp1_predicted_first_zero(const LatticePolygon& poly);

struct VeronesePrediction {
  int b_index = 0;
  Count b_last = 0;
  int c_index = 0;       // 0 when d < 3
  Count c_first = 0;
};
VeronesePrediction veronese_predictions(Coord d);

Count cg_lower_bound(const LatticePolygon& poly);

bool minimal_degree_predicate(const LatticePolygon& poly);

/// All closed-form entries and predictions for a polygon (used by `predict`).
std::vector<EntryPrediction> all_predictions(const LatticePolygon& poly);

}  // namespace toricbetti

#endif  // TORICBETTI_CLOSED_FORMS_HPP
