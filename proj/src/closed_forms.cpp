#include "toricbetti/closed_forms.hpp"

#include "toricbetti/koszul.hpp"

namespace toricbetti {

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Count to_count(const BigInt& v) {
  if (v > std::numeric_limits<Count>::max() || v < std::numeric_limits<Count>::min())
    throw RangeError("value exceeds 64-bit range");
  return static_cast<Count>(v);
}

namespace {

int point_count(const LatticePolygon& poly) { return static_cast<int>(poly.n_points()); }

EntryPrediction entry(Strand s, int index, BigInt v, std::string source) {
  return EntryPrediction{index, s, to_count(v), std::move(source), false};
}

bool is_upsilon2(const LatticePolygon& poly) { return equivalence(poly, model_upsilon(2)).has_value(); }

}  // namespace

Count antidiagonal_difference(const LatticePolygon& poly, int ell) {
  const int n = point_count(poly);
  if (ell < 1 || ell > n - 2) throw RangeError("index outside 1..N-2");
  return to_count(ell * binomial(n - 1, ell + 1) - binomial(n - 3, ell - 1) * poly.area2());
}

Count antidiagonal_difference_bigraded(const LatticePolygon& poly, int ell, LatticePoint s) {
  const int n = point_count(poly);
  if (ell < 1 || ell > n - 2) throw RangeError("index outside 1..N-2");
  const auto& a = poly.points();
  Count sum = 0;
  for (int j = 0; j <= ell + 1; ++j) {
    const int p = ell + 1 - j;
    PointSet source = j == 0 ? PointSet{LatticePoint{0, 0}} : dilate(poly, j).points();
    auto dim = static_cast<Count>(GeneratingFunction(a, source, p).coefficient(p, s));
    sum += (j % 2 ? 1 : -1) * dim;
  }
  return sum;
}

HeringSchenck hering_schenck_zero_region(const LatticePolygon& poly) {
  if (poly.interior_count() == 0) throw EmptyInterior("polygon has no interior lattice points");
  const int n = point_count(poly);
  const int boundary = static_cast<int>(poly.boundary_count());
  HeringSchenck hs;
  hs.first_nonzero = n - boundary;
  for (int ell = std::max(1, n + 1 - boundary); ell <= n - 3; ++ell) hs.zero.insert(ell);
  return hs;
}

std::vector<EntryPrediction> six_easy_entries(const LatticePolygon& poly) {
  const int n = point_count(poly);
  const Count interior = poly.interior_count();
  const Coord area2 = poly.area2();
  std::vector<EntryPrediction> out;
  if (n < 4) return out;
  const int last = n - 3;

  BigInt c_last = 0;
  if (poly.boundary_count() == 3) c_last = interior_hull(poly).dimension() == 2 ? BigInt(1) : BigInt(n - 3);

  out.push_back(entry(Strand::linear, 1, binomial(n - 1, 2) - area2, "b1"));
  if (last >= 2) out.push_back(entry(Strand::linear, 2, 2 * binomial(n - 1, 3) - BigInt(n - 3) * area2 + c_last, "b2"));
  out.push_back(entry(Strand::linear, last, interior > 0 ? BigInt(0) : BigInt(n - 3), "b_{N-3}"));
  out.push_back(entry(Strand::quadratic, 1, interior, "c1"));
  if (last >= 2) out.push_back(entry(Strand::quadratic, 2, interior > 0 ? BigInt(n - 3) * (interior - 1) : BigInt(0), "c2"));
  out.push_back(entry(Strand::quadratic, last, c_last, "c_{N-3}"));
  return out;
}

Count twice_bn4_factor(const LatticePolygon& poly) {
  const int n = point_count(poly);
  if (n < 4) throw RangeError("needs at least four lattice points");
  switch (interior_hull(poly).dimension()) {
    case 2:
      return is_upsilon2(poly) ? 2 : 0;
    case 1:
      return 2;
    case 0:
      return n - 1;
    default:
      return 2 * (n - 2);
  }
}

EntryPrediction entry_bN4(const LatticePolygon& poly) {
  const int n = point_count(poly);
  const Count twice = twice_bn4_factor(poly);
  return entry(Strand::linear, n - 4, BigInt(n - 4) * twice / 2, "b_{N-4}");
}

EntryPrediction entry_c3(const LatticePolygon& poly) {
  const int n = point_count(poly);
  const Count twice = twice_bn4_factor(poly);
  BigInt v = BigInt(n - 4) * (BigInt(n - 3) * poly.area2() - BigInt(n - 1) * (n - 2) + twice) / 2;
  return entry(Strand::quadratic, 3, v, "c3");
}

BettiTable eagon_northcott_table(const LatticePolygon& poly) {
  if (poly.interior_count() != 0) throw NonEmptyInterior("polygon has interior lattice points");
  const int n = point_count(poly);
  BettiTable t(n);
  for (int p = 1; p <= t.length(); ++p) {
    t.set_b(p, to_count(p * binomial(n - 2, p + 1)), Provenance::eagon_northcott);
    t.set_c(p, 0, Provenance::eagon_northcott);
  }
  return t;
}

Count scroll_strand_lower_bound(const LatticePolygon& poly) {
  auto cls = classify(poly);
  if (cls.pathological()) throw PathologicalPolygon("linear strand is identically zero");
  const Count lw = lattice_width(poly).width;
  return poly.n_points() - lw - (cls.exceptional() ? 1 : 2);
}

Count kp1_predicted_first_zero(const LatticePolygon& poly) {
  auto cls = classify(poly);
  if (cls.pathological()) throw PathologicalPolygon("linear strand is identically zero");
  const Count lw = lattice_width(poly).width;
  return lw + (cls.exceptional() ? 1 : 2);
}

VeronesePrediction veronese_predictions(Coord d) {
  if (d < 2) throw RangeError("degree must be at least 2");
  VeronesePrediction v;
  v.b_index = static_cast<int>(d * (d + 1) / 2);
  v.b_last = d * d * d * (d * d - 1) / 8;
  if (d >= 3) {
    const Coord g = (d - 1) * (d - 2) / 2;
    v.c_index = static_cast<int>(g);
    v.c_first = to_count(binomial(g + 8, 9));
  }
  return v;
}

Count cg_lower_bound(const LatticePolygon& poly) {
  if (poly.interior_count() == 0) throw EmptyInterior("polygon has no interior lattice points");
  const Count g = poly.interior_count();
  const Count t = translate_count(interior_hull(poly), poly);
  return to_count(binomial(g - 1 + t, g - 1));
}

bool minimal_degree_predicate(const LatticePolygon& poly) { return poly.area2() == poly.n_points() - 2; }

std::vector<EntryPrediction> all_predictions(const LatticePolygon& poly) {
  const int n = point_count(poly);
  std::vector<EntryPrediction> out;
  if (n < 4) return out;
  if (poly.interior_count() == 0) {
    auto t = eagon_northcott_table(poly);
    for (int p = 1; p <= t.length(); ++p) {
      out.push_back({p, Strand::linear, t.b_at(p), "eagon-northcott", false});
      out.push_back({p, Strand::quadratic, 0, "eagon-northcott", false});
    }
    return out;
  }
  out = six_easy_entries(poly);
  if (n >= 5) out.push_back(entry_bN4(poly));
  if (n >= 6) out.push_back(entry_c3(poly));
  auto hs = hering_schenck_zero_region(poly);
  for (int ell : hs.zero) out.push_back({ell, Strand::quadratic, 0, "hering-schenck", false});
  auto cls = classify(poly);
  if (!cls.pathological()) {
    // Conjectured: b_{N-ℓ} vanishes for 3 <= ℓ < predicted first nonzero.
    const Count first = kp1_predicted_first_zero(poly);
    for (Count ell = 3; ell < first; ++ell)
      if (n - ell >= 1) out.push_back({static_cast<int>(n - ell), Strand::linear, 0, "kp1-conjecture", true});
  }
  if (cls.tag == PolygonClass::Tag::SigmaMultiple || cls.tag == PolygonClass::Tag::TwoSigma) {
    auto v = veronese_predictions(cls.sigma_degree());
    out.push_back({v.b_index, Strand::linear, v.b_last, "veronese-conjecture", true});
    if (v.c_index > 0) out.push_back({v.c_index, Strand::quadratic, v.c_first, "veronese-conjecture", true});
  }
  return out;
}

}  // namespace toricbetti
