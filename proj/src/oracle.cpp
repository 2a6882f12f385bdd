#include "toricbetti/oracle.hpp"

#include <algorithm>
#include <set>

namespace toricbetti {

namespace {

using Combo = std::vector<int>;

std::vector<Combo> combinations(int n, int k) {
  std::vector<Combo> out;
  if (k < 0 || k > n) return out;
  Combo c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

// Basis element of wedge^k V_A (x) V_B: a combination and a point of B.
struct Term {
  Combo wedge;
  LatticePoint cofactor;
  LatticePoint degree;
  bool operator<(const Term& o) const {
    return std::tie(wedge, cofactor) < std::tie(o.wedge, o.cofactor);
  }
};

std::vector<Term> terms(const std::vector<LatticePoint>& a, int k, const std::vector<LatticePoint>& b) {
  std::vector<Term> out;
  for (const auto& c : combinations(static_cast<int>(a.size()), k))
    for (auto w : b) {
      LatticePoint deg = w;
      for (int i : c) deg += a[static_cast<std::size_t>(i)];
      out.push_back({c, w, deg});
    }
  std::sort(out.begin(), out.end());
  return out;
}

using Dense = std::vector<std::vector<std::int64_t>>;

// Dense matrix of the coboundary: column per domain term, row per codomain term.
Dense coboundary(const std::vector<LatticePoint>& a, const std::vector<Term>& domain, const std::vector<Term>& codomain,
                 std::int64_t p) {
  Dense m(codomain.size(), std::vector<std::int64_t>(domain.size(), 0));
  std::map<std::pair<Combo, LatticePoint>, std::size_t> row_of;
  for (std::size_t r = 0; r < codomain.size(); ++r) row_of[{codomain[r].wedge, codomain[r].cofactor}] = r;
  for (std::size_t col = 0; col < domain.size(); ++col) {
    const auto& t = domain[col];
    for (std::size_t pos = 0; pos < t.wedge.size(); ++pos) {
      Combo rest = t.wedge;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
      LatticePoint w = t.cofactor + a[static_cast<std::size_t>(t.wedge[pos])];
      auto it = row_of.find({rest, w});
      if (it == row_of.end()) continue;  // product falls outside the target support
      // Omitting the s-th factor (s counted from 1) carries (-1)^s.
      std::int64_t sign = (pos + 1) % 2 ? -1 : 1;
      m[it->second][col] = ((m[it->second][col] + sign) % p + p) % p;
    }
  }
  return m;
}

std::int64_t power(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  for (b %= p; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

std::size_t dense_rank_mod(Dense m, std::int64_t p) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const std::int64_t inv = power(m[rank][c], p - 2, p);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const std::int64_t f = m[r][c] * inv % p;
      for (std::size_t j = c; j < cols; ++j) m[r][j] = ((m[r][j] - f * m[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

Dense restrict(const Dense& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Dense out(rows.size(), std::vector<std::int64_t>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out[i][j] = m[rows[i]][cols[j]];
  return out;
}

std::vector<LatticePoint> as_vector(const PointSet& s) { return {s.begin(), s.end()}; }

// Three-term complex prev -> mid -> next; records the per-degree split.
struct Slice {
  std::vector<Term> prev, mid, next;
  Dense in, out;
};

Slice build(const std::vector<LatticePoint>& a, int p, const std::vector<LatticePoint>& prev_b,
            const std::vector<LatticePoint>& mid_b, const std::vector<LatticePoint>& next_b, std::int64_t prime) {
  Slice s;
  s.prev = terms(a, p + 1, prev_b);
  s.mid = terms(a, p, mid_b);
  s.next = terms(a, p - 1, next_b);
  s.in = coboundary(a, s.prev, s.mid, prime);
  s.out = coboundary(a, s.mid, s.next, prime);
  return s;
}

void require_small(const LatticePolygon& poly) {
  if (poly.dimension() != 2) throw DimensionError("polygon must be two-dimensional");
  if (poly.n_points() > kOracleMaxPoints) throw TooLarge("brute-force reference is capped at 8 lattice points");
}

Slice slice_for(const LatticePolygon& poly, Strand strand, int ell, std::int64_t prime) {
  const auto a = as_vector(poly.points());
  if (strand == Strand::linear)
    return build(a, ell, {LatticePoint{0, 0}}, a, as_vector(dilate(poly, 2).points()), prime);
  return build(a, ell - 1, {}, as_vector(twisted_points(poly, 1)), as_vector(twisted_points(poly, 2)), prime);
}

bool composes_to_zero(const Dense& out, const Dense& in, std::int64_t p) {
  if (out.empty() || in.empty() || in[0].empty()) return true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < in[0].size(); ++j) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < in.size(); ++k) s = (s + out[i][k] * in[k][j]) % p;
      if (s) return false;
    }
  return true;
}

}  // namespace

BettiTable oracle_betti(const LatticePolygon& poly, std::uint32_t prime) {
  require_small(poly);
  const std::int64_t p = prime;
  const int n = static_cast<int>(poly.n_points());
  BettiTable t(n, prime);
  for (int ell = 1; ell <= n - 3; ++ell) {
    auto lin = slice_for(poly, Strand::linear, ell, p);
    if (!composes_to_zero(lin.out, lin.in, p)) throw Error("reference complex is not a complex");
    const std::size_t rank_out = dense_rank_mod(lin.out, p);
    const std::size_t rank_in = dense_rank_mod(lin.in, p);
    // The first map of the untwisted complex is injective.
    if (rank_in != lin.prev.size()) throw Error("reference: first map is not injective");
    t.set_b(ell, static_cast<Count>(lin.mid.size() - rank_out - rank_in), Provenance::computed);

    auto quad = slice_for(poly, Strand::quadratic, ell, p);
    if (!composes_to_zero(quad.out, quad.in, p)) throw Error("reference complex is not a complex");
    t.set_c(ell, static_cast<Count>(quad.mid.size() - dense_rank_mod(quad.out, p)), Provenance::computed);
  }
  return t;
}

std::map<LatticePoint, Count> oracle_bigraded(const LatticePolygon& poly, Strand strand, int ell,
                                              std::uint32_t prime) {
  require_small(poly);
  const int n = static_cast<int>(poly.n_points());
  if (ell < 1 || ell > n - 3) throw RangeError("index outside 1..N-3");
  const std::int64_t p = prime;
  auto s = slice_for(poly, strand, ell, p);
  std::set<LatticePoint> degrees;
  for (const auto& t : s.mid) degrees.insert(t.degree);
  auto select = [](const std::vector<Term>& ts, LatticePoint d) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (ts[i].degree == d) idx.push_back(i);
    return idx;
  };
  std::map<LatticePoint, Count> out;
  for (auto d : degrees) {
    auto prev = select(s.prev, d), mid = select(s.mid, d), next = select(s.next, d);
    std::size_t r_out = next.empty() ? 0 : dense_rank_mod(restrict(s.out, next, mid), p);
    std::size_t r_in = prev.empty() ? 0 : dense_rank_mod(restrict(s.in, mid, prev), p);
    auto v = static_cast<Count>(mid.size() - r_out - r_in);
    if (v) out[d] = v;
  }
  return out;
}

}  // namespace toricbetti
