#ifndef TORICBETTI_TABLE_HPP
#define TORICBETTI_TABLE_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "toricbetti/point.hpp"

namespace toricbetti {

using Count = std::int64_t;

enum class Strand { linear, quadratic };

/// How an entry of a BettiTable was obtained.
enum class Provenance {
  pending,
  computed,
  crossfilled,      // from the other entry on its antidiagonal
  zero_by_shape,    // outside the nonzero shape of the table
  zero_by_hs,       // quadratic entry beyond the boundary-count threshold
  zero_by_bn3,      // last linear entry when the interior is nonempty
  eagon_northcott,  // empty interior: closed-form table
};

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);
std::string to_string(Strand s);

/// Bigraded contribution. For the linear strand the key is K_{ℓ,1} at (a,b);
/// for the quadratic strand it is the twisted dual piece that computes c_ℓ,
/// graded by the bidegree of the kernel elements.
struct BigradedKey {
  Strand strand;
  int ell;
  LatticePoint bidegree;
  friend auto operator<=>(const BigradedKey&, const BigradedKey&) = default;
};

/// The linear (b) and quadratic (c) strands of a graded Betti table.
/// b[i] is b_{i+1}, c[i] is c_{i+1}; both have length n - 3.
struct BettiTable {
  int n = 0;
  std::vector<Count> b;
  std::vector<Count> c;
  std::vector<Provenance> b_prov;
  std::vector<Provenance> c_prov;
  std::uint32_t prime = 0;  // 0: exact (no modular computation involved)
  std::map<BigradedKey, Count> bigraded;

  BettiTable() = default;
  explicit BettiTable(int n_points, std::uint32_t p = 0);

  int length() const { return n > 3 ? n - 3 : 0; }
  /// Entry or 0 outside 1..n-3.
  Count b_at(int ell) const;
  Count c_at(int ell) const;
  Provenance b_provenance(int ell) const { return b_prov.at(static_cast<std::size_t>(ell - 1)); }
  Provenance c_provenance(int ell) const { return c_prov.at(static_cast<std::size_t>(ell - 1)); }
  void set_b(int ell, Count v, Provenance p);
  void set_c(int ell, Count v, Provenance p);

  /// True when the entry is a modular computation that could in principle be
  /// larger than its characteristic-zero value, i.e. not certified.
  bool b_starred(int ell) const;
  bool c_starred(int ell) const;

  /// Entry-wise equality of the strands (provenance and bigraded data ignored).
  bool same_values(const BettiTable& other) const { return n == other.n && b == other.b && c == other.c; }
};

}  // namespace toricbetti

#endif  // TORICBETTI_TABLE_HPP
