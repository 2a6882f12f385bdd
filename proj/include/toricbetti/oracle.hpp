#ifndef TORICBETTI_ORACLE_HPP
#define TORICBETTI_ORACLE_HPP

#include <map>

#include "toricbetti/polygon.hpp"
#include "toricbetti/table.hpp"

namespace toricbetti {

/// Largest polygon the brute-force reference accepts.
inline constexpr int kOracleMaxPoints = 8;

/// Full table from dense, unsplit Koszul complexes: no bigrading, no point
/// removal, no symmetry, no theorem shortcuts. TooLarge above the cap.
BettiTable oracle_betti(const LatticePolygon& poly, std::uint32_t prime);

/// Per-bidegree dimensions obtained by splitting the dense complex after it
/// is built. Linear strand: K_{ℓ,1}; quadratic strand: the twisted kernel
/// computing c_ℓ. Zero bidegrees are omitted.
std::map<LatticePoint, Count> oracle_bigraded(const LatticePolygon& poly, Strand strand, int ell,
                                              std::uint32_t prime);

}  // namespace toricbetti

#endif  // TORICBETTI_ORACLE_HPP
