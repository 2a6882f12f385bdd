#ifndef TORICBETTI_KOSZUL_HPP
#define TORICBETTI_KOSZUL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "toricbetti/linalg.hpp"
#include "toricbetti/polygon.hpp"

namespace toricbetti {

using Mask = std::uint64_t;

/// Truncated generating function
///   prod_{v in A} (1 + X^v T) * sum_{w in B} X^w   mod T^(p_max+1).
/// The coefficient of X^s T^p is dim (wedge^p V_A (x) V_B) in bidegree s.
class GeneratingFunction {
 public:
  GeneratingFunction(const PointSet& wedge, const PointSet& source, int p_max);

  int p_max() const { return static_cast<int>(layers_.size()) - 1; }
  std::uint64_t coefficient(int p, LatticePoint s) const;
  /// Nonzero coefficients of T^p, ordered by bidegree.
  std::vector<std::pair<LatticePoint, std::uint64_t>> layer(int p) const;
  std::uint64_t layer_total(int p) const;
  std::uint64_t layer_max(int p) const;

 private:
  struct Grid {
    Coord x0 = 0, y0 = 0, w = 0, h = 0;
    std::vector<std::uint64_t> cells;
    std::uint64_t at(LatticePoint s) const {
      if (s.x < x0 || s.y < y0 || s.x >= x0 + w || s.y >= y0 + h) return 0;
      return cells[static_cast<std::size_t>((s.y - y0) * w + (s.x - x0))];
    }
  };
  std::vector<Grid> layers_;
};

/// Enumerates wedge bases: strictly increasing p-subsets of an ordered support
/// A (as bit masks) whose complement to a bidegree lies in a second support.
class WedgeEnumerator {
 public:
  WedgeEnumerator(const PointSet& wedge, int p_max);

  const PointSet& wedge() const { return wedge_; }
  /// Sorted masks of the basis of (wedge^p V_A (x) V_B)_s.
  std::vector<Mask> basis(int p, const PointSet& source, LatticePoint s) const;
  LatticePoint mask_sum(Mask m) const;

 private:
  bool reachable(std::size_t from, int k, LatticePoint t) const;
  void collect(std::size_t from, int k, LatticePoint target, Mask acc, std::vector<Mask>& out) const;

  PointSet wedge_;
  int p_max_;
  Coord minx_ = 0, miny_ = 0, wx_ = 0, wy_ = 0;
  // reach_[from][k]: bitmap of sums of k distinct points taken from wedge_[from..].
  std::vector<std::vector<std::vector<std::uint64_t>>> reach_;
};

enum class ComplexKind {
  primal_b,  // b_ℓ as the middle cohomology of wedge^{ℓ+1}⊗{0} -> wedge^ℓ⊗Δ -> wedge^{ℓ-1}⊗2Δ
  dual_c,    // c_ℓ as the kernel of wedge^{ℓ-1}⊗Δ^(1) -> wedge^{ℓ-2}⊗(2Δ)^(1)
  dual_b,    // b_ℓ via the twisted complex in wedge degree N-3-ℓ
  custom,
};

std::string to_string(ComplexKind k);

struct RemovalPlan {
  enum class Certificate { none, single, opposite_pair, triangle };
  std::vector<LatticePoint> removed;
  Certificate certificate = Certificate::none;

  bool empty() const { return removed.empty(); }
};

/// Concrete three-term complex
///   wedge^{p+1}V_A ⊗ V_prev -> wedge^p V_A ⊗ V_mid -> wedge^{p-1} V_A ⊗ V_next
/// whose middle cohomology, bidegree by bidegree, is the quantity of interest.
struct ComplexSpec {
  ComplexKind kind = ComplexKind::custom;
  int ell = 0;
  PointSet wedge;
  PointSet prev;
  PointSet mid;
  PointSet next;
  int p = 0;
  /// Total degree of the middle term: a symmetry x -> xM + t of Δ acts on
  /// bidegrees as s -> sM + weight * t.
  int weight = 0;
  /// The incoming map is known to be injective, so its rank is the dimension
  /// of its source.
  bool prev_injective = false;
  /// Bidegrees at which the middle term can be nonzero (unreduced region).
  PointSet region;
  RemovalPlan plan;
};

/// Degree-q part of the section module after removing the planned points.
PointSet reduced_supports(const LatticePolygon& poly, const RemovalPlan& plan, bool twisted, Coord q);

ComplexSpec complex_spec(const LatticePolygon& poly, ComplexKind kind, int ell);
ComplexSpec reduced_complex_spec(const LatticePolygon& poly, const RemovalPlan& plan, ComplexKind kind, int ell);

inline const PointSet& enumerate_bidegrees(const ComplexSpec& spec) { return spec.region; }

GeneratingFunction basis_dimension_polynomial(const PointSet& wedge, const PointSet& source, int p_max);

/// Basis of (wedge^p V_A ⊗ V_B)_s as sorted masks over the order of A.
std::vector<Mask> enumerate_basis(const PointSet& wedge, const PointSet& source, int p, LatticePoint s);

/// Matrix of the coboundary from wedge^p V_A ⊗ V_B to wedge^{p-1} V_A ⊗ V_C
/// at bidegree s, with domain and codomain bases given as sorted masks.
IntSparseMatrix coboundary_matrix(const PointSet& wedge, const std::vector<Mask>& domain,
                                  const std::vector<Mask>& codomain, const PointSet& target, LatticePoint s);

/// Dimensions of the three terms and the two coboundary matrices of a spec at
/// one bidegree.
class ComplexBlocks {
 public:
  explicit ComplexBlocks(const ComplexSpec& spec);

  const ComplexSpec& spec() const { return spec_; }
  std::vector<Mask> prev_basis(LatticePoint s) const;
  std::vector<Mask> mid_basis(LatticePoint s) const;
  std::vector<Mask> next_basis(LatticePoint s) const;
  /// wedge^p ⊗ mid -> wedge^{p-1} ⊗ next.
  IntSparseMatrix outgoing(LatticePoint s) const;
  /// wedge^{p+1} ⊗ prev -> wedge^p ⊗ mid.
  IntSparseMatrix incoming(LatticePoint s) const;

 private:
  ComplexSpec spec_;
  WedgeEnumerator enumerator_;
  PointGrid next_grid_;
  PointGrid mid_grid_;
};

bool regular_pair(const LatticePolygon& poly, LatticePoint p, LatticePoint q);
bool regular_triple(const LatticePolygon& poly, LatticePoint p, LatticePoint q, LatticePoint r);

/// Triangle: its vertices. Quadrangle: the opposite pair with the smaller peak
/// block. Otherwise the single point with the smallest peak block.
RemovalPlan choose_removal(const LatticePolygon& poly);
/// Re-checks the certificate of a plan; throws InvalidPlan on failure.
void verify_plan(const LatticePolygon& poly, const RemovalPlan& plan);

/// Predicted largest middle-term block of a spec (from generating functions).
std::uint64_t peak_block(const ComplexSpec& spec);

}  // namespace toricbetti

#endif  // TORICBETTI_KOSZUL_HPP
