#ifndef TORICBETTI_POLYGON_HPP
#define TORICBETTI_POLYGON_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toricbetti/errors.hpp"
#include "toricbetti/point.hpp"

namespace toricbetti {

/// Convex hull of a finite lattice point set together with its lattice points.
/// Dimension is -1 (empty), 0 (point), 1 (segment) or 2. Two-dimensional
/// hulls store their vertices counterclockwise with no three collinear.
class LatticePolygon {
 public:
  LatticePolygon() = default;

  /// Hull of arbitrary points, any dimension.
  static LatticePolygon hull_of(std::span<const LatticePoint> pts);

  int dimension() const { return dim_; }
  bool empty() const { return dim_ < 0; }
  /// True for hulls that are not two-dimensional (e.g. the zeroth dilate).
  bool degenerate() const { return dim_ < 2; }

  const std::vector<LatticePoint>& vertices() const { return vertices_; }
  const PointSet& points() const { return points_; }

  Coord n_points() const { return static_cast<Coord>(points_.size()); }
  Coord boundary_count() const { return boundary_count_; }
  Coord area2() const { return area2_; }
  Coord interior_count() const { return n_points() - boundary_count_; }

  bool contains(LatticePoint p) const;
  bool is_vertex(LatticePoint p) const;

  friend bool operator==(const LatticePolygon& a, const LatticePolygon& b) {
    return a.vertices_ == b.vertices_ && a.dim_ == b.dim_;
  }

 private:
  void populate();

  int dim_ = -1;
  std::vector<LatticePoint> vertices_;
  PointSet points_;
  Coord boundary_count_ = 0;
  Coord area2_ = 0;
};

/// Two-dimensional hull of the given points; DimensionError otherwise.
LatticePolygon from_vertices(std::span<const LatticePoint> pts);
inline LatticePolygon from_vertices(std::initializer_list<LatticePoint> pts) {
  return from_vertices(std::span<const LatticePoint>(pts.begin(), pts.size()));
}

inline const PointSet& lattice_points(const LatticePolygon& poly) { return poly.points(); }

/// Hull of the strictly interior lattice points; its dimension may be -1..2.
LatticePolygon interior_hull(const LatticePolygon& poly);

/// qΔ. For q = 0 the result is the degenerate single point (0,0).
LatticePolygon dilate(const LatticePolygon& poly, Coord q);
LatticePolygon minkowski_sum(const LatticePolygon& a, const LatticePolygon& b);

/// Lattice points of the interior hull of qΔ (empty for q = 0).
PointSet twisted_points(const LatticePolygon& poly, Coord q);

Coord ehrhart_count(const LatticePolygon& poly, Coord q);

struct LatticeWidth {
  Coord width = 0;
  LatticePoint direction;  // primitive linear functional realising the width
};
LatticeWidth lattice_width(const LatticePolygon& poly);
/// Width of the hull along the functional u.
Coord width_along(const LatticePolygon& poly, LatticePoint u);

/// Normal form under AGL_2(Z): sorted vertex list of the normalised image.
std::vector<LatticePoint> canonical_form(const LatticePolygon& poly);
/// A map taking poly onto its canonical form.
AffineUnimodularMap canonical_map(const LatticePolygon& poly);
/// Hex digest of the canonical form; equal for unimodularly equivalent inputs.
std::string polygon_hash(const LatticePolygon& poly);
/// Hex digest of the exact vertex list.
std::string exact_hash(const LatticePolygon& poly);
/// A map taking a onto b, if the two are unimodularly equivalent.
std::optional<AffineUnimodularMap> equivalence(const LatticePolygon& a, const LatticePolygon& b);

std::vector<AffineUnimodularMap> symmetry_group(const LatticePolygon& poly);

struct PolygonClass {
  enum class Tag { SigmaMultiple, UpsilonD, TwoUpsilon, LawrencePrism, TwoSigma, Other };
  Tag tag = Tag::Other;
  Coord d = 0;  // SigmaMultiple / UpsilonD parameter
  Coord a = 0;  // LawrencePrism parameters, a >= b
  Coord b = 0;
  std::optional<AffineUnimodularMap> witness;  // maps the polygon onto the model

  /// d for dΣ (including 2Σ), 0 otherwise.
  Coord sigma_degree() const;
  /// Σ or Υ: the linear strand is identically zero.
  bool pathological() const;
  /// dΣ (d >= 2), Υ_d (d >= 2) or 2Υ.
  bool exceptional() const;
  std::string name() const;
};

PolygonClass classify(const LatticePolygon& poly);

LatticePolygon model_sigma(Coord d);
LatticePolygon model_upsilon(Coord d);            // Υ_d
LatticePolygon model_upsilon_multiple(Coord d);   // dΥ
LatticePolygon model_lawrence(Coord a, Coord b);  // conv{(0,0),(a,0),(b,1),(0,1)}

/// Number of nonzero v with inner + v contained in outer.
Coord translate_count(const LatticePolygon& inner, const LatticePolygon& outer);

LatticePolygon prune_vertex(const LatticePolygon& poly, LatticePoint vertex);

bool is_lw_minimal(const LatticePolygon& poly);
/// A map placing poly inside [0,lw]^2, if one exists.
std::optional<AffineUnimodularMap> square_embedding(const LatticePolygon& poly);

inline LatticePoint sigma_point(const LatticePolygon& poly) { return poly.points().sum(); }

}  // namespace toricbetti

#endif  // TORICBETTI_POLYGON_HPP
