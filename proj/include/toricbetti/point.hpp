#ifndef TORICBETTI_POINT_HPP
#define TORICBETTI_POINT_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

namespace toricbetti {

using Coord = std::int64_t;

/// A point of Z^2. Ordered lexicographically by (y, x).
struct LatticePoint {
  Coord x = 0;
  Coord y = 0;

  constexpr LatticePoint() = default;
  constexpr LatticePoint(Coord x_, Coord y_) : x(x_), y(y_) {}

  constexpr LatticePoint& operator+=(LatticePoint o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr LatticePoint& operator-=(LatticePoint o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr LatticePoint operator+(LatticePoint a, LatticePoint b) { return a += b; }
  friend constexpr LatticePoint operator-(LatticePoint a, LatticePoint b) { return a -= b; }
  friend constexpr LatticePoint operator-(LatticePoint a) { return {-a.x, -a.y}; }
  friend constexpr LatticePoint operator*(Coord k, LatticePoint a) { return {k * a.x, k * a.y}; }

  friend constexpr bool operator==(LatticePoint a, LatticePoint b) = default;
  friend constexpr std::strong_ordering operator<=>(LatticePoint a, LatticePoint b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

inline std::ostream& operator<<(std::ostream& os, LatticePoint p) {
  return os << '(' << p.x << ',' << p.y << ')';
}

/// Twice the signed area of the triangle (o, a, b).
constexpr Coord cross(LatticePoint o, LatticePoint a, LatticePoint b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

constexpr Coord cross(LatticePoint a, LatticePoint b) { return a.x * b.y - a.y * b.x; }

constexpr Coord dot(LatticePoint a, LatticePoint b) { return a.x * b.x + a.y * b.y; }

struct LatticePointHash {
  std::size_t operator()(LatticePoint p) const noexcept {
    auto h = static_cast<std::uint64_t>(p.x) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(p.y) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

/// A finite set of lattice points kept sorted in the (y, x) order.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::initializer_list<LatticePoint> pts) : PointSet(std::vector<LatticePoint>(pts)) {}
  explicit PointSet(std::vector<LatticePoint> pts) : pts_(std::move(pts)) {
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
  }

  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  const LatticePoint& operator[](std::size_t i) const { return pts_[i]; }
  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }
  std::span<const LatticePoint> points() const { return pts_; }

  bool contains(LatticePoint p) const { return std::binary_search(pts_.begin(), pts_.end(), p); }

  /// Position of p in the order, or -1.
  std::ptrdiff_t index_of(LatticePoint p) const {
    auto it = std::lower_bound(pts_.begin(), pts_.end(), p);
    if (it == pts_.end() || *it != p) return -1;
    return it - pts_.begin();
  }

  LatticePoint sum() const {
    LatticePoint s;
    for (auto p : pts_) s += p;
    return s;
  }

  PointSet translated(LatticePoint v) const {
    std::vector<LatticePoint> out;
    out.reserve(pts_.size());
    for (auto p : pts_) out.push_back(p + v);
    return PointSet(std::move(out));
  }

  PointSet without(std::span<const LatticePoint> removed) const {
    std::vector<LatticePoint> out;
    for (auto p : pts_)
      if (std::find(removed.begin(), removed.end(), p) == removed.end()) out.push_back(p);
    return PointSet(std::move(out));
  }

  bool is_subset_of(const PointSet& other) const {
    return std::includes(other.pts_.begin(), other.pts_.end(), pts_.begin(), pts_.end());
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<LatticePoint> pts_;
};

/// Dense membership lookup over the bounding box of a point set.
class PointGrid {
 public:
  PointGrid() = default;
  explicit PointGrid(const PointSet& s);

  /// Index of p in the originating PointSet, or -1.
  std::int32_t find(LatticePoint p) const {
    if (p.x < x0_ || p.y < y0_ || p.x >= x0_ + w_ || p.y >= y0_ + h_) return -1;
    return cells_[static_cast<std::size_t>((p.y - y0_) * w_ + (p.x - x0_))];
  }
  bool contains(LatticePoint p) const { return find(p) >= 0; }

 private:
  Coord x0_ = 0, y0_ = 0, w_ = 0, h_ = 0;
  std::vector<std::int32_t> cells_;
};

/// An element of AGL_2(Z) acting on row vectors: p -> p * matrix + shift.
struct AffineUnimodularMap {
  Coord m00 = 1, m01 = 0, m10 = 0, m11 = 1;
  LatticePoint shift;

  static AffineUnimodularMap identity() { return {}; }

  Coord det() const { return m00 * m11 - m01 * m10; }

  LatticePoint apply_linear(LatticePoint p) const {
    return {p.x * m00 + p.y * m10, p.x * m01 + p.y * m11};
  }
  LatticePoint operator()(LatticePoint p) const { return apply_linear(p) + shift; }

  /// (this after first)(p) = this(first(p)).
  AffineUnimodularMap after(const AffineUnimodularMap& first) const;
  AffineUnimodularMap inverse() const;

  PointSet apply(const PointSet& s) const {
    std::vector<LatticePoint> out;
    out.reserve(s.size());
    for (auto p : s) out.push_back((*this)(p));
    return PointSet(std::move(out));
  }

  friend bool operator==(const AffineUnimodularMap&, const AffineUnimodularMap&) = default;
};

Coord gcd_abs(Coord a, Coord b);
Coord floor_div(Coord a, Coord b);

}  // namespace toricbetti

#endif  // TORICBETTI_POINT_HPP
