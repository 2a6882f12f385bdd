#include "toricbetti/point.hpp"

#include <cstdlib>
#include <numeric>

#include "toricbetti/errors.hpp"

namespace toricbetti {

Coord gcd_abs(Coord a, Coord b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

Coord floor_div(Coord a, Coord b) {
  Coord q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

PointGrid::PointGrid(const PointSet& s) {
  if (s.empty()) return;
  Coord x1 = s[0].x, y1 = s[0].y;
  x0_ = x1;
  y0_ = y1;
  for (auto p : s) {
    x0_ = std::min(x0_, p.x);
    y0_ = std::min(y0_, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  w_ = x1 - x0_ + 1;
  h_ = y1 - y0_ + 1;
  cells_.assign(static_cast<std::size_t>(w_ * h_), -1);
  for (std::size_t i = 0; i < s.size(); ++i)
    cells_[static_cast<std::size_t>((s[i].y - y0_) * w_ + (s[i].x - x0_))] = static_cast<std::int32_t>(i);
}

AffineUnimodularMap AffineUnimodularMap::after(const AffineUnimodularMap& first) const {
  AffineUnimodularMap r;
  r.m00 = first.m00 * m00 + first.m01 * m10;
  r.m01 = first.m00 * m01 + first.m01 * m11;
  r.m10 = first.m10 * m00 + first.m11 * m10;
  r.m11 = first.m10 * m01 + first.m11 * m11;
  r.shift = apply_linear(first.shift) + shift;
  return r;
}

AffineUnimodularMap AffineUnimodularMap::inverse() const {
  Coord d = det();
  if (d != 1 && d != -1) throw Error("inverse of a non-unimodular map");
  AffineUnimodularMap r;
  r.m00 = m11 * d;
  r.m01 = -m01 * d;
  r.m10 = -m10 * d;
  r.m11 = m00 * d;
  r.shift = -r.apply_linear(shift);
  return r;
}

}  // namespace toricbetti
