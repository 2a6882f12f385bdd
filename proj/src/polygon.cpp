#include "toricbetti/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <tuple>

namespace toricbetti {

namespace {

std::vector<LatticePoint> hull_vertices(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<LatticePoint> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

Coord signed_area2(const std::vector<LatticePoint>& v) {
  Coord s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += cross(v[i], v[(i + 1) % v.size()]);
  return s;
}

// Extended gcd: returns (g, s, t) with a*s + b*t = g >= 0.
std::tuple<Coord, Coord, Coord> ext_gcd(Coord a, Coord b) {
  Coord old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Coord q = floor_div(old_r, r);
    std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
    std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
    std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

struct Candidate {
  std::vector<LatticePoint> form;
  AffineUnimodularMap map;
};

// Normalise with vertex i at the origin, the edge towards its successor in the
// chosen orientation along the positive x-axis, the polygon in y >= 0, and the
// other neighbour sheared into 0 <= x < y.
Candidate normalise_at(const std::vector<LatticePoint>& v, std::size_t i, bool ccw) {
  const std::size_t n = v.size();
  const LatticePoint start = v[i];
  const LatticePoint next = ccw ? v[(i + 1) % n] : v[(i + n - 1) % n];
  const LatticePoint prev = ccw ? v[(i + n - 1) % n] : v[(i + 1) % n];
  LatticePoint e = next - start;
  Coord g = gcd_abs(e.x, e.y);
  Coord p = e.x / g, q = e.y / g;
  // p*s - q*r = 1
  auto [g1, s, mr] = ext_gcd(p, q);
  (void)g1;
  Coord r = -mr;
  AffineUnimodularMap m;
  m.m00 = s;
  m.m01 = -q;
  m.m10 = -r;
  m.m11 = p;
  if (!ccw) {
    m.m01 = -m.m01;
    m.m11 = -m.m11;
  }
  LatticePoint pv = m.apply_linear(prev - start);
  Coord k = -floor_div(pv.x, pv.y);
  AffineUnimodularMap shear;
  shear.m10 = k;
  m = shear.after(m);
  m.shift = -m.apply_linear(start);
  Candidate c;
  c.map = m;
  c.form.reserve(n);
  for (auto x : v) c.form.push_back(m(x));
  std::sort(c.form.begin(), c.form.end());
  return c;
}

std::vector<Candidate> candidates(const LatticePolygon& poly) {
  if (poly.dimension() != 2) throw DimensionError("normal form requires a two-dimensional polygon");
  std::vector<Candidate> out;
  const auto& v = poly.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(normalise_at(v, i, true));
    out.push_back(normalise_at(v, i, false));
  }
  return out;
}

const Candidate& best(const std::vector<Candidate>& cs) {
  return *std::min_element(cs.begin(), cs.end(),
                           [](const Candidate& a, const Candidate& b) { return a.form < b.form; });
}

std::string fnv_hex(const std::vector<LatticePoint>& v) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  };
  for (auto p : v) feed(std::to_string(p.x) + "," + std::to_string(p.y) + ";");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

PointSet interior_points(const LatticePolygon& poly) {
  if (poly.dimension() != 2) return {};
  const auto& v = poly.vertices();
  std::vector<LatticePoint> out;
  for (auto p : poly.points()) {
    bool inside = true;
    for (std::size_t i = 0; i < v.size() && inside; ++i)
      inside = cross(v[i], v[(i + 1) % v.size()], p) > 0;
    if (inside) out.push_back(p);
  }
  return PointSet(std::move(out));
}

}  // namespace

LatticePolygon LatticePolygon::hull_of(std::span<const LatticePoint> pts) {
  LatticePolygon poly;
  auto h = hull_vertices(std::vector<LatticePoint>(pts.begin(), pts.end()));
  if (h.size() >= 3) {
    if (signed_area2(h) < 0) std::reverse(h.begin(), h.end());
    std::rotate(h.begin(), std::min_element(h.begin(), h.end()), h.end());
    poly.dim_ = 2;
  } else {
    poly.dim_ = static_cast<int>(h.size()) - 1;
  }
  poly.vertices_ = std::move(h);
  poly.populate();
  return poly;
}

void LatticePolygon::populate() {
  std::vector<LatticePoint> pts;
  if (dim_ == 0) {
    pts.push_back(vertices_[0]);
    boundary_count_ = 1;
  } else if (dim_ == 1) {
    LatticePoint e = vertices_[1] - vertices_[0];
    Coord g = gcd_abs(e.x, e.y);
    for (Coord k = 0; k <= g; ++k) pts.push_back(vertices_[0] + LatticePoint{e.x / g * k, e.y / g * k});
    boundary_count_ = g + 1;
  } else if (dim_ == 2) {
    Coord ymin = vertices_[0].y, ymax = vertices_[0].y;
    for (auto v : vertices_) {
      ymin = std::min(ymin, v.y);
      ymax = std::max(ymax, v.y);
    }
    const std::size_t n = vertices_.size();
    for (Coord y = ymin; y <= ymax; ++y) {
      Coord lo = INT64_MIN, hi = INT64_MAX;
      bool empty_row = false;
      for (std::size_t i = 0; i < n; ++i) {
        LatticePoint a = vertices_[i], b = vertices_[(i + 1) % n];
        Coord ex = b.x - a.x, ey = b.y - a.y;
        // ex*(y - a.y) - ey*(x - a.x) >= 0
        Coord rhs = ex * (y - a.y) + ey * a.x;  // ey * x <= rhs
        if (ey > 0) {
          hi = std::min(hi, floor_div(rhs, ey));
        } else if (ey < 0) {
          lo = std::max(lo, -floor_div(-rhs, ey));  // x >= ceil(rhs / ey)
        } else if (ex * (y - a.y) < 0) {
          empty_row = true;
        }
      }
      if (empty_row) continue;
      for (Coord x = lo; x <= hi; ++x) pts.push_back({x, y});
    }
    boundary_count_ = 0;
    for (std::size_t i = 0; i < n; ++i) {
      LatticePoint e = vertices_[(i + 1) % n] - vertices_[i];
      boundary_count_ += gcd_abs(e.x, e.y);
    }
    area2_ = signed_area2(vertices_);
  }
  points_ = PointSet(std::move(pts));
}

bool LatticePolygon::contains(LatticePoint p) const {
  if (dim_ < 2) return points_.contains(p);
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i)
    if (cross(vertices_[i], vertices_[(i + 1) % n], p) < 0) return false;
  return true;
}

bool LatticePolygon::is_vertex(LatticePoint p) const {
  return std::find(vertices_.begin(), vertices_.end(), p) != vertices_.end();
}

LatticePolygon from_vertices(std::span<const LatticePoint> pts) {
  if (pts.empty()) throw DimensionError("no points given");
  auto poly = LatticePolygon::hull_of(pts);
  if (poly.dimension() != 2) throw DimensionError("hull is not two-dimensional");
  return poly;
}

LatticePolygon interior_hull(const LatticePolygon& poly) {
  auto pts = interior_points(poly);
  return LatticePolygon::hull_of(pts.points());
}

LatticePolygon dilate(const LatticePolygon& poly, Coord q) {
  if (q < 0) throw RangeError("negative dilation factor");
  if (q == 0) {
    LatticePoint origin;
    return LatticePolygon::hull_of(std::span<const LatticePoint>(&origin, 1));
  }
  std::vector<LatticePoint> v;
  for (auto p : poly.vertices()) v.push_back(q * p);
  return LatticePolygon::hull_of(v);
}

LatticePolygon minkowski_sum(const LatticePolygon& a, const LatticePolygon& b) {
  std::vector<LatticePoint> v;
  for (auto p : a.vertices())
    for (auto r : b.vertices()) v.push_back(p + r);
  return LatticePolygon::hull_of(v);
}

PointSet twisted_points(const LatticePolygon& poly, Coord q) {
  if (q <= 0) return {};
  return interior_points(dilate(poly, q));
}

Coord ehrhart_count(const LatticePolygon& poly, Coord q) {
  if (q < 0) throw RangeError("negative dilation factor");
  Coord twice = poly.area2() * q * q + poly.boundary_count() * q;
  if (twice % 2 != 0) throw Error("Ehrhart numerator is odd");
  return twice / 2 + 1;
}

Coord width_along(const LatticePolygon& poly, LatticePoint u) {
  const auto& v = poly.vertices();
  Coord lo = dot(u, v[0]), hi = lo;
  for (auto p : v) {
    lo = std::min(lo, dot(u, p));
    hi = std::max(hi, dot(u, p));
  }
  return hi - lo;
}

namespace {

// All primitive functionals (up to sign) whose width is at most the smaller
// axis width. A functional u has width >= |u| times the Euclidean width of the
// polygon, and the Euclidean width is attained against some edge, which gives
// the search radius.
std::vector<LatticePoint> short_directions(const LatticePolygon& poly, Coord& w0) {
  if (poly.dimension() != 2) throw DimensionError("lattice width requires a two-dimensional polygon");
  w0 = std::min(width_along(poly, {1, 0}), width_along(poly, {0, 1}));
  const auto& v = poly.vertices();
  double ratio = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    LatticePoint a = v[i], b = v[(i + 1) % v.size()];
    Coord h = 0;
    for (auto p : v) h = std::max(h, cross(a, b, p));
    double len = std::hypot(static_cast<double>(b.x - a.x), static_cast<double>(b.y - a.y));
    ratio = std::max(ratio, len / static_cast<double>(h));
  }
  Coord radius = static_cast<Coord>(std::floor(static_cast<double>(w0) * ratio)) + 1;
  std::vector<LatticePoint> out;
  for (Coord ux = 0; ux <= radius; ++ux)
    for (Coord uy = -radius; uy <= radius; ++uy) {
      if (ux == 0 && uy <= 0) continue;
      if (gcd_abs(ux, uy) != 1) continue;
      if (width_along(poly, {ux, uy}) <= w0) out.push_back({ux, uy});
    }
  return out;
}

}  // namespace

LatticeWidth lattice_width(const LatticePolygon& poly) {
  Coord w0 = 0;
  auto dirs = short_directions(poly, w0);
  LatticeWidth best{w0 + 1, {}};
  for (auto u : dirs) {
    Coord w = width_along(poly, u);
    if (w < best.width) best = {w, u};
  }
  return best;
}

std::vector<LatticePoint> canonical_form(const LatticePolygon& poly) { return best(candidates(poly)).form; }

AffineUnimodularMap canonical_map(const LatticePolygon& poly) { return best(candidates(poly)).map; }

std::string polygon_hash(const LatticePolygon& poly) { return fnv_hex(canonical_form(poly)); }

std::string exact_hash(const LatticePolygon& poly) { return fnv_hex(poly.vertices()); }

std::optional<AffineUnimodularMap> equivalence(const LatticePolygon& a, const LatticePolygon& b) {
  if (a.dimension() != 2 || b.dimension() != 2) return std::nullopt;
  if (a.vertices().size() != b.vertices().size() || a.area2() != b.area2() ||
      a.n_points() != b.n_points())
    return std::nullopt;
  auto ca = best(candidates(a));
  auto cb = best(candidates(b));
  if (ca.form != cb.form) return std::nullopt;
  return cb.map.inverse().after(ca.map);
}

std::vector<AffineUnimodularMap> symmetry_group(const LatticePolygon& poly) {
  auto cs = candidates(poly);
  const auto& ref = cs.front();
  std::vector<AffineUnimodularMap> out;
  for (const auto& c : cs)
    if (c.form == ref.form) out.push_back(c.map.inverse().after(ref.map));
  // Put the identity first for readability of dumps.
  auto it = std::find(out.begin(), out.end(), AffineUnimodularMap::identity());
  if (it != out.end()) std::rotate(out.begin(), it, it + 1);
  return out;
}

LatticePolygon model_sigma(Coord d) { return from_vertices({{0, 0}, {d, 0}, {0, d}}); }

LatticePolygon model_upsilon(Coord d) { return from_vertices({{-1, -1}, {d, 0}, {0, d}}); }

LatticePolygon model_upsilon_multiple(Coord d) { return from_vertices({{-d, -d}, {d, 0}, {0, d}}); }

LatticePolygon model_lawrence(Coord a, Coord b) {
  if (b == 0) return from_vertices({{0, 0}, {a, 0}, {0, 1}});
  return from_vertices({{0, 0}, {a, 0}, {b, 1}, {0, 1}});
}

Coord PolygonClass::sigma_degree() const {
  if (tag == Tag::SigmaMultiple) return d;
  if (tag == Tag::TwoSigma) return 2;
  return 0;
}

bool PolygonClass::pathological() const {
  return (tag == Tag::SigmaMultiple && d == 1) || (tag == Tag::UpsilonD && d == 1);
}

bool PolygonClass::exceptional() const {
  return sigma_degree() >= 2 || (tag == Tag::UpsilonD && d >= 2) || tag == Tag::TwoUpsilon;
}

std::string PolygonClass::name() const {
  switch (tag) {
    case Tag::SigmaMultiple:
      return d == 1 ? "Sigma" : std::to_string(d) + "*Sigma";
    case Tag::TwoSigma:
      return "2*Sigma";
    case Tag::UpsilonD:
      return d == 1 ? "Upsilon" : "Upsilon_" + std::to_string(d);
    case Tag::TwoUpsilon:
      return "2*Upsilon";
    case Tag::LawrencePrism:
      return "Lawrence(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case Tag::Other:
      break;
  }
  return "Other";
}

PolygonClass classify(const LatticePolygon& poly) {
  using Tag = PolygonClass::Tag;
  PolygonClass pc;
  const Coord area2 = poly.area2();
  const Coord bc = poly.boundary_count();
  if (bc % 3 == 0) {
    Coord d = bc / 3;
    if (d * d == area2) {
      if (auto w = equivalence(poly, model_sigma(d))) {
        pc.tag = d == 2 ? Tag::TwoSigma : Tag::SigmaMultiple;
        pc.d = d;
        pc.witness = w;
        return pc;
      }
    }
  }
  Coord d = static_cast<Coord>(std::llround(std::sqrt(static_cast<double>(area2 + 1)))) - 1;
  if (d >= 1 && d * d + 2 * d == area2) {
    if (auto w = equivalence(poly, model_upsilon(d))) {
      pc.tag = Tag::UpsilonD;
      pc.d = d;
      pc.witness = w;
      return pc;
    }
  }
  if (area2 == 12) {
    if (auto w = equivalence(poly, model_upsilon_multiple(2))) {
      pc.tag = Tag::TwoUpsilon;
      pc.witness = w;
      return pc;
    }
  }
  auto lw = lattice_width(poly);
  if (lw.width == 1) {
    Coord lo = dot(lw.direction, poly.vertices()[0]);
    for (auto v : poly.vertices()) lo = std::min(lo, dot(lw.direction, v));
    Coord low_count = 0;
    for (auto p : poly.points())
      if (dot(lw.direction, p) == lo) ++low_count;
    Coord high_count = poly.n_points() - low_count;
    pc.a = std::max(low_count, high_count) - 1;
    pc.b = std::min(low_count, high_count) - 1;
    pc.witness = equivalence(poly, model_lawrence(pc.a, pc.b));
    if (!pc.witness) throw Error("width-one polygon not matched to a Lawrence prism");
    pc.tag = Tag::LawrencePrism;
    return pc;
  }
  return pc;
}

Coord translate_count(const LatticePolygon& inner, const LatticePolygon& outer) {
  if (inner.empty()) throw EmptyInner("inner hull is empty");
  const LatticePoint base = inner.vertices()[0];
  Coord count = 0;
  for (auto target : outer.points()) {
    LatticePoint v = target - base;
    if (v == LatticePoint{}) continue;
    bool fits = true;
    for (auto p : inner.vertices())
      if (!outer.contains(p + v)) {
        fits = false;
        break;
      }
    if (fits) ++count;
  }
  return count;
}

LatticePolygon prune_vertex(const LatticePolygon& poly, LatticePoint vertex) {
  if (!poly.is_vertex(vertex)) throw NotAVertex("point is not a vertex of the polygon");
  auto rest = poly.points().without(std::span<const LatticePoint>(&vertex, 1));
  auto out = LatticePolygon::hull_of(rest.points());
  if (out.dimension() != 2) throw DimensionError("pruned hull is not two-dimensional");
  return out;
}

bool is_lw_minimal(const LatticePolygon& poly) {
  const Coord w = lattice_width(poly).width;
  for (auto v : poly.vertices()) {
    auto rest = poly.points().without(std::span<const LatticePoint>(&v, 1));
    auto pruned = LatticePolygon::hull_of(rest.points());
    if (pruned.dimension() != 2) continue;
    if (lattice_width(pruned).width >= w) return false;
  }
  return true;
}

std::optional<AffineUnimodularMap> square_embedding(const LatticePolygon& poly) {
  Coord w0 = 0;
  auto dirs = short_directions(poly, w0);
  const Coord w = lattice_width(poly).width;
  for (auto u1 : dirs) {
    if (width_along(poly, u1) != w) continue;
    // u2 with det(u1, u2) = 1, then slide along u1 to minimise its width.
    auto [g, s, t] = ext_gcd(u1.x, u1.y);
    (void)g;
    LatticePoint u2{-t, s};
    auto width_at = [&](Coord k) { return width_along(poly, u2 + k * u1); };
    Coord k = 0;
    Coord cur = width_at(0);
    for (int step : {1, -1}) {
      while (width_at(k + step) < cur) {
        k += step;
        cur = width_at(k);
      }
    }
    if (cur > w) continue;
    u2 = u2 + k * u1;
    AffineUnimodularMap m;
    m.m00 = u1.x;
    m.m10 = u1.y;
    m.m01 = u2.x;
    m.m11 = u2.y;
    LatticePoint lo = m.apply_linear(poly.vertices()[0]);
    for (auto v : poly.vertices()) {
      auto img = m.apply_linear(v);
      lo.x = std::min(lo.x, img.x);
      lo.y = std::min(lo.y, img.y);
    }
    m.shift = -lo;
    return m;
  }
  return std::nullopt;
}

}  // namespace toricbetti
