#include "toricbetti/koszul.hpp"

#include <algorithm>
#include <bit>

namespace toricbetti {

std::string to_string(ComplexKind k) {
  switch (k) {
    case ComplexKind::primal_b:
      return "primal_b";
    case ComplexKind::dual_c:
      return "dual_c";
    case ComplexKind::dual_b:
      return "dual_b";
    case ComplexKind::custom:
      break;
  }
  return "custom";
}

namespace {

struct Box {
  Coord minx = 0, miny = 0, maxx = 0, maxy = 0;
};

Box bounds(const PointSet& s) {
  Box b{s[0].x, s[0].y, s[0].x, s[0].y};
  for (auto p : s) {
    b.minx = std::min(b.minx, p.x);
    b.miny = std::min(b.miny, p.y);
    b.maxx = std::max(b.maxx, p.x);
    b.maxy = std::max(b.maxy, p.y);
  }
  return b;
}

}  // namespace

GeneratingFunction::GeneratingFunction(const PointSet& wedge, const PointSet& source, int p_max) {
  if (p_max < 0) throw RangeError("negative truncation degree");
  layers_.resize(static_cast<std::size_t>(p_max) + 1);
  if (source.empty()) return;
  const Box bs = bounds(source);
  Box ba = wedge.empty() ? Box{} : bounds(wedge);
  // Exterior algebra part, layer k on the box k * bbox(A).
  std::vector<Grid> ext(layers_.size());
  for (std::size_t k = 0; k < ext.size(); ++k) {
    auto kk = static_cast<Coord>(k);
    ext[k].x0 = kk * ba.minx;
    ext[k].y0 = kk * ba.miny;
    ext[k].w = kk * (ba.maxx - ba.minx) + 1;
    ext[k].h = kk * (ba.maxy - ba.miny) + 1;
    ext[k].cells.assign(static_cast<std::size_t>(ext[k].w * ext[k].h), 0);
  }
  ext[0].cells[0] = 1;
  std::size_t used = 0;
  for (auto v : wedge) {
    ++used;
    for (std::size_t k = std::min(used, ext.size() - 1); k >= 1; --k) {
      const Grid& lo = ext[k - 1];
      Grid& hi = ext[k];
      for (Coord y = 0; y < lo.h; ++y)
        for (Coord x = 0; x < lo.w; ++x) {
          auto c = lo.cells[static_cast<std::size_t>(y * lo.w + x)];
          if (!c) continue;
          Coord X = lo.x0 + x + v.x - hi.x0, Y = lo.y0 + y + v.y - hi.y0;
          hi.cells[static_cast<std::size_t>(Y * hi.w + X)] += c;
        }
    }
  }
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const Grid& e = ext[k];
    Grid& g = layers_[k];
    g.x0 = e.x0 + bs.minx;
    g.y0 = e.y0 + bs.miny;
    g.w = e.w + bs.maxx - bs.minx;
    g.h = e.h + bs.maxy - bs.miny;
    g.cells.assign(static_cast<std::size_t>(g.w * g.h), 0);
    for (Coord y = 0; y < e.h; ++y)
      for (Coord x = 0; x < e.w; ++x) {
        auto c = e.cells[static_cast<std::size_t>(y * e.w + x)];
        if (!c) continue;
        for (auto b : source) {
          Coord X = e.x0 + x + b.x - g.x0, Y = e.y0 + y + b.y - g.y0;
          g.cells[static_cast<std::size_t>(Y * g.w + X)] += c;
        }
      }
  }
}

std::uint64_t GeneratingFunction::coefficient(int p, LatticePoint s) const {
  if (p < 0 || p > p_max()) return 0;
  return layers_[static_cast<std::size_t>(p)].at(s);
}

std::vector<std::pair<LatticePoint, std::uint64_t>> GeneratingFunction::layer(int p) const {
  std::vector<std::pair<LatticePoint, std::uint64_t>> out;
  if (p < 0 || p > p_max()) return out;
  const Grid& g = layers_[static_cast<std::size_t>(p)];
  for (Coord y = 0; y < g.h; ++y)
    for (Coord x = 0; x < g.w; ++x)
      if (auto c = g.cells[static_cast<std::size_t>(y * g.w + x)]) out.push_back({{g.x0 + x, g.y0 + y}, c});
  return out;
}

std::uint64_t GeneratingFunction::layer_total(int p) const {
  std::uint64_t t = 0;
  if (p < 0 || p > p_max()) return 0;
  for (auto c : layers_[static_cast<std::size_t>(p)].cells) t += c;
  return t;
}

std::uint64_t GeneratingFunction::layer_max(int p) const {
  std::uint64_t t = 0;
  if (p < 0 || p > p_max()) return 0;
  for (auto c : layers_[static_cast<std::size_t>(p)].cells) t = std::max(t, c);
  return t;
}

GeneratingFunction basis_dimension_polynomial(const PointSet& wedge, const PointSet& source, int p_max) {
  return GeneratingFunction(wedge, source, p_max);
}

WedgeEnumerator::WedgeEnumerator(const PointSet& wedge, int p_max) : wedge_(wedge), p_max_(p_max) {
  if (wedge_.size() > 64) throw TooLarge("wedge supports above 64 points are not supported");
  const std::size_t n = wedge_.size();
  if (n == 0) return;
  Box b = bounds(wedge_);
  minx_ = b.minx;
  miny_ = b.miny;
  wx_ = b.maxx - b.minx;
  wy_ = b.maxy - b.miny;
  const int kmax = std::min<int>(p_max_, static_cast<int>(n));
  reach_.assign(n + 1, {});
  auto cells = [&](int k) {
    return static_cast<std::size_t>((k * wx_ + 1) * (k * wy_ + 1));
  };
  for (std::size_t i = 0; i <= n; ++i) {
    int ks = std::min<int>(kmax, static_cast<int>(n - i));
    reach_[i].resize(static_cast<std::size_t>(ks) + 1);
    for (int k = 0; k <= ks; ++k) reach_[i][static_cast<std::size_t>(k)].assign((cells(k) + 63) / 64, 0);
  }
  reach_[n][0][0] = 1;
  for (std::size_t i = n; i-- > 0;) {
    const LatticePoint a = wedge_[i];
    auto& cur = reach_[i];
    const auto& nxt = reach_[i + 1];
    for (std::size_t k = 0; k < cur.size(); ++k) {
      if (k < nxt.size()) cur[k] = nxt[k];  // same box dimensions for equal k
      if (k == 0) continue;
      const auto& lo = nxt[k - 1];
      const Coord kk = static_cast<Coord>(k);
      const Coord wlo = (kk - 1) * wx_ + 1, whi = kk * wx_ + 1;
      for (std::size_t word = 0; word < lo.size(); ++word) {
        for (std::uint64_t bits = lo[word]; bits; bits &= bits - 1) {
          auto idx = static_cast<Coord>(word * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
          Coord x = idx % wlo, y = idx / wlo;  // offsets from (k-1)*min
          Coord X = x + a.x - minx_, Y = y + a.y - miny_;
          auto out = static_cast<std::size_t>(Y * whi + X);
          cur[k][out / 64] |= 1ULL << (out % 64);
        }
      }
    }
  }
}

bool WedgeEnumerator::reachable(std::size_t from, int k, LatticePoint t) const {
  if (from >= reach_.size() || k < 0 || static_cast<std::size_t>(k) >= reach_[from].size()) return false;
  const Coord kk = k;
  Coord x = t.x - kk * minx_, y = t.y - kk * miny_;
  Coord w = kk * wx_ + 1, h = kk * wy_ + 1;
  if (x < 0 || y < 0 || x >= w || y >= h) return false;
  auto idx = static_cast<std::size_t>(y * w + x);
  return (reach_[from][static_cast<std::size_t>(k)][idx / 64] >> (idx % 64)) & 1;
}

void WedgeEnumerator::collect(std::size_t from, int k, LatticePoint target, Mask acc,
                              std::vector<Mask>& out) const {
  if (k == 0) {
    out.push_back(acc);
    return;
  }
  const std::size_t n = wedge_.size();
  for (std::size_t j = from; j + static_cast<std::size_t>(k) <= n; ++j) {
    LatticePoint rest = target - wedge_[j];
    if (reachable(j + 1, k - 1, rest)) collect(j + 1, k - 1, rest, acc | (Mask{1} << j), out);
  }
}

std::vector<Mask> WedgeEnumerator::basis(int p, const PointSet& source, LatticePoint s) const {
  std::vector<Mask> out;
  if (p < 0 || p > p_max_ || static_cast<std::size_t>(p) > wedge_.size()) return out;
  if (wedge_.empty()) {
    if (p == 0 && source.contains(s)) out.push_back(0);
    return out;
  }
  for (auto c : source) {
    LatticePoint t = s - c;
    if (reachable(0, p, t)) collect(0, p, t, 0, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

LatticePoint WedgeEnumerator::mask_sum(Mask m) const {
  LatticePoint s;
  for (; m; m &= m - 1) s += wedge_[static_cast<std::size_t>(std::countr_zero(m))];
  return s;
}

std::vector<Mask> enumerate_basis(const PointSet& wedge, const PointSet& source, int p, LatticePoint s) {
  return WedgeEnumerator(wedge, p).basis(p, source, s);
}

namespace {

IntSparseMatrix build_coboundary(const PointSet& wedge, const std::vector<Mask>& domain,
                                 const std::vector<Mask>& codomain, const PointGrid& target, LatticePoint s) {
  IntSparseMatrix m;
  m.n_rows = static_cast<std::uint32_t>(codomain.size());
  m.col_ptr.reserve(domain.size() + 1);
  std::vector<std::pair<std::uint32_t, std::int32_t>> col;
  for (Mask d : domain) {
    LatticePoint cof = s;
    for (Mask t = d; t; t &= t - 1) cof -= wedge[static_cast<std::size_t>(std::countr_zero(t))];
    col.clear();
    int k = 0;
    for (Mask t = d; t; t &= t - 1) {
      ++k;
      auto bit = static_cast<std::size_t>(std::countr_zero(t));
      if (!target.contains(cof + wedge[bit])) continue;
      Mask reduced = d & ~(Mask{1} << bit);
      auto it = std::lower_bound(codomain.begin(), codomain.end(), reduced);
      if (it == codomain.end() || *it != reduced) throw Error("coboundary target missing from codomain basis");
      col.push_back({static_cast<std::uint32_t>(it - codomain.begin()), (k % 2) ? -1 : 1});
    }
    std::sort(col.begin(), col.end());
    m.push_column(col);
  }
  return m;
}

}  // namespace

IntSparseMatrix coboundary_matrix(const PointSet& wedge, const std::vector<Mask>& domain,
                                  const std::vector<Mask>& codomain, const PointSet& target, LatticePoint s) {
  return build_coboundary(wedge, domain, codomain, PointGrid(target), s);
}

ComplexBlocks::ComplexBlocks(const ComplexSpec& spec)
    : spec_(spec), enumerator_(spec.wedge, spec.p + 1), next_grid_(spec.next), mid_grid_(spec.mid) {}

std::vector<Mask> ComplexBlocks::prev_basis(LatticePoint s) const {
  return enumerator_.basis(spec_.p + 1, spec_.prev, s);
}
std::vector<Mask> ComplexBlocks::mid_basis(LatticePoint s) const { return enumerator_.basis(spec_.p, spec_.mid, s); }
std::vector<Mask> ComplexBlocks::next_basis(LatticePoint s) const {
  if (spec_.p < 1) return {};
  return enumerator_.basis(spec_.p - 1, spec_.next, s);
}

IntSparseMatrix ComplexBlocks::outgoing(LatticePoint s) const {
  return build_coboundary(spec_.wedge, mid_basis(s), next_basis(s), next_grid_, s);
}

IntSparseMatrix ComplexBlocks::incoming(LatticePoint s) const {
  return build_coboundary(spec_.wedge, prev_basis(s), mid_basis(s), mid_grid_, s);
}

PointSet reduced_supports(const LatticePolygon& poly, const RemovalPlan& plan, bool twisted, Coord q) {
  if (q < 0) throw RangeError("negative degree");
  verify_plan(poly, plan);
  if (q == 0) return twisted ? PointSet{} : PointSet{LatticePoint{0, 0}};
  PointSet full = twisted ? twisted_points(poly, q) : dilate(poly, q).points();
  if (plan.empty()) return full;
  PointSet below = twisted ? twisted_points(poly, q - 1) : dilate(poly, q - 1).points();
  std::vector<LatticePoint> kept;
  for (auto x : full) {
    bool hit = false;
    for (auto pt : plan.removed)
      if (below.contains(x - pt)) {
        hit = true;
        break;
      }
    if (!hit) kept.push_back(x);
  }
  return PointSet(std::move(kept));
}

ComplexSpec reduced_complex_spec(const LatticePolygon& poly, const RemovalPlan& plan, ComplexKind kind, int ell) {
  verify_plan(poly, plan);
  const int n = static_cast<int>(poly.n_points());
  ComplexSpec spec;
  spec.kind = kind;
  spec.ell = ell;
  spec.plan = plan;
  spec.wedge = poly.points().without(plan.removed);
  auto support = [&](bool twisted, Coord q) { return reduced_supports(poly, plan, twisted, q); };
  LatticePolygon mid_hull;
  switch (kind) {
    case ComplexKind::primal_b:
      if (ell < 1 || ell > n - 2) throw RangeError("linear index out of range");
      spec.p = ell;
      spec.prev = support(false, 0);
      spec.mid = support(false, 1);
      spec.next = support(false, 2);
      spec.weight = ell + 1;
      spec.prev_injective = true;
      mid_hull = poly;
      break;
    case ComplexKind::dual_c:
      if (ell < 1 || ell > n - 2) throw RangeError("quadratic index out of range");
      spec.p = ell - 1;
      spec.prev = {};
      spec.mid = support(true, 1);
      spec.next = support(true, 2);
      spec.weight = ell;
      mid_hull = interior_hull(poly);
      break;
    case ComplexKind::dual_b:
      if (ell < 1 || ell > n - 3) throw RangeError("linear index out of range");
      spec.p = n - 3 - ell;
      spec.prev = support(true, 1);
      spec.mid = support(true, 2);
      spec.next = support(true, 3);
      spec.weight = n - 1 - ell;
      mid_hull = interior_hull(dilate(poly, 2));
      break;
    case ComplexKind::custom:
      throw InvalidPlan("custom complexes are assembled by hand");
  }
  if (!mid_hull.empty()) spec.region = minkowski_sum(dilate(poly, spec.p), mid_hull).points();
  return spec;
}

ComplexSpec complex_spec(const LatticePolygon& poly, ComplexKind kind, int ell) {
  return reduced_complex_spec(poly, RemovalPlan{}, kind, ell);
}

bool regular_pair(const LatticePolygon& poly, LatticePoint p, LatticePoint q) {
  if (!poly.contains(p) || !poly.contains(q)) throw NotInPolygon("point outside the polygon");
  if (p == q) throw RangeError("points must be distinct");
  const auto& v = poly.vertices();
  const std::size_t n = v.size();
  // The chord of the polygon on the line PQ must be exactly the segment PQ.
  auto leaves_at = [&](LatticePoint x, LatticePoint dir) {
    for (std::size_t i = 0; i < n; ++i) {
      LatticePoint e = v[(i + 1) % n] - v[i];
      if (cross(v[i], v[(i + 1) % n], x) == 0 && cross(e, dir) < 0) return true;
    }
    return false;
  };
  if (!leaves_at(q, q - p) || !leaves_at(p, p - q)) return false;
  // Each open side of the line carries at most one vertex.
  int left = 0, right = 0;
  for (auto x : v) {
    Coord c = cross(p, q, x);
    if (c > 0) ++left;
    if (c < 0) ++right;
  }
  return left <= 1 && right <= 1;
}

bool regular_triple(const LatticePolygon& poly, LatticePoint p, LatticePoint q, LatticePoint r) {
  for (auto x : {p, q, r})
    if (!poly.contains(x)) throw NotInPolygon("point outside the polygon");
  if (p == q || q == r || p == r) throw RangeError("points must be distinct");
  const auto& v = poly.vertices();
  return v.size() == 3 && poly.is_vertex(p) && poly.is_vertex(q) && poly.is_vertex(r);
}

void verify_plan(const LatticePolygon& poly, const RemovalPlan& plan) {
  using C = RemovalPlan::Certificate;
  const auto& r = plan.removed;
  bool ok = false;
  try {
    switch (plan.certificate) {
      case C::none:
        ok = r.empty();
        break;
      case C::single:
        ok = r.size() == 1 && poly.contains(r[0]);
        break;
      case C::opposite_pair:
        ok = r.size() == 2 && regular_pair(poly, r[0], r[1]);
        break;
      case C::triangle:
        ok = r.size() == 3 && regular_triple(poly, r[0], r[1], r[2]);
        break;
    }
  } catch (const Error&) {
    ok = false;
  }
  if (!ok) throw InvalidPlan("removal plan fails its regularity certificate");
}

namespace {

std::uint64_t plan_score(const LatticePolygon& poly, const RemovalPlan& plan) {
  auto wedge = poly.points().without(plan.removed);
  const int pm = static_cast<int>(wedge.size());
  std::uint64_t best = 0;
  for (bool twisted : {false, true}) {
    auto mid = reduced_supports(poly, plan, twisted, 1);
    if (mid.empty()) continue;
    GeneratingFunction gf(wedge, mid, pm);
    for (int p = 0; p <= pm; ++p) best = std::max(best, gf.layer_max(p));
  }
  return best;
}

}  // namespace

RemovalPlan choose_removal(const LatticePolygon& poly) {
  using C = RemovalPlan::Certificate;
  const auto& v = poly.vertices();
  if (v.size() == 3) return RemovalPlan{{v[0], v[1], v[2]}, C::triangle};
  std::vector<RemovalPlan> options;
  if (v.size() == 4) {
    options.push_back({{v[0], v[2]}, C::opposite_pair});
    options.push_back({{v[1], v[3]}, C::opposite_pair});
  } else {
    for (auto p : poly.points()) options.push_back({{p}, C::single});
  }
  for (auto& o : options) std::sort(o.removed.begin(), o.removed.end());
  std::sort(options.begin(), options.end(),
            [](const RemovalPlan& a, const RemovalPlan& b) { return a.removed < b.removed; });
  const RemovalPlan* best = nullptr;
  std::uint64_t best_score = 0;
  for (const auto& o : options) {
    auto s = plan_score(poly, o);
    if (!best || s < best_score) {
      best = &o;
      best_score = s;
    }
  }
  return *best;
}

std::uint64_t peak_block(const ComplexSpec& spec) {
  if (spec.mid.empty() || spec.p < 0) return 0;
  return GeneratingFunction(spec.wedge, spec.mid, spec.p).layer_max(spec.p);
}

}  // namespace toricbetti
