#include <random>
#include <set>

#include "doctest.h"
#include "toricbetti/polygon.hpp"

using namespace toricbetti;

namespace {

std::vector<LatticePolygon> sample_polygons() {
  std::vector<LatticePolygon> out = {
      model_sigma(1),         model_sigma(2),     model_sigma(3),      model_sigma(4),
      model_upsilon(1),       model_upsilon(2),   model_upsilon(3),    model_upsilon_multiple(2),
      model_lawrence(3, 1),   model_lawrence(1, 1),
      from_vertices({{0, 0}, {5, 0}, {0, 2}, {5, 2}}),
      from_vertices({{0, 0}, {4, 1}, {3, 3}, {-1, 2}}),
      from_vertices({{0, 0}, {3, 0}, {4, 2}, {1, 4}, {-1, 2}}),
  };
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coord(-3, 3);
  while (out.size() < 40) {
    std::vector<LatticePoint> pts;
    for (int i = 0; i < 5; ++i) pts.push_back({coord(rng), coord(rng)});
    auto h = LatticePolygon::hull_of(pts);
    if (h.dimension() == 2) out.push_back(h);
  }
  return out;
}

// Brute-force symmetry oracle: every map sending an ordered pair of adjacent
// vertices plus the following vertex onto vertices of the polygon.
std::set<std::tuple<Coord, Coord, Coord, Coord, Coord, Coord>> brute_symmetries(const LatticePolygon& poly) {
  std::set<std::tuple<Coord, Coord, Coord, Coord, Coord, Coord>> out;
  const auto& v = poly.vertices();
  LatticePoint a = v[0], b = v[1], c = v[2];
  LatticePoint e1 = b - a, e2 = c - a;
  Coord det = cross(e1, e2);
  for (auto ia : v)
    for (auto ib : v)
      for (auto ic : v) {
        if (ia == ib || ib == ic || ia == ic) continue;
        LatticePoint f1 = ib - ia, f2 = ic - ia;
        // Solve [e1; e2] M = [f1; f2] with row vectors.
        Coord n00 = e2.y * f1.x - e1.y * f2.x, n01 = e2.y * f1.y - e1.y * f2.y;
        Coord n10 = -e2.x * f1.x + e1.x * f2.x, n11 = -e2.x * f1.y + e1.x * f2.y;
        if (n00 % det || n01 % det || n10 % det || n11 % det) continue;
        AffineUnimodularMap m;
        m.m00 = n00 / det;
        m.m01 = n01 / det;
        m.m10 = n10 / det;
        m.m11 = n11 / det;
        if (m.det() != 1 && m.det() != -1) continue;
        m.shift = ia - m.apply_linear(a);
        if (m.apply(poly.points()) != poly.points()) continue;
        out.insert({m.m00, m.m01, m.m10, m.m11, m.shift.x, m.shift.y});
      }
  return out;
}

Coord brute_width(const LatticePolygon& poly) {
  Coord diam = 0;
  for (auto p : poly.points())
    for (auto q : poly.points()) diam = std::max({diam, std::abs(p.x - q.x), std::abs(p.y - q.y)});
  Coord best = INT64_MAX;
  for (Coord ux = -diam - 1; ux <= diam + 1; ++ux)
    for (Coord uy = -diam - 1; uy <= diam + 1; ++uy)
      if ((ux != 0 || uy != 0) && gcd_abs(ux, uy) == 1) best = std::min(best, width_along(poly, {ux, uy}));
  return best;
}

}  // namespace

TEST_CASE("from_vertices builds hulls and rejects degenerate input") {
  auto s2 = from_vertices({{0, 0}, {2, 0}, {0, 2}});
  CHECK(s2.n_points() == 6);
  auto sq = from_vertices({{1, 1}, {0, 0}, {1, 0}, {0, 1}});
  CHECK(sq.area2() == 2);
  CHECK(sq.boundary_count() == 4);
  CHECK(sq.vertices().size() == 4);
  CHECK_THROWS_AS(from_vertices({{0, 0}, {3, 0}}), DimensionError);
  CHECK_THROWS_AS(from_vertices({{0, 0}, {1, 1}, {2, 2}}), DimensionError);
  auto with_inner = from_vertices({{0, 0}, {4, 0}, {0, 4}, {1, 1}, {2, 0}});
  CHECK(with_inner.vertices().size() == 3);
}

TEST_CASE("lattice point counts of the standard families") {
  CHECK(model_sigma(5).n_points() == 21);
  CHECK(model_upsilon_multiple(2).n_points() == 10);
  CHECK(model_upsilon(1).n_points() == 4);
  CHECK(model_upsilon(4).n_points() == 16);
  auto pts = lattice_points(model_sigma(1));
  REQUIRE(pts.size() == 3);
  CHECK(pts[0] == LatticePoint{0, 0});
  CHECK(pts[1] == LatticePoint{1, 0});
  CHECK(pts[2] == LatticePoint{0, 1});
}

TEST_CASE("interior hulls") {
  auto in4 = interior_hull(model_sigma(4));
  CHECK(in4.dimension() == 2);
  CHECK(in4.n_points() == 3);
  CHECK(in4.points() == model_sigma(1).points().translated({1, 1}));
  CHECK(interior_hull(model_sigma(2)).dimension() == -1);
  auto in2u = interior_hull(model_upsilon_multiple(2));
  CHECK(in2u.n_points() == 4);
  CHECK(equivalence(in2u, model_upsilon(1)).has_value());
  CHECK(interior_hull(model_sigma(3)).dimension() == 0);
  CHECK(interior_hull(model_upsilon(2)).dimension() == 2);
  CHECK(equivalence(interior_hull(model_upsilon(3)), model_sigma(2)).has_value());
  CHECK(interior_hull(from_vertices({{0, 0}, {4, 0}, {0, 2}, {4, 2}})).dimension() == 1);
}

TEST_CASE("dilation and Minkowski sums") {
  CHECK(dilate(model_sigma(1), 3).n_points() == 10);
  CHECK(dilate(model_upsilon(2), 1) == model_upsilon(2));
  auto zero = dilate(model_upsilon(2), 0);
  CHECK(zero.degenerate());
  CHECK(zero.n_points() == 1);
  auto s4 = model_sigma(4);
  auto region = minkowski_sum(dilate(s4, 2), interior_hull(s4));
  CHECK(region.points() == model_sigma(9).points().translated({1, 1}));
  CHECK(twisted_points(s4, 1) == interior_hull(s4).points());
  CHECK(twisted_points(s4, 0).empty());
}

TEST_CASE("Ehrhart counts agree with enumeration") {
  CHECK(ehrhart_count(model_upsilon_multiple(2), 1) == 10);
  CHECK(ehrhart_count(model_sigma(4), 2) == 45);
  for (Coord q = 0; q <= 6; ++q) CHECK(ehrhart_count(model_sigma(1), q) == (q + 1) * (q + 2) / 2);
  for (const auto& poly : sample_polygons())
    for (Coord q = 0; q <= 5; ++q) CHECK(ehrhart_count(poly, q) == dilate(poly, q).n_points());
}

TEST_CASE("Pick identity and interior count") {
  for (const auto& poly : sample_polygons()) {
    CHECK(poly.area2() == 2 * poly.n_points() - poly.boundary_count() - 2);
    CHECK(poly.interior_count() == interior_hull(poly).n_points());
    CHECK(poly.area2() - poly.n_points() + 2 == poly.interior_count());
  }
}

TEST_CASE("every lattice point of 2Δ is a sum of two lattice points of Δ") {
  for (const auto& poly : sample_polygons()) {
    if (poly.n_points() > 12) continue;
    std::set<LatticePoint> sums;
    for (auto p : poly.points())
      for (auto q : poly.points()) sums.insert(p + q);
    auto doubled = dilate(poly, 2);
    for (auto r : doubled.points()) CHECK(sums.count(r) == 1);
  }
}

TEST_CASE("lattice width") {
  CHECK(lattice_width(model_sigma(6)).width == 6);
  CHECK(lattice_width(model_upsilon(4)).width == 5);
  CHECK(lattice_width(model_upsilon_multiple(2)).width == 4);
  CHECK(lattice_width(from_vertices({{0, 0}, {3, 0}, {0, 7}, {3, 7}})).width == 3);
  for (const auto& poly : sample_polygons()) {
    auto lw = lattice_width(poly);
    CHECK(lw.width == brute_width(poly));
    CHECK(width_along(poly, lw.direction) == lw.width);
    auto inner = interior_hull(poly);
    if (inner.dimension() == 2) {
      Coord step = classify(poly).sigma_degree() >= 2 ? 3 : 2;
      CHECK(lw.width == lattice_width(inner).width + step);
    }
  }
}

TEST_CASE("symmetry groups match the vertex-correspondence oracle") {
  CHECK(symmetry_group(model_sigma(3)).size() == 6);
  CHECK(symmetry_group(from_vertices({{0, 0}, {1, 0}, {0, 1}, {1, 1}})).size() == 8);
  CHECK(symmetry_group(from_vertices({{0, 0}, {3, 0}, {4, 2}, {1, 4}, {-1, 2}})).size() == 1);
  for (const auto& poly : sample_polygons()) {
    auto group = symmetry_group(poly);
    CHECK(group.front() == AffineUnimodularMap::identity());
    std::set<std::tuple<Coord, Coord, Coord, Coord, Coord, Coord>> ours;
    for (const auto& g : group) {
      CHECK(g.apply(poly.points()) == poly.points());
      ours.insert({g.m00, g.m01, g.m10, g.m11, g.shift.x, g.shift.y});
    }
    CHECK(ours == brute_symmetries(poly));
    for (const auto& g : group) {
      CHECK(std::find(group.begin(), group.end(), g.inverse()) != group.end());
      for (const auto& h : group) CHECK(std::find(group.begin(), group.end(), g.after(h)) != group.end());
    }
  }
}

TEST_CASE("canonical form is invariant under unimodular maps") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> small(-2, 2);
  for (const auto& poly : sample_polygons()) {
    for (int trial = 0; trial < 4; ++trial) {
      AffineUnimodularMap m;
      do {
        m.m00 = small(rng);
        m.m01 = small(rng);
        m.m10 = small(rng);
        m.m11 = small(rng);
      } while (m.det() != 1 && m.det() != -1);
      m.shift = {small(rng), small(rng)};
      auto image = LatticePolygon::hull_of(m.apply(poly.points()).points());
      CHECK(canonical_form(image) == canonical_form(poly));
      CHECK(polygon_hash(image) == polygon_hash(poly));
      auto w = equivalence(poly, image);
      REQUIRE(w.has_value());
      CHECK(w->apply(poly.points()) == image.points());
    }
  }
  CHECK(polygon_hash(model_sigma(2)) != polygon_hash(model_lawrence(2, 2)));
}

TEST_CASE("classification of the standard families") {
  using Tag = PolygonClass::Tag;
  auto s3 = classify(from_vertices({{0, 0}, {0, 3}, {3, 0}}));
  CHECK(s3.tag == Tag::SigmaMultiple);
  CHECK(s3.d == 3);
  AffineUnimodularMap m{2, 1, 1, 1, {5, -2}};
  auto s3img = classify(LatticePolygon::hull_of(m.apply(model_sigma(3).points()).points()));
  CHECK(s3img.tag == Tag::SigmaMultiple);
  CHECK(s3img.d == 3);
  auto u2 = classify(from_vertices({{-1, -1}, {2, 0}, {0, 2}}));
  CHECK(u2.tag == Tag::UpsilonD);
  CHECK(u2.d == 2);
  auto lp = classify(from_vertices({{0, 0}, {4, 0}, {3, 1}, {0, 1}}));
  CHECK(lp.tag == Tag::LawrencePrism);
  CHECK(lp.a == 4);
  CHECK(lp.b == 3);
  CHECK(classify(model_sigma(2)).tag == Tag::TwoSigma);
  CHECK(classify(model_sigma(2)).sigma_degree() == 2);
  CHECK(classify(model_upsilon_multiple(2)).tag == Tag::TwoUpsilon);
  CHECK(classify(model_sigma(1)).pathological());
  CHECK(classify(model_upsilon(1)).pathological());
  CHECK(classify(model_upsilon(3)).exceptional());
  auto other = classify(from_vertices({{0, 0}, {3, 0}, {4, 2}, {1, 4}, {-1, 2}}));
  CHECK(other.tag == Tag::Other);
  CHECK_FALSE(other.witness.has_value());
  for (const auto& poly : sample_polygons()) {
    auto pc = classify(poly);
    if (!pc.witness) continue;
    LatticePolygon model;
    switch (pc.tag) {
      case Tag::SigmaMultiple:
      case Tag::TwoSigma:
        model = model_sigma(pc.sigma_degree());
        break;
      case Tag::UpsilonD:
        model = model_upsilon(pc.d);
        break;
      case Tag::TwoUpsilon:
        model = model_upsilon_multiple(2);
        break;
      case Tag::LawrencePrism:
        model = model_lawrence(pc.a, pc.b);
        break;
      case Tag::Other:
        break;
    }
    CHECK(pc.witness->apply(poly.points()) == model.points());
  }
}

TEST_CASE("translate counts") {
  auto s4 = model_sigma(4);
  CHECK(translate_count(interior_hull(s4), s4) == 9);
  CHECK(translate_count(s4, s4) == 0);
  LatticePoint c{1, 1};
  CHECK(translate_count(LatticePolygon::hull_of(std::span<const LatticePoint>(&c, 1)), model_sigma(3)) == 9);
  CHECK_THROWS_AS(translate_count(LatticePolygon(), s4), EmptyInner);
}

TEST_CASE("vertex pruning") {
  auto pruned = prune_vertex(model_sigma(3), {3, 0});
  CHECK(pruned.n_points() == 9);
  CHECK(pruned.vertices().size() == 4);
  CHECK_THROWS_AS(prune_vertex(model_sigma(1), {0, 0}), DimensionError);
  CHECK(prune_vertex(from_vertices({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), {1, 1}) == model_sigma(1));
  CHECK_THROWS_AS(prune_vertex(model_sigma(3), {1, 1}), NotAVertex);
}

TEST_CASE("lattice-width minimality") {
  for (Coord d = 1; d <= 5; ++d) CHECK(is_lw_minimal(model_sigma(d)));
  CHECK(is_lw_minimal(model_upsilon_multiple(2)));
  CHECK_FALSE(is_lw_minimal(from_vertices({{0, 0}, {5, 0}, {0, 2}, {5, 2}})));
  for (const auto& poly : sample_polygons()) {
    if (!is_lw_minimal(poly)) continue;
    auto m = square_embedding(poly);
    REQUIRE(m.has_value());
    Coord w = lattice_width(poly).width;
    for (auto p : poly.points()) {
      auto q = (*m)(p);
      CHECK(q.x >= 0);
      CHECK(q.y >= 0);
      CHECK(q.x <= w);
      CHECK(q.y <= w);
    }
  }
}

TEST_CASE("sigma point") {
  CHECK(sigma_point(model_sigma(2)) == LatticePoint{4, 4});
  CHECK(sigma_point(model_upsilon(1)) == LatticePoint{0, 0});
  CHECK(sigma_point(model_sigma(1)) == LatticePoint{1, 1});
}
