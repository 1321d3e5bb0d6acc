#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sara/geometry.hpp"
#include "sara/rng.hpp"

using namespace sara;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("laguerre distance sign convention") {
  const Circle c{{0, 0}, 3};
  CHECK(laguerre_dist_sq(c, {5, 0}) == doctest::Approx(16.0));
  CHECK(laguerre_dist_sq(c, {3, 0}) == doctest::Approx(0.0));
  CHECK(laguerre_dist_sq(c, {0, 0}) == doctest::Approx(-9.0));
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Circle cc{{rng.uniform(-5, 5), rng.uniform(-5, 5)}, rng.uniform(0.1, 4)};
    const Point p{rng.uniform(-8, 8), rng.uniform(-8, 8)};
    const bool inside = dist(cc.center, p) < cc.radius;
    CHECK(inside == (laguerre_dist_sq(cc, p) < 0.0));
  }
}

TEST_CASE("radical axis: equal radii is the perpendicular bisector") {
  const Line l = radical_axis({{0, 0}, 2}, {{4, 0}, 2});
  CHECK(std::abs(l.eval({2, 0})) < 1e-12);
  CHECK(std::abs(l.eval({2, 7})) < 1e-12);
  CHECK(std::abs(l.b) < 1e-12);  // vertical line
}

TEST_CASE("radical axis: solves x^2-9 = (x-4)^2-1") {
  const Line l = radical_axis({{0, 0}, 3}, {{4, 0}, 1});
  CHECK(std::abs(l.eval({3, 0})) < 1e-12);
  CHECK(std::abs(l.eval({3, -2})) < 1e-12);
}

TEST_CASE("radical axis passes through intersection points") {
  Rng rng(7);
  int checked = 0;
  while (checked < 100) {
    const Circle a{{rng.uniform(0, 10), rng.uniform(0, 10)}, rng.uniform(1, 5)};
    const Circle b{{rng.uniform(0, 10), rng.uniform(0, 10)}, rng.uniform(1, 5)};
    if (dist(a.center, b.center) < 0.2) continue;
    const auto pts = circle_intersections(a, b);
    if (pts.size() != 2) continue;
    const Line l = radical_axis(a, b);
    for (const Point& p : pts) CHECK(std::abs(l.eval(p)) < 1e-9);
    // Perpendicular to the segment of centers.
    const Point d = b.center - a.center;
    CHECK(std::abs(dot(Point{l.a, l.b}, Point{-d.y, d.x})) < 1e-9 * norm(d));
    ++checked;
  }
  CHECK_THROWS_AS(radical_axis({{1, 1}, 2}, {{1, 1}, 3}), CoincidentCenters);
}

TEST_CASE("clip_to_aoi basics") {
  const Rect aoi{0, 0, 80, 80};
  // x >= 0  <=>  -x <= 0
  const auto full = clip_to_aoi({{Line{-1, 0, 0}}}, aoi);
  REQUIRE(full.has_value());
  CHECK(full->area() == doctest::Approx(6400.0));
  // x >= 100
  CHECK_FALSE(clip_to_aoi({{Line{-1, 0, 100}}}, aoi).has_value());
}

TEST_CASE("clip_to_aoi matches a grid membership oracle") {
  Rng rng(21);
  const Rect aoi{0, 0, 20, 20};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<HalfPlane> hps;
    const int k = 1 + static_cast<int>(rng.uniform(0, 5));
    for (int i = 0; i < k; ++i) {
      const double ang = rng.uniform(0, 2 * std::numbers::pi);
      const double off = rng.uniform(-15, 25);
      hps.push_back({Line{std::cos(ang), std::sin(ang), -off}});
    }
    const auto poly = clip_to_aoi(hps, aoi);
    for (double y = 0.05; y < 20; y += 0.1) {
      for (double x = 0.05; x < 20; x += 0.1) {
        const Point p{x, y};
        double worst = -1e18;
        for (const auto& hp : hps) worst = std::max(worst, hp.line.eval(p));
        if (worst < -1e-6) {  // strictly inside every half plane
          REQUIRE(poly.has_value());
          CHECK(poly->contains(p, 1e-6));
        } else if (worst > 1e-6 && poly.has_value()) {
          CHECK_FALSE(poly->contains(p, -1e-6));
        }
      }
    }
  }
}

TEST_CASE("farthest and closest vertex queries") {
  const ConvexPolygon sq{{{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}};
  const auto f = farthest_vertex(sq, {0, 0});
  CHECK(f.dist == doctest::Approx(std::sqrt(0.5)));
  CHECK(f.index == 0);  // ties break to the smallest index

  const ConvexPolygon unit{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  const auto g = farthest_vertex(unit, {0, 0});
  CHECK(g.dist == doctest::Approx(std::sqrt(2.0)));
  CHECK(g.p.x == doctest::Approx(1.0));
  CHECK(g.p.y == doctest::Approx(1.0));

  CHECK(closest_point(unit, {0.3, 0.7}).dist == doctest::Approx(0.0));
  const auto c = closest_point(unit, {0, -1});
  CHECK(c.dist == doctest::Approx(1.0));
  CHECK(c.p.x == doctest::Approx(0.0));
  CHECK(c.p.y == doctest::Approx(0.0));

  CHECK_THROWS_AS(farthest_vertex(ConvexPolygon{{{0, 0}, {1, 0}}}, {0, 0}), DegenerateCell);
  CHECK_THROWS_AS(closest_point(ConvexPolygon{{{0, 0}, {1, 0}}}, {0, 0}), DegenerateCell);
}

TEST_CASE("farthest matches brute force, closest matches boundary sampling") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto poly = oracle::random_convex_polygon(rng, Rect{0, 0, 10, 10}, 12);
    if (poly.v.size() < 3) continue;
    const Point gen{rng.uniform(-2, 12), rng.uniform(-2, 12)};
    double brute = 0.0;
    for (const Point& v : poly.v) brute = std::max(brute, dist(v, gen));
    CHECK(farthest_vertex(poly, gen).dist == doctest::Approx(brute));

    double sampled = 1e18;
    for (size_t i = 0; i < poly.v.size(); ++i) {
      const Point a = poly.v[i], b = poly.v[(i + 1) % poly.v.size()];
      const int steps = std::max(2, static_cast<int>(dist(a, b) / 1e-3));
      for (int s = 0; s <= steps; ++s) {
        sampled = std::min(sampled, dist(a + (static_cast<double>(s) / steps) * (b - a), gen));
      }
    }
    const double got = closest_point(poly, gen).dist;
    if (poly.contains(gen)) {
      CHECK(got == doctest::Approx(0.0));
    } else {
      CHECK(got == doctest::Approx(sampled).epsilon(1e-3));
    }
  }
}

TEST_CASE("two equal circles split the AoI at the bisector") {
  const Rect aoi{0, 0, 10, 10};
  const std::vector<Circle> cs{{{3, 5}, 2}, {{7, 5}, 2}};
  const PowerDiagram d = build_power_diagram(cs, aoi);
  REQUIRE_FALSE(d.cells[0].is_null());
  REQUIRE_FALSE(d.cells[1].is_null());
  CHECK(d.cells[0].shape->area() == doctest::Approx(50.0));
  CHECK(d.cells[1].shape->area() == doctest::Approx(50.0));
  for (const Point& v : d.cells[0].shape->v) CHECK(v.x <= 5.0 + 1e-9);
  CHECK(d.cells[0].neighbors == std::vector<int>{1});
  CHECK(d.cells[1].neighbors == std::vector<int>{0});
}

TEST_CASE("equal radii reduce to the ordinary Voronoi diagram") {
  Rng rng(31);
  const Rect aoi{0, 0, 40, 40};
  const auto sites = oracle::random_circles(rng, aoi, 25, 3.0, 3.0);
  const PowerDiagram d = build_power_diagram(sites, aoi);
  for (size_t i = 0; i < sites.size(); ++i) {
    // Independent route: clip the AoI by midpoint-constructed bisectors.
    std::vector<HalfPlane> hps;
    for (size_t j = 0; j < sites.size(); ++j) {
      if (j == i) continue;
      const Point mid = 0.5 * (sites[i].center + sites[j].center);
      const Point dv = sites[j].center - sites[i].center;
      const double n = norm(dv);
      hps.push_back({Line{dv.x / n, dv.y / n, -(dv.x * mid.x + dv.y * mid.y) / n}});
    }
    const auto voro = clip_to_aoi(hps, aoi);
    REQUIRE_FALSE(d.cells[i].is_null());
    REQUIRE(voro.has_value());
    REQUIRE(voro->v.size() == d.cells[i].shape->v.size());
    const auto& a = voro->v;
    const auto& b = d.cells[i].shape->v;
    size_t shift = 0;
    for (; shift < b.size(); ++shift) {
      if (dist(a[0], b[shift]) < 1e-7) break;
    }
    REQUIRE(shift < b.size());
    for (size_t k = 0; k < a.size(); ++k) {
      CHECK(dist(a[k], b[(shift + k) % b.size()]) < 1e-7);
    }
  }
}

TEST_CASE("dominated generator gets a null cell") {
  const Rect aoi{-5, -5, 5, 5};
  std::vector<Circle> cs{{{0, 0}, 0.5}, {{2, 0}, 3}, {{-2, 0}, 3}, {{0, 2}, 3}, {{0, -2}, 3}};
  const PowerDiagram d = build_power_diagram(cs, aoi);
  CHECK(d.cells[0].is_null());
  CHECK(d.cells[0].neighbors.empty());
  // Grid oracle: the dominated circle wins no grid point.
  for (double y = -4.95; y < 5; y += 0.1) {
    for (double x = -4.95; x < 5; x += 0.1) {
      CHECK(oracle::power_argmin(cs, {x, y}) != 0);
    }
  }
}

TEST_CASE("diagram matches the power-distance oracle; Theorem 3.1; tessellation") {
  Rng rng(101);
  const Rect aoi{0, 0, 80, 80};
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 10 + static_cast<int>(rng.uniform(0, 41));
    const auto cs = oracle::random_circles(rng, aoi, n, 1.0, 8.0);
    const PowerDiagram d = build_power_diagram(cs, aoi);

    double area = 0.0;
    for (const Cell& c : d.cells) {
      if (!c.is_null()) area += c.shape->area();
      for (int nb : c.neighbors) {
        const auto& back = d.cells[nb].neighbors;
        CHECK(std::find(back.begin(), back.end(), c.generator) != back.end());
      }
    }
    CHECK(area == doctest::Approx(aoi.area()).epsilon(1e-6));

    for (double y = 0.125; y < 80; y += 1.0) {
      for (double x = 0.125; x < 80; x += 1.0) {
        const Point p{x, y};
        const int best = oracle::power_argmin(cs, p);
        const double bestpw = oracle::power_of(cs[best], p);
        bool in_some = false;
        for (const Cell& c : d.cells) {
          if (c.is_null() || !c.shape->contains(p, 1e-7)) continue;
          in_some = true;
          CHECK(oracle::power_of(cs[c.generator], p) <= bestpw + 1e-9);
          // Theorem 3.1: covered interior points of a cell are covered by
          // its generator.
          if (oracle::in_any_disk(cs, p, -1e-7) && c.shape->contains(p, -1e-7)) {
            CHECK(oracle::in_disk(cs[c.generator], p, 1e-7));
          }
        }
        CHECK(in_some);
      }
    }
  }
}

TEST_SUITE_END();
