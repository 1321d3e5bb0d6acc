#include "sara/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sara {

namespace {
constexpr double kProbe = 1e-7;  // limit-point probing radius
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

CoverageClass classify(const Circle& sensor, const ConvexPolygon& cell) {
  const FarthestVertex far = farthest_vertex(cell, sensor.center);
  if (sensor.radius >= far.dist) return CoverageClass::FullyCovers;
  const ClosestPoint close = closest_point(cell, sensor.center);
  if (sensor.radius < close.dist) return CoverageClass::CoversNothing;
  return CoverageClass::PartiallyCovers;
}

bool is_redundant(const Circle& sensor, const std::vector<Circle>& candidates) {
  const double r = sensor.radius;
  std::vector<const Circle*> rel;
  for (const Circle& c : candidates) {
    if (c.radius <= kGeomEps) continue;
    const double d = dist(sensor.center, c.center);
    if (d >= r + c.radius) continue;  // no overlap with the closed disk interior
    if (d + r <= c.radius + kGeomEps) return true;  // whole disk inside one candidate
    rel.push_back(&c);
  }
  if (rel.empty()) return false;
  if (r <= kGeomEps) {
    for (const Circle* c : rel) {
      if (dist(sensor.center, c->center) <= c->radius + kGeomEps) return true;
    }
    return false;
  }

  auto covered = [&](Point p, const Circle* skip1 = nullptr, const Circle* skip2 = nullptr) {
    for (const Circle* c : rel) {
      if (c == skip1 || c == skip2) continue;
      if (dist(p, c->center) <= c->radius + kGeomEps) return true;
    }
    return false;
  };

  // Every arc of the sensing circle boundary must lie inside some candidate.
  std::vector<double> angles;
  for (const Circle* c : rel) {
    const double d = dist(sensor.center, c->center);
    const double arg = (d * d + r * r - c->radius * c->radius) / (2.0 * d * r);
    if (arg >= 1.0 || arg <= -1.0) continue;
    const double phi = std::atan2(c->center.y - sensor.center.y, c->center.x - sensor.center.x);
    const double w = std::acos(arg);
    angles.push_back(phi - w);
    angles.push_back(phi + w);
  }
  auto on_boundary = [&](double a) {
    return Point{sensor.center.x + r * std::cos(a), sensor.center.y + r * std::sin(a)};
  };
  if (angles.empty()) {
    if (!covered(on_boundary(0.0))) return false;
  } else {
    for (double& a : angles) a = std::fmod(std::fmod(a, kTwoPi) + kTwoPi, kTwoPi);
    std::sort(angles.begin(), angles.end());
    for (size_t i = 0; i < angles.size(); ++i) {
      const double a0 = angles[i];
      const double a1 = (i + 1 < angles.size()) ? angles[i + 1] : angles[0] + kTwoPi;
      if (!covered(on_boundary(0.5 * (a0 + a1)))) return false;
    }
  }

  // No hole may open in the interior: every candidate-candidate intersection
  // point strictly inside the disk must be covered by a third disk.
  for (size_t i = 0; i < rel.size(); ++i) {
    for (size_t j = i + 1; j < rel.size(); ++j) {
      for (const Point& p : circle_intersections(*rel[i], *rel[j])) {
        if (dist(p, sensor.center) >= r - kGeomEps) continue;
        if (!covered(p, rel[i], rel[j])) return false;
      }
    }
  }
  return true;
}

bool ResidualRegion::contains(Point p, double eps) const {
  if (!base.contains(p, eps)) return false;
  for (const Circle& c : subtracted) {
    if (dist(p, c.center) < c.radius - eps) return false;
  }
  return true;
}

namespace {

// A candidate is kept only when it is a limit of genuinely uncovered points
// of the region. Generic transversal configurations are resolved
// analytically; near-tangent ones fall back to a short probe.
struct RegionScan {
  const ResidualRegion& region;
  Point gen;
  std::vector<const Circle*> circles;  // subtracted with radius > eps

  explicit RegionScan(const ResidualRegion& r, Point g) : region(r), gen(g) {
    for (const Circle& c : r.subtracted) {
      if (c.radius > kGeomEps) circles.push_back(&c);
    }
  }

  bool probe(Point p) const {
    constexpr int kDirs = 64;
    for (int k = 0; k < kDirs; ++k) {
      const double a = kTwoPi * k / kDirs;
      const Point q{p.x + kProbe * std::cos(a), p.y + kProbe * std::sin(a)};
      if (!region.base.contains(q, 0.0)) continue;
      bool cov = false;
      for (const Circle* c : circles) {
        if (dist(q, c->center) <= c->radius) {
          cov = true;
          break;
        }
      }
      if (!cov) return true;
    }
    return false;
  }

  // `on` lists circles P is known to lie on (by construction).
  bool valid(Point p) const {
    if (!region.base.contains(p, kGeomEps)) return false;
    std::vector<const Circle*> on;
    for (const Circle* c : circles) {
      const double g = dist(p, c->center) - c->radius;
      if (g < -kProbe) return false;  // strictly covered
      if (g <= kProbe) on.push_back(c);
    }
    const double margin = region.base.inner_margin(p);
    if (on.empty()) return true;  // polygon point clear of every circle
    if (on.size() == 1) {
      const Point n_c = unit(p - on[0]->center);
      if (margin > kProbe) return true;  // outward side of the circle is free
      // On the polygon boundary: free unless the circle hugs the edge from
      // inside (outward normal opposite to the inward edge normal).
      const int e = nearest_edge(p);
      if (e < 0) return probe(p);
      const Point inw = inward_normal(e);
      if (near_vertex(p)) return probe(p);
      if (dot(n_c, inw) > -1.0 + 1e-9) return true;
      return probe(p);
    }
    if (on.size() == 2 && margin > kProbe) {
      const Point n1 = unit(p - on[0]->center);
      const Point n2 = unit(p - on[1]->center);
      if (dot(n1, n2) > -1.0 + 1e-9) return true;  // transversal crossing
      return probe(p);
    }
    return probe(p);
  }

  static Point unit(Point v) {
    const double n = norm(v);
    return n < kGeomEps ? Point{1.0, 0.0} : (1.0 / n) * v;
  }
  int nearest_edge(Point p) const {
    const auto& v = region.base.v;
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < v.size(); ++i) {
      const Point a = v[i], b = v[(i + 1) % v.size()];
      const double len = norm(b - a);
      if (len < kGeomEps) continue;
      const double d = std::abs(cross(b - a, p - a)) / len;
      if (d < bd) {
        bd = d;
        best = static_cast<int>(i);
      }
    }
    return bd <= kProbe ? best : -1;
  }
  Point inward_normal(int e) const {
    const auto& v = region.base.v;
    const Point a = v[e], b = v[(e + 1) % v.size()];
    const Point t = unit(b - a);
    return {-t.y, t.x};  // CCW polygon: interior on the left
  }
  bool near_vertex(Point p) const {
    for (const Point& q : region.base.v) {
      if (dist(p, q) <= kProbe) return true;
    }
    return false;
  }

  void candidates(bool for_closest, std::vector<Point>& out) const {
    const auto& v = region.base.v;
    const size_t n = v.size();
    for (const Point& p : v) out.push_back(p);
    for (const Circle* c : circles) {
      for (size_t i = 0; i < n; ++i) {
        segment_circle(v[i], v[(i + 1) % n], *c, out);
      }
      const Point dir = unit(c->center - gen);
      out.push_back(c->center + c->radius * dir);  // far point of the circle
      if (for_closest) out.push_back(c->center - c->radius * dir);
    }
    for (size_t i = 0; i < circles.size(); ++i) {
      for (size_t j = i + 1; j < circles.size(); ++j) {
        for (const Point& p : circle_intersections(*circles[i], *circles[j])) out.push_back(p);
      }
    }
    if (for_closest) {
      out.push_back(gen);
      for (size_t i = 0; i < n; ++i) {
        const Point a = v[i], b = v[(i + 1) % n];
        const double den = norm_sq(b - a);
        if (den < kGeomEps * kGeomEps) continue;
        const double t = std::clamp(dot(gen - a, b - a) / den, 0.0, 1.0);
        out.push_back(a + t * (b - a));
      }
    }
  }

  static void segment_circle(Point a, Point b, const Circle& c, std::vector<Point>& out) {
    segment_circle_intersections(a, b, c, out);
  }
};

std::optional<RegionPoint> scan_region(const ResidualRegion& region, Point gen, bool closest) {
  if (region.base.v.size() < 3) return std::nullopt;
  RegionScan scan(region, gen);
  if (scan.circles.empty()) {
    if (closest) {
      const ClosestPoint c = closest_point(region.base, gen);
      return RegionPoint{c.p, c.dist};
    }
    const FarthestVertex f = farthest_vertex(region.base, gen);
    return RegionPoint{f.p, f.dist};
  }
  std::vector<Point> cand;
  scan.candidates(closest, cand);
  std::optional<RegionPoint> best;
  for (const Point& p : cand) {
    const double d = dist(p, gen);
    if (best) {
      if (closest ? d >= best->dist : d <= best->dist) continue;
    }
    if (scan.valid(p)) best = RegionPoint{p, d};
  }
  return best;
}

}  // namespace

std::optional<RegionPoint> residual_farthest(const ResidualRegion& region, Point generator) {
  return scan_region(region, generator, false);
}

std::optional<RegionPoint> residual_closest(const ResidualRegion& region, Point generator) {
  return scan_region(region, generator, true);
}

Point opposite_farthest(const Circle& c_l, const Circle& c_k, Point f) {
  const std::vector<Point> pts = circle_intersections(c_l, c_k);
  if (pts.empty()) throw NoIntersection();
  if (pts.size() == 1) throw TangentCircles();
  const double d0 = dist(pts[0], f);
  const double d1 = dist(pts[1], f);
  if (std::min(d0, d1) > kBoundaryTol) {
    throw std::invalid_argument("f is not an intersection point of the circles");
  }
  if (std::max(d0, d1) <= kBoundaryTol) throw TangentCircles();
  return d0 > d1 ? pts[0] : pts[1];
}

FarthestKind vertex_kind(const Circle& s, const Cell& cell, int vertex_index,
                         const std::vector<Circle>& circles) {
  if (cell.is_null()) throw DegenerateCell();
  const ConvexPolygon& poly = *cell.shape;
  const int n = static_cast<int>(poly.v.size());
  const Point f = poly.v[vertex_index];
  const int src_in = cell.edge_src[(vertex_index + n - 1) % n];
  const int src_out = cell.edge_src[vertex_index];
  if (src_in < 0 || src_out < 0 || src_in == src_out) return FarthestKind::BoundaryStrict;
  Point fprime;
  try {
    fprime = opposite_farthest(circles[src_in], circles[src_out], f);
  } catch (const std::exception&) {
    return FarthestKind::BoundaryStrict;
  }
  const double pw_s = laguerre_dist_sq(s, fprime);
  const double pw_l = laguerre_dist_sq(circles[src_in], fprime);
  const double pw_k = laguerre_dist_sq(circles[src_out], fprime);
  // Strictly inside the cell-side angle of the two axes.
  if (pw_s < pw_l - kGeomEps && pw_s < pw_k - kGeomEps) return FarthestKind::BoundaryLoose;
  return FarthestKind::BoundaryStrict;
}

FarthestKind farthest_kind(const Circle& s, const Cell& cell, const std::vector<Circle>& circles) {
  if (cell.is_null()) throw DegenerateCell();
  const FarthestVertex fv = farthest_vertex(*cell.shape, s.center);
  if (fv.dist < s.radius - kBoundaryTol) return FarthestKind::Interior;
  return vertex_kind(s, cell, fv.index, circles);
}

}  // namespace sara
