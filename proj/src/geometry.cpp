#include "sara/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace sara {

Line radical_axis(const Circle& c1, const Circle& c2) {
  const Point d = c2.center - c1.center;
  if (norm_sq(d) < kGeomEps * kGeomEps) throw CoincidentCenters();
  // laguerre(c1, p) = laguerre(c2, p) expands to 2*(x2-x1)x + 2*(y2-y1)y + k = 0.
  double a = 2.0 * d.x;
  double b = 2.0 * d.y;
  double c = (norm_sq(c1.center) - c1.radius * c1.radius) -
             (norm_sq(c2.center) - c2.radius * c2.radius);
  const double n = std::hypot(a, b);
  return Line{a / n, b / n, c / n};
}

double ConvexPolygon::area() const {
  double s = 0.0;
  const size_t n = v.size();
  for (size_t i = 0; i < n; ++i) {
    const Point& p = v[i];
    const Point& q = v[(i + 1) % n];
    s += cross(p, q);
  }
  return 0.5 * s;
}

bool ConvexPolygon::contains(Point p, double eps) const {
  const size_t n = v.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    const Point a = v[i];
    const Point b = v[(i + 1) % n];
    if (cross(b - a, p - a) < -eps * norm(b - a)) return false;
  }
  return true;
}

double ConvexPolygon::inner_margin(Point p) const {
  const size_t n = v.size();
  double m = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    const Point a = v[i];
    const Point b = v[(i + 1) % n];
    const double len = norm(b - a);
    if (len < kGeomEps) continue;
    m = std::min(m, cross(b - a, p - a) / len);
  }
  return m;
}

FarthestVertex farthest_vertex(const ConvexPolygon& poly, Point from) {
  if (poly.v.size() < 3) throw DegenerateCell();
  FarthestVertex best;
  best.dist = -1.0;
  for (size_t i = 0; i < poly.v.size(); ++i) {
    const double d = dist(poly.v[i], from);
    if (d > best.dist + kGeomEps) {
      best = {poly.v[i], d, static_cast<int>(i)};
    }
  }
  return best;
}

static Point project_on_segment(Point a, Point b, Point p) {
  const Point ab = b - a;
  const double den = norm_sq(ab);
  if (den < kGeomEps * kGeomEps) return a;
  double t = dot(p - a, ab) / den;
  t = std::clamp(t, 0.0, 1.0);
  return a + t * ab;
}

ClosestPoint closest_point(const ConvexPolygon& poly, Point from) {
  if (poly.v.size() < 3) throw DegenerateCell();
  if (poly.contains(from)) return {from, 0.0};
  ClosestPoint best;
  best.dist = std::numeric_limits<double>::infinity();
  const size_t n = poly.v.size();
  for (size_t i = 0; i < n; ++i) {
    const Point q = project_on_segment(poly.v[i], poly.v[(i + 1) % n], from);
    const double d = dist(q, from);
    if (d < best.dist) best = {q, d};
  }
  return best;
}

namespace {

// Working polygon for repeated half-plane clipping. src[i] tags the edge
// v[i] -> v[i+1] with the generator id that produced it (-1 = AoI).
struct ClipPoly {
  std::vector<Point> v;
  std::vector<int> src;

  void init_rect(const Rect& r) {
    v = {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
    src = {-1, -1, -1, -1};
  }
  bool empty() const { return v.size() < 3; }
};

// Clips to {eval <= 0}. Returns false when the result is empty.
bool clip_halfplane(ClipPoly& poly, const Line& ln, int new_src) {
  const size_t n = poly.v.size();
  if (n < 3) return false;
  static thread_local std::vector<Point> out_v;
  static thread_local std::vector<int> out_s;
  static thread_local std::vector<double> side;
  out_v.clear();
  out_s.clear();
  side.resize(n);
  bool all_in = true;
  for (size_t i = 0; i < n; ++i) {
    side[i] = ln.eval(poly.v[i]);
    if (side[i] > kGeomEps) all_in = false;
  }
  if (all_in) return true;
  for (size_t i = 0; i < n; ++i) {
    const size_t j = (i + 1) % n;
    const bool ina = side[i] <= kGeomEps;
    const bool inb = side[j] <= kGeomEps;
    if (ina) {
      if (inb) {
        out_v.push_back(poly.v[i]);
        out_s.push_back(poly.src[i]);
      } else {
        out_v.push_back(poly.v[i]);
        out_s.push_back(poly.src[i]);
        const double t = side[i] / (side[i] - side[j]);
        out_v.push_back(poly.v[i] + t * (poly.v[j] - poly.v[i]));
        out_s.push_back(new_src);  // edge running along the clip line
      }
    } else if (inb) {
      const double t = side[i] / (side[i] - side[j]);
      out_v.push_back(poly.v[i] + t * (poly.v[j] - poly.v[i]));
      out_s.push_back(poly.src[i]);
    }
  }
  // Collapse degenerate edges (< kGeomEps).
  poly.v.clear();
  poly.src.clear();
  for (size_t i = 0; i < out_v.size(); ++i) {
    if (!poly.v.empty() && dist(poly.v.back(), out_v[i]) < kGeomEps) {
      poly.src.back() = out_s[i];
      continue;
    }
    poly.v.push_back(out_v[i]);
    poly.src.push_back(out_s[i]);
  }
  while (poly.v.size() >= 2 && dist(poly.v.front(), poly.v.back()) < kGeomEps) {
    poly.v.pop_back();
    poly.src.pop_back();
  }
  if (poly.v.size() < 3) {
    poly.v.clear();
    poly.src.clear();
    return false;
  }
  return true;
}

double max_dist_to_vertices(const ClipPoly& poly, Point from) {
  double m = 0.0;
  for (const Point& p : poly.v) m = std::max(m, dist(p, from));
  return m;
}

}  // namespace

std::optional<ConvexPolygon> clip_to_aoi(const std::vector<HalfPlane>& hps, const Rect& aoi) {
  ClipPoly poly;
  poly.init_rect(aoi);
  for (const HalfPlane& hp : hps) {
    if (!clip_halfplane(poly, hp.line, -1)) return std::nullopt;
  }
  if (poly.empty() || std::abs(ConvexPolygon{poly.v}.area()) < kGeomEps) return std::nullopt;
  return ConvexPolygon{std::move(poly.v)};
}

GeneratorGrid::GeneratorGrid(const std::vector<Circle>& circles, const Rect& aoi,
                             const std::vector<char>& active)
    : aoi_(aoi), circles_(&circles) {
  const double span = std::max(aoi.width(), aoi.height());
  cell_ = std::max(1e-6, span / 32.0);
  nx_ = std::max(1, static_cast<int>(std::ceil(aoi.width() / cell_)));
  ny_ = std::max(1, static_cast<int>(std::ceil(aoi.height() / cell_)));
  buckets_.assign(static_cast<size_t>(nx_) * ny_, {});
  for (size_t i = 0; i < circles.size(); ++i) {
    if (!active.empty() && !active[i]) continue;
    const Point p = circles[i].center;
    int cx = std::clamp(static_cast<int>((p.x - aoi.x0) / cell_), 0, nx_ - 1);
    int cy = std::clamp(static_cast<int>((p.y - aoi.y0) / cell_), 0, ny_ - 1);
    buckets_[static_cast<size_t>(cy) * nx_ + cx].push_back(static_cast<int>(i));
    max_radius_ = std::max(max_radius_, circles[i].radius);
  }
}

void GeneratorGrid::collect_within(Point p, double radius, std::vector<int>& out) const {
  out.clear();
  const int cx = std::clamp(static_cast<int>((p.x - aoi_.x0) / cell_), 0, nx_ - 1);
  const int cy = std::clamp(static_cast<int>((p.y - aoi_.y0) / cell_), 0, ny_ - 1);
  const int ring = static_cast<int>(std::ceil(radius / cell_)) + 1;
  const int x0 = std::max(0, cx - ring), x1 = std::min(nx_ - 1, cx + ring);
  const int y0 = std::max(0, cy - ring), y1 = std::min(ny_ - 1, cy + ring);
  const double r2 = radius * radius;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      for (int id : buckets_[static_cast<size_t>(y) * nx_ + x]) {
        if (dist_sq((*circles_)[id].center, p) <= r2) out.push_back(id);
      }
    }
  }
  std::sort(out.begin(), out.end(), [&](int a, int b) {
    const double da = dist_sq((*circles_)[a].center, p);
    const double db = dist_sq((*circles_)[b].center, p);
    if (da != db) return da < db;
    return a < b;
  });
}

Cell build_cell(int idx, const std::vector<Circle>& circles, const Rect& aoi,
                const GeneratorGrid& grid, int exclude, const std::vector<char>* active) {
  Cell cell;
  cell.generator = idx;
  const Circle& me = circles[idx];
  ClipPoly poly;
  poly.init_rect(aoi);

  static thread_local std::vector<int> cand;
  double reach = max_dist_to_vertices(poly, me.center);
  const double rmax = grid.max_radius();
  const double diag = std::hypot(aoi.width(), aoi.height());
  // A generator at distance d sees its radical axis no closer to me than
  // (d^2 - rmax^2) / (2d), so once every uncollected generator is farther
  // than reach + sqrt(reach^2 + rmax^2) none of them can cut the cell.
  // Collect in expanding rounds; clipping shrinks reach and with it the bound.
  double query = std::max(2.0 * rmax, 4.0 * diag / std::sqrt(static_cast<double>(circles.size()) + 1.0));
  double prev_query = -1.0;
  bool alive = true;
  while (alive) {
    grid.collect_within(me.center, query, cand);
    for (int j : cand) {
      if (j == idx || j == exclude) continue;
      if (active && !(*active)[j]) continue;
      const Circle& other = circles[j];
      const double d = dist(me.center, other.center);
      if (d <= prev_query) continue;  // processed in an earlier round
      if (d < kGeomEps) throw CoincidentCenters();
      // Signed position of the axis along the center line, from me.
      const double t = (d * d + me.radius * me.radius - other.radius * other.radius) / (2.0 * d);
      if (t > reach + kGeomEps) continue;  // axis beyond the whole current cell
      if (!clip_halfplane(poly, radical_axis(me, other), j)) {
        alive = false;
        break;
      }
      reach = max_dist_to_vertices(poly, me.center);
    }
    if (!alive) break;
    const double needed = reach + std::sqrt(reach * reach + rmax * rmax) + kGeomEps;
    if (query >= needed || query > diag + rmax) break;
    prev_query = query;
    query = std::max(needed, 2.0 * query);
  }
  if (alive && (poly.empty() || std::abs(ConvexPolygon{poly.v}.area()) < kGeomEps)) {
    alive = false;
  }
  if (!alive) return cell;

  cell.shape = ConvexPolygon{poly.v};
  cell.edge_src = poly.src;
  for (size_t i = 0; i < poly.v.size(); ++i) {
    const int s = poly.src[i];
    if (s < 0) continue;
    if (dist(poly.v[i], poly.v[(i + 1) % poly.v.size()]) > kGeomEps) {
      cell.neighbors.push_back(s);
    }
  }
  std::sort(cell.neighbors.begin(), cell.neighbors.end());
  cell.neighbors.erase(std::unique(cell.neighbors.begin(), cell.neighbors.end()),
                       cell.neighbors.end());
  return cell;
}

PowerDiagram build_power_diagram(const std::vector<Circle>& circles, const Rect& aoi) {
  for (const Circle& c : circles) {
    if (!aoi.contains(c.center)) throw std::invalid_argument("generator outside AoI");
  }
  PowerDiagram d;
  d.aoi = aoi;
  GeneratorGrid grid(circles, aoi);
  d.cells.reserve(circles.size());
  for (size_t i = 0; i < circles.size(); ++i) {
    d.cells.push_back(build_cell(static_cast<int>(i), circles, aoi, grid));
  }
  // Shared edges are detected independently on both sides; symmetrize.
  for (const Cell& c : d.cells) {
    for (int n : c.neighbors) {
      auto& back = d.cells[n].neighbors;
      if (!std::binary_search(back.begin(), back.end(), c.generator)) {
        back.insert(std::lower_bound(back.begin(), back.end(), c.generator), c.generator);
      }
    }
  }
  return d;
}

void segment_circle_intersections(Point a, Point b, const Circle& c, std::vector<Point>& out) {
  const Point d = b - a;
  const double A = norm_sq(d);
  if (A < kGeomEps * kGeomEps) return;
  const Point f = a - c.center;
  const double B = 2.0 * dot(f, d);
  const double C = norm_sq(f) - c.radius * c.radius;
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  for (const double t : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)}) {
    if (t >= -kGeomEps && t <= 1.0 + kGeomEps) out.push_back(a + std::clamp(t, 0.0, 1.0) * d);
  }
}

std::vector<Point> circle_intersections(const Circle& c1, const Circle& c2) {
  const double d = dist(c1.center, c2.center);
  if (d < kGeomEps) return {};
  const double a = (c1.radius * c1.radius - c2.radius * c2.radius + d * d) / (2.0 * d);
  const double h2 = c1.radius * c1.radius - a * a;
  if (h2 < -kBoundaryTol * kBoundaryTol) return {};
  const Point u = (1.0 / d) * (c2.center - c1.center);
  const Point mid = c1.center + a * u;
  if (h2 <= kBoundaryTol * kBoundaryTol) return {mid};
  const double h = std::sqrt(h2);
  const Point perp{-u.y, u.x};
  return {mid + h * perp, mid - h * perp};
}

}  // namespace sara
