// Voronoi-Laguerre (power diagram) kernel: power distances, radical axes,
// convex cell construction by half-plane clipping, neighbor graphs.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sara {

// Absolute tolerance on coordinates (m) and power distances (m^2).
inline constexpr double kGeomEps = 1e-9;
// Looser tolerance for "point on circle" tests on radii produced by
// iterated arithmetic.
inline constexpr double kBoundaryTol = 1e-6;

struct CoincidentCenters : std::runtime_error {
  CoincidentCenters() : std::runtime_error("coincident circle centers") {}
};
struct DegenerateCell : std::runtime_error {
  DegenerateCell() : std::runtime_error("degenerate cell") {}
};
struct NoIntersection : std::runtime_error {
  NoIntersection() : std::runtime_error("circles do not intersect") {}
};
struct TangentCircles : std::runtime_error {
  TangentCircles() : std::runtime_error("circles are tangent") {}
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm_sq(Point p) { return p.x * p.x + p.y * p.y; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double dist_sq(Point a, Point b) { return norm_sq(a - b); }
inline double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Circle {
  Point center;
  double radius = 0.0;  // >= 0
};

// Squared Laguerre (power) distance d_E^2(center, p) - r^2; negative iff p
// is strictly inside the circle.
inline double laguerre_dist_sq(const Circle& c, Point p) {
  return dist_sq(c.center, p) - c.radius * c.radius;
}

// ax + by + c = 0, stored normalized (a^2 + b^2 = 1).
struct Line {
  double a = 0.0, b = 0.0, c = 0.0;
  double eval(Point p) const { return a * p.x + b * p.y + c; }
};

// Locus of equal power distance to c1 and c2; perpendicular to the segment
// of centers, crosses the intersection points when the circles intersect.
Line radical_axis(const Circle& c1, const Circle& c2);

// Half plane {p : line.eval(p) <= 0}.
struct HalfPlane {
  Line line;
};

struct Rect {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool contains(Point p, double eps = 0.0) const {
    return p.x >= x0 - eps && p.x <= x1 + eps && p.y >= y0 - eps && p.y <= y1 + eps;
  }
};

// Counter-clockwise convex polygon.
struct ConvexPolygon {
  std::vector<Point> v;
  double area() const;
  bool contains(Point p, double eps = kGeomEps) const;
  // Signed distance of p to the boundary, positive inside (min over edges).
  double inner_margin(Point p) const;
};

struct FarthestVertex {
  Point p;
  double dist = 0.0;
  int index = -1;
};
// Vertex maximizing Euclidean distance from `from`; ties broken by smallest
// index in the stored CCW order.
FarthestVertex farthest_vertex(const ConvexPolygon& poly, Point from);

struct ClosestPoint {
  Point p;
  double dist = 0.0;
};
// Euclidean projection of `from` onto the polygon (distance 0 if inside).
ClosestPoint closest_point(const ConvexPolygon& poly, Point from);

// Convex intersection of half planes with the AoI rectangle; nullopt when empty.
std::optional<ConvexPolygon> clip_to_aoi(const std::vector<HalfPlane>& hps, const Rect& aoi);

// One Voronoi-Laguerre cell, clipped to the AoI. edge_src[i] is the generator
// id of the neighbor whose radical axis carries edge v[i] -> v[i+1], or -1
// for an AoI edge. Null cells have no shape and no neighbors.
struct Cell {
  int generator = -1;
  std::optional<ConvexPolygon> shape;
  std::vector<int> edge_src;
  std::vector<int> neighbors;  // sorted ids sharing a positive-length edge
  bool is_null() const { return !shape.has_value(); }
};

struct PowerDiagram {
  Rect aoi;
  std::vector<Cell> cells;  // indexed like the input circles
};

// Uniform bucket grid over generator positions, used to prune the half-plane
// candidates during cell construction.
class GeneratorGrid {
 public:
  GeneratorGrid() = default;
  // Indexes circles[i] for every i with active[i] != 0 (active may be empty
  // = all active).
  GeneratorGrid(const std::vector<Circle>& circles, const Rect& aoi,
                const std::vector<char>& active = {});
  // Ids of indexed generators with center within `radius` of p (superset-safe:
  // exact distance filtering is done by the caller), sorted by distance to p.
  void collect_within(Point p, double radius, std::vector<int>& out) const;
  double max_radius() const { return max_radius_; }

 private:
  Rect aoi_;
  double cell_ = 1.0;
  int nx_ = 0, ny_ = 0;
  double max_radius_ = 0.0;
  std::vector<std::vector<int>> buckets_;
  const std::vector<Circle>* circles_ = nullptr;
};

// Cell of circles[idx] against every other indexed generator, optionally
// pretending that `exclude` (or anything not in `active`) is absent.
Cell build_cell(int idx, const std::vector<Circle>& circles, const Rect& aoi,
                const GeneratorGrid& grid, int exclude = -1,
                const std::vector<char>* active = nullptr);

// Full diagram. Preconditions: pairwise-distinct centers (CoincidentCenters),
// all centers inside the AoI. Non-null cells tile the AoI; the neighbor
// relation is symmetrized over shared edges.
PowerDiagram build_power_diagram(const std::vector<Circle>& circles, const Rect& aoi);

// 0, 1 (tangent) or 2 intersection points of two circle boundaries.
std::vector<Point> circle_intersections(const Circle& c1, const Circle& c2);

// Intersections of the segment a-b with the circle boundary, appended to out.
void segment_circle_intersections(Point a, Point b, const Circle& c, std::vector<Point>& out);

}  // namespace sara
