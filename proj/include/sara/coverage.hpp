// Redundancy classification, residual-region farthest/closest queries and the
// strict/loose boundary-farthest characterization.
#pragma once

#include <optional>
#include <vector>

#include "sara/geometry.hpp"

namespace sara {

enum class CoverageClass { FullyCovers, PartiallyCovers, CoversNothing };

// Relation of a sensing disk to its (non-null) cell: FullyCovers iff
// r >= farthest vertex distance, CoversNothing iff r < closest point distance.
CoverageClass classify(const Circle& sensor, const ConvexPolygon& cell);

// Exact test: is the sensing disk contained in the union of candidate disks?
// Arc-subdivision on every circle boundary, no sampling.
bool is_redundant(const Circle& sensor, const std::vector<Circle>& candidates);

// Convex cell minus a union of decided sensing disks.
struct ResidualRegion {
  ConvexPolygon base;
  std::vector<Circle> subtracted;
  bool contains(Point p, double eps = kGeomEps) const;
};

struct RegionPoint {
  Point p;
  double dist = 0.0;
};

// Farthest / closest point of the residual region from the generator,
// taken over the closure of the genuinely uncovered set (isolated points
// still covered by the subtracted circles do not count). nullopt when the
// region has no uncovered points.
std::optional<RegionPoint> residual_farthest(const ResidualRegion& region, Point generator);
std::optional<RegionPoint> residual_closest(const ResidualRegion& region, Point generator);

// The second intersection point of the two neighbor circles meeting at a
// boundary farthest vertex f. Throws NoIntersection / TangentCircles.
Point opposite_farthest(const Circle& c_l, const Circle& c_k, Point f);

enum class FarthestKind { Interior, BoundaryStrict, BoundaryLoose };

// Kind of a specific cell vertex for sensor s: loose iff the opposite
// farthest F' lies strictly inside the cell-side angle of the two radical
// axes meeting there. Vertices generated by the AoI boundary are strict.
FarthestKind vertex_kind(const Circle& s, const Cell& cell, int vertex_index,
                         const std::vector<Circle>& circles);

// Kind of the farthest vertex of the cell (Interior when it lies strictly
// inside the sensing circle).
FarthestKind farthest_kind(const Circle& s, const Cell& cell, const std::vector<Circle>& circles);

}  // namespace sara
