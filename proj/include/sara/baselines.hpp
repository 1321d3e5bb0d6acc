// DLM and VRCSC rounds, with the mixed-scenario extensions: DLM treats
// adjustable sensors as fixed at maximum radius; VRCSC lets fixed sensors
// take part in the sleep/wake decisions only.
#pragma once

#include <vector>

#include "sara/coverage.hpp"
#include "sara/energy.hpp"
#include "sara/sensor.hpp"

namespace sara {

// Points where two sensing circles intersect, plus the points where a circle
// crosses the AoI boundary; only points inside the AoI are kept.
std::vector<Point> coverage_intersection_points(const std::vector<Circle>& circles,
                                                const Rect& aoi);

// One DLM activation round over the alive sensors: wake in priority order
// (residual energy descending, coverable intersection points descending, id),
// skipping sensors whose disk is already covered by the awake set.
void run_dlm_round(std::vector<Sensor>& net, const Rect& aoi);

struct VrcscParams {
  double benefit_threshold = 1.0;  // sleep when benefit > threshold * cost
};

// One VRCSC round over the alive sensors: ordinary Voronoi cells, adjustable
// radii shrink to the farthest own-cell vertex (capped at r_max), then
// redundant sensors sleep when the energy saved exceeds the neighbors'
// enlargement cost and every neighbor can still cover its grown cell.
void run_vrcsc_round(std::vector<Sensor>& net, const Rect& aoi, const SensingModel& model,
                     const CommModel& comm, const VrcscParams& params);

}  // namespace sara
