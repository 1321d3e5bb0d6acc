// Deployment generation, coverage sampling, the round-based simulation loop
// over operative intervals, and lifetime metrics.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sara/config.hpp"
#include "sara/rng.hpp"
#include "sara/sensor.hpp"

namespace sara {

struct NeverCovered : std::runtime_error {
  NeverCovered() : std::runtime_error("coverage already below threshold at interval 0") {}
};

// Positions i.i.d. uniform over the AoI; coincident draws (< kGeomEps apart)
// are re-sampled. RngT needs uniform(a, b) -> double.
template <typename RngT>
std::vector<Point> deploy_positions(int n, const Rect& aoi, RngT& rng) {
  std::vector<Point> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 10000) throw ConfigError("could not place distinct sensors");
      const Point p{rng.uniform(aoi.x0, aoi.x1), rng.uniform(aoi.y0, aoi.y1)};
      bool clash = false;
      for (const Point& q : pts) {
        if (dist(p, q) < kGeomEps) {
          clash = true;
          break;
        }
      }
      if (!clash) {
        pts.push_back(p);
        break;
      }
    }
  }
  return pts;
}

// Class counts for the configured mix (largest-remainder rounding to n).
std::vector<int> class_counts(const std::vector<ClassSpec>& mix, int n);

// Full deployment: positions, class assignment in mix order, initial
// energies uniform in (0, capacity].
std::vector<Sensor> deploy(const ScenarioConfig& cfg, Rng& rng);

// Cell-centered sampling grid over the AoI.
class CoverageGrid {
 public:
  CoverageGrid(const Rect& aoi, double pitch);
  void clear();
  void mark_disk(Point c, double r);
  std::size_t covered() const;
  std::size_t total() const { return hit_.size(); }
  double fraction() const;
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  Point center(int ix, int iy) const {
    return {aoi_.x0 + (ix + 0.5) * pitch_, aoi_.y0 + (iy + 0.5) * pitch_};
  }
  bool at(int ix, int iy) const { return hit_[static_cast<std::size_t>(iy) * nx_ + ix] != 0; }
  const std::vector<std::uint8_t>& bits() const { return hit_; }

 private:
  Rect aoi_;
  double pitch_;
  int nx_, ny_;
  std::vector<std::uint8_t> hit_;
};

// Fraction of grid points covered by at least one awake sensing disk.
double coverage_fraction(const std::vector<Sensor>& sensors, const Rect& aoi, double pitch);

struct IntervalRow {
  int interval = 0;
  double covered_frac = 0.0;
  double awake_pct = 0.0;
  double sleeping_pct = 0.0;
  double dead_pct = 0.0;
  double mean_radius_m = 0.0;   // awake sensors
  double mean_residual_j = 0.0;  // all deployed sensors
  int iters = 0;                 // protocol iterations (0 when the config was held)
  // Per-class breakdowns (percent of all deployed sensors).
  double awake_fixed_pct = 0.0, awake_adjustable_pct = 0.0;
  double sleeping_fixed_pct = 0.0, sleeping_adjustable_pct = 0.0;
  double dead_fixed_pct = 0.0, dead_adjustable_pct = 0.0;
};

struct MetricsSeries {
  std::vector<IntervalRow> rows;
};

// Round-based loop: (re)configure, record metrics, drain, mark deaths; stops
// when coverage falls below the smallest threshold or everyone is dead.
// SARA and DLM reconfigure every interval, VRCSC after an interval with a
// death.
MetricsSeries simulate(const ScenarioConfig& cfg);

// Variant that keeps the final sensor state (used by the render tool).
MetricsSeries simulate(const ScenarioConfig& cfg, std::vector<Sensor>& final_sensors,
                       int stop_after_interval = -1);

// First interval with covered fraction < p percent; series.rows.size() when
// it never drops below; NeverCovered when already below at interval 0.
int lifetime(const MetricsSeries& series, double p);

}  // namespace sara
