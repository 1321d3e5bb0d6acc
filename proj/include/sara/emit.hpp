// CSV / SVG / manifest output.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sara/config.hpp"
#include "sara/sensor.hpp"
#include "sara/sim.hpp"

namespace sara {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kCsvHeader =
    "interval,covered_frac,awake_pct,sleeping_pct,dead_pct,mean_radius_m,mean_residual_j,iters";

void write_csv(const MetricsSeries& series, std::ostream& out);
std::string csv_string(const MetricsSeries& series);
MetricsSeries parse_csv(std::istream& in);

// Per-class breakdown (documented companion file, one row per interval).
void write_class_csv(const MetricsSeries& series, std::ostream& out);

// Reproducibility record: code version plus the full config (incl. seed).
void write_manifest(const ScenarioConfig& cfg, std::ostream& out);

// Power diagram of the awake sensors plus their sensing disks.
void render_svg(const std::vector<Sensor>& sensors, const Rect& aoi, std::ostream& out);

}  // namespace sara
