// Scenario configuration: named presets, flat key=value files, validation.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sara/energy.hpp"
#include "sara/geometry.hpp"
#include "sara/protocol.hpp"

namespace sara {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Algo { Sara, Dlm, Vrcsc };

struct ClassSpec {
  SensorClass cls = SensorClass::Adjustable;
  double percent = 100.0;
  double r_min = 0.0;  // adjustable: lower end of the variation range
  double r_max = 0.0;  // adjustable: r_max; fixed: r_fixed
};

struct ScenarioConfig {
  Rect aoi{0.0, 0.0, 80.0, 80.0};
  int n = 900;
  std::vector<ClassSpec> mix{{SensorClass::Adjustable, 100.0, 2.0, 6.0}};
  double tx_range = 30.0;
  double battery_mah = 1840.0;
  double battery_volt = 3.0;
  double interval_hours = 24.0;
  Algo algo = Algo::Sara;
  AlphaCriterion criterion = AlphaCriterion::EnergyGain;
  double alpha_min = 0.05;
  int k_max = 20;  // 0 = unbounded
  double backoff_max = 1.0;
  std::vector<double> thresholds{80.0, 90.0, 95.0, 100.0};
  std::uint64_t seed = 1;
  double pitch = 0.25;
  SensingModel sensing{3.27 / 216.0, 0.10, 3.0};
  CommModel comm{0.08, 0.06};
  double vrcsc_threshold = 1.0;
  int max_intervals = 4000;
  std::string preset_name = "adjustable-homogeneous";

  double capacity_j() const { return joules_from_mah(battery_mah, battery_volt); }
  double max_cap_radius() const;
  // Throws ConfigError on invalid values; returns a warning string (possibly
  // empty), e.g. for a transmission range below twice the max sensing radius.
  std::string validate() const;
};

// Named §7-style scenario presets: adjustable-homogeneous,
// adjustable-heterogeneous, fixed-heterogeneous, mixed-homogeneous,
// mixed-heterogeneous.
ScenarioConfig preset(const std::string& name);
std::vector<std::string> preset_names();

// Applies one "key = value" assignment (also used for CLI overrides).
void apply_setting(ScenarioConfig& cfg, const std::string& key, const std::string& value);

// Flat key=value text; lines starting with '#' are comments. A "preset" key
// switches the base preset before later keys override individual values.
ScenarioConfig load_config(std::istream& in);
ScenarioConfig load_config_file(const std::string& path);

// Round-trippable key=value dump (used for the manifest).
std::string config_to_kv(const ScenarioConfig& cfg);

std::string algo_name(Algo a);
std::string criterion_name(AlphaCriterion c);

}  // namespace sara
