// Sensing / communication power models, batteries, and energy gains.
#pragma once

#include <optional>
#include <stdexcept>

namespace sara {

struct NegativeRadius : std::runtime_error {
  NegativeRadius() : std::runtime_error("negative sensing radius") {}
};

// E_sensing(r) = a * r^c + b (mW); r = 0 means the sensing unit is off.
struct SensingModel {
  double a = 0.0;  // mW / m^c
  double b = 0.0;  // mW
  double c = 3.0;  // dimensionless, typically in [2, 4]
};

double sensing_power_mw(const SensingModel& m, double r);

// Per-radio-state power (mW).
struct CommModel {
  double awake_idle_mw = 0.0;
  double sleeping_mw = 0.0;
};

inline constexpr double kJoulesPerMwh = 3.6;

inline double joules_from_mah(double mah, double volt) { return mah * volt * kJoulesPerMwh; }
inline double drain_joules(double power_mw, double hours) { return power_mw * hours * kJoulesPerMwh; }

struct Battery {
  double capacity_j = 0.0;
  double remaining_j = 0.0;
  bool dead() const { return remaining_j <= 0.0; }
};

// Remaining energy decreases by power*dt, clamped at zero.
Battery drain(Battery b, double power_mw, double hours);

// Energy a sensor saves per operative interval by sleeping (fixed class).
double energy_gain_fixed_j(const SensingModel& m, double r_fixed, double interval_hours);

// Energy an adjustable sensor saves per interval by shrinking to its
// residual farthest distance; nullopt = null or uncovered polygon (full gain).
double energy_gain_adjustable_j(const SensingModel& m, double r_prev,
                                std::optional<double> residual_farthest_dist,
                                double interval_hours);

}  // namespace sara
