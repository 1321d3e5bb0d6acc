#include "sara/energy.hpp"

#include <algorithm>
#include <cmath>

namespace sara {

double sensing_power_mw(const SensingModel& m, double r) {
  if (r < 0.0) throw NegativeRadius();
  if (r == 0.0) return 0.0;  // sensing unit off
  return m.a * std::pow(r, m.c) + m.b;
}

Battery drain(Battery b, double power_mw, double hours) {
  b.remaining_j = std::max(0.0, b.remaining_j - drain_joules(power_mw, hours));
  return b;
}

double energy_gain_fixed_j(const SensingModel& m, double r_fixed, double interval_hours) {
  return drain_joules(sensing_power_mw(m, r_fixed), interval_hours);
}

double energy_gain_adjustable_j(const SensingModel& m, double r_prev,
                                std::optional<double> residual_farthest_dist,
                                double interval_hours) {
  const double now = sensing_power_mw(m, r_prev);
  if (!residual_farthest_dist.has_value()) return drain_joules(now, interval_hours);
  const double target = std::clamp(*residual_farthest_dist, 0.0, r_prev);
  return drain_joules(now - sensing_power_mw(m, target), interval_hours);
}

}  // namespace sara
