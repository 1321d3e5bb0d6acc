// SARA: per-iteration decision logic for fixed and adjustable sensors,
// priority parameter alpha, randomized back-off, loose-farthest
// serialization and the faster-termination bound K.
#pragma once

#include <vector>

#include "sara/coverage.hpp"
#include "sara/energy.hpp"
#include "sara/rng.hpp"
#include "sara/sensor.hpp"

namespace sara {

enum class AlphaCriterion { EnergyGain, ResidualEnergy, ResidualLifetime };

struct SaraParams {
  AlphaCriterion criterion = AlphaCriterion::EnergyGain;
  double alpha_min = 0.05;
  int k_max = 20;  // faster-termination bound; 0 = unbounded
  int hard_cap = 10000;
  double t_backoff_max = 1.0;
  double interval_hours = 24.0;
};

// Eq.-3 style priority: normalized rank of the sensor's score within its
// neighborhood, clamped to [alpha_min, 1]; 1 when all scores are equal.
// EnergyGain ranks high scores first, the residual criteria rank low ones
// first. `scores` must include the sensor's own score.
double get_alpha(double score_self, const std::vector<double>& scores,
                 AlphaCriterion criterion, double alpha_min);

// One radius-reduction step: r <- r - alpha * (r - dbar).
inline double adjustable_update(double r, double dbar, double alpha) {
  return r - alpha * (r - dbar);
}

struct SaraResult {
  int iterations = 0;
  bool hit_hard_cap = false;
  int loose_reductions = 0;
  // Iteration (1-based) at which each sensor decided; -1 when frozen by the
  // K bound, 0 for sensors that did not participate (dead).
  std::vector<int> decision_iteration;
};

// Runs one full SARA execution on the alive sensors of `net` (they all start
// awake, undecided, at maximum radius) and leaves the cover set in place.
SaraResult run_sara(std::vector<Sensor>& net, const Rect& aoi, const SensingModel& model,
                    const CommModel& comm, const SaraParams& params, Rng& rng);

}  // namespace sara
