#include "sara/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sara/baselines.hpp"
#include "sara/protocol.hpp"

namespace sara {

std::vector<int> class_counts(const std::vector<ClassSpec>& mix, int n) {
  std::vector<int> counts(mix.size(), 0);
  std::vector<double> frac(mix.size(), 0.0);
  int assigned = 0;
  for (size_t i = 0; i < mix.size(); ++i) {
    const double exact = n * mix[i].percent / 100.0;
    counts[i] = static_cast<int>(std::floor(exact));
    frac[i] = exact - counts[i];
    assigned += counts[i];
  }
  std::vector<size_t> order(mix.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return frac[a] > frac[b]; });
  for (size_t k = 0; assigned < n; ++k, ++assigned) counts[order[k % order.size()]]++;
  return counts;
}

std::vector<Sensor> deploy(const ScenarioConfig& cfg, Rng& rng) {
  const std::vector<Point> pos = deploy_positions(cfg.n, cfg.aoi, rng);
  const std::vector<int> counts = class_counts(cfg.mix, cfg.n);
  const double cap = cfg.capacity_j();
  std::vector<Sensor> out;
  out.reserve(cfg.n);
  int id = 0;
  for (size_t c = 0; c < cfg.mix.size(); ++c) {
    for (int k = 0; k < counts[c]; ++k, ++id) {
      Sensor s;
      s.id = id;
      s.pos = pos[id];
      s.cls = cfg.mix[c].cls;
      s.cap_radius = cfg.mix[c].r_max;
      s.min_radius = cfg.mix[c].r_min;
      s.radius = s.cap_radius;
      s.tx_range = cfg.tx_range;
      s.battery.capacity_j = cap;
      s.state = SensorState::Awake;
      out.push_back(s);
    }
  }
  for (Sensor& s : out) {
    s.battery.remaining_j = cap * (1.0 - rng.uniform01());  // uniform in (0, cap]
    if (s.battery.dead()) {
      s.state = SensorState::Dead;
      s.radius = 0.0;
    }
  }
  return out;
}

CoverageGrid::CoverageGrid(const Rect& aoi, double pitch) : aoi_(aoi), pitch_(pitch) {
  nx_ = std::max(1, static_cast<int>(std::round(aoi.width() / pitch)));
  ny_ = std::max(1, static_cast<int>(std::round(aoi.height() / pitch)));
  hit_.assign(static_cast<std::size_t>(nx_) * ny_, 0);
}

void CoverageGrid::clear() { std::fill(hit_.begin(), hit_.end(), 0); }

void CoverageGrid::mark_disk(Point c, double r) {
  if (r <= 0.0) return;
  const double r2 = r * r;
  const int j0 = std::max(0, static_cast<int>(std::ceil((c.y - r - aoi_.y0) / pitch_ - 0.5)));
  const int j1 = std::min(ny_ - 1, static_cast<int>(std::floor((c.y + r - aoi_.y0) / pitch_ - 0.5)));
  for (int j = j0; j <= j1; ++j) {
    const double dy = aoi_.y0 + (j + 0.5) * pitch_ - c.y;
    const double h2 = r2 - dy * dy;
    if (h2 < 0.0) continue;
    const double h = std::sqrt(h2);
    const int i0 = std::max(0, static_cast<int>(std::ceil((c.x - h - aoi_.x0) / pitch_ - 0.5)));
    const int i1 = std::min(nx_ - 1, static_cast<int>(std::floor((c.x + h - aoi_.x0) / pitch_ - 0.5)));
    if (i0 > i1) continue;
    std::uint8_t* row = hit_.data() + static_cast<std::size_t>(j) * nx_;
    std::fill(row + i0, row + i1 + 1, std::uint8_t{1});
  }
}

std::size_t CoverageGrid::covered() const {
  std::size_t c = 0;
  for (std::uint8_t b : hit_) c += b;
  return c;
}

double CoverageGrid::fraction() const {
  return hit_.empty() ? 0.0 : static_cast<double>(covered()) / static_cast<double>(hit_.size());
}

double coverage_fraction(const std::vector<Sensor>& sensors, const Rect& aoi, double pitch) {
  CoverageGrid grid(aoi, pitch);
  for (const Sensor& s : sensors) {
    if (s.awake()) grid.mark_disk(s.pos, s.radius);
  }
  return grid.fraction();
}

namespace {

IntervalRow snapshot(const std::vector<Sensor>& sensors, const ScenarioConfig& cfg, int interval,
                     int iters) {
  IntervalRow row;
  row.interval = interval;
  row.iters = iters;
  row.covered_frac = coverage_fraction(sensors, cfg.aoi, cfg.pitch);
  const double n = static_cast<double>(sensors.size());
  int awake = 0, sleeping = 0, dead = 0;
  int awake_f = 0, awake_a = 0, sleep_f = 0, sleep_a = 0, dead_f = 0, dead_a = 0;
  double radius_sum = 0.0, residual_sum = 0.0;
  for (const Sensor& s : sensors) {
    const bool fixed = s.cls == SensorClass::Fixed;
    switch (s.state) {
      case SensorState::Awake:
        awake++;
        (fixed ? awake_f : awake_a)++;
        radius_sum += s.radius;
        break;
      case SensorState::Sleeping:
        sleeping++;
        (fixed ? sleep_f : sleep_a)++;
        break;
      case SensorState::Dead:
        dead++;
        (fixed ? dead_f : dead_a)++;
        break;
    }
    residual_sum += s.battery.remaining_j;
  }
  row.awake_pct = 100.0 * awake / n;
  row.sleeping_pct = 100.0 * sleeping / n;
  row.dead_pct = 100.0 * dead / n;
  row.mean_radius_m = awake > 0 ? radius_sum / awake : 0.0;
  row.mean_residual_j = residual_sum / n;
  row.awake_fixed_pct = 100.0 * awake_f / n;
  row.awake_adjustable_pct = 100.0 * awake_a / n;
  row.sleeping_fixed_pct = 100.0 * sleep_f / n;
  row.sleeping_adjustable_pct = 100.0 * sleep_a / n;
  row.dead_fixed_pct = 100.0 * dead_f / n;
  row.dead_adjustable_pct = 100.0 * dead_a / n;
  return row;
}

}  // namespace

MetricsSeries simulate(const ScenarioConfig& cfg, std::vector<Sensor>& sensors,
                       int stop_after_interval) {
  cfg.validate();
  Rng rng(cfg.seed);
  sensors = deploy(cfg, rng);
  MetricsSeries series;
  const double min_threshold = *std::min_element(cfg.thresholds.begin(), cfg.thresholds.end());

  SaraParams sp;
  sp.criterion = cfg.criterion;
  sp.alpha_min = cfg.alpha_min;
  sp.k_max = cfg.k_max;
  sp.t_backoff_max = cfg.backoff_max;
  sp.interval_hours = cfg.interval_hours;
  VrcscParams vp{cfg.vrcsc_threshold};

  bool death_pending = true;  // forces the first configuration
  for (int t = 0; t < cfg.max_intervals; ++t) {
    int iters = 0;
    const bool reconfigure = cfg.algo != Algo::Vrcsc || death_pending;
    if (reconfigure) {
      switch (cfg.algo) {
        case Algo::Sara: {
          const SaraResult res = run_sara(sensors, cfg.aoi, cfg.sensing, cfg.comm, sp, rng);
          iters = res.iterations;
          break;
        }
        case Algo::Dlm:
          run_dlm_round(sensors, cfg.aoi);
          iters = 1;
          break;
        case Algo::Vrcsc:
          run_vrcsc_round(sensors, cfg.aoi, cfg.sensing, cfg.comm, vp);
          iters = 1;
          break;
      }
      death_pending = false;
    }
    series.rows.push_back(snapshot(sensors, cfg, t, iters));
    const IntervalRow& row = series.rows.back();
    if (row.covered_frac * 100.0 < min_threshold || row.dead_pct >= 100.0) break;
    if (stop_after_interval >= 0 && t >= stop_after_interval) break;

    for (Sensor& s : sensors) {
      double power = 0.0;
      switch (s.state) {
        case SensorState::Awake:
          power = sensing_power_mw(cfg.sensing, s.radius) + cfg.comm.awake_idle_mw;
          break;
        case SensorState::Sleeping:
          power = cfg.comm.sleeping_mw;
          break;
        case SensorState::Dead:
          power = 0.0;
          break;
      }
      s.battery = drain(s.battery, power, cfg.interval_hours);
      if (s.state != SensorState::Dead && s.battery.dead()) {
        s.state = SensorState::Dead;
        s.radius = 0.0;
        death_pending = true;
      }
    }
  }
  return series;
}

MetricsSeries simulate(const ScenarioConfig& cfg) {
  std::vector<Sensor> sensors;
  return simulate(cfg, sensors);
}

int lifetime(const MetricsSeries& series, double p) {
  if (series.rows.empty()) throw NeverCovered();
  if (series.rows.front().covered_frac * 100.0 < p) throw NeverCovered();
  for (const IntervalRow& row : series.rows) {
    if (row.covered_frac * 100.0 < p) return row.interval;
  }
  return static_cast<int>(series.rows.size());
}

}  // namespace sara
