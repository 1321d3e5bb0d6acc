#include "sara/protocol.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace sara {

namespace {
constexpr double kRadiusEps = 1e-6;  // convergence epsilon on radii
}

double get_alpha(double score_self, const std::vector<double>& scores,
                 AlphaCriterion criterion, double alpha_min) {
  double mn = score_self, mx = score_self;
  for (double s : scores) {
    mn = std::min(mn, s);
    mx = std::max(mx, s);
  }
  const double span = mx - mn;
  const double scale = std::max({std::abs(mx), std::abs(mn), 1.0});
  if (span <= 1e-12 * scale) return 1.0;
  const double x = (criterion == AlphaCriterion::EnergyGain) ? (score_self - mn) / span
                                                             : (mx - score_self) / span;
  return std::clamp(std::max(x, alpha_min), alpha_min, 1.0);
}

namespace {

struct NodeInfo {
  Cell cell;
  bool has_cell = false;
  std::vector<int> extra_links;        // null-polygon overlap links (undecided)
  std::vector<int> decided_neighbors;  // D set: decided awake VorLag neighbors
  std::optional<RegionPoint> rf, rc;   // residual farthest / closest
  double gain_j = 0.0;
  double score = 0.0;
};

class SaraRun {
 public:
  SaraRun(std::vector<Sensor>& net, const Rect& aoi, const SensingModel& model,
          const CommModel& comm, const SaraParams& params, Rng& rng)
      : net_(net), aoi_(aoi), model_(model), comm_(comm), p_(params), rng_(rng) {}

  SaraResult run();

 private:
  void refresh_circles();
  void build_info();
  void refresh_regions();
  void compute_gain_and_score(int i);
  std::vector<double> neighborhood_scores(int i) const;
  std::vector<Circle> candidate_circles(int i) const;
  bool cell_redundant(const Cell& cell, int i, const std::vector<Circle>& candidates) const;
  bool recheck_redundant(int i);
  void fixed_phase(int k, bool& any_decided, bool& any_slept);
  void adjustable_phase(int k, SaraResult& res);
  void decide_awake(int i, int k) {
    net_[i].decided = true;
    decision_iter_[i] = k;
  }
  void decide_sleep(int i, int k) {
    net_[i].decided = true;
    net_[i].state = SensorState::Sleeping;
    net_[i].radius = 0.0;
    awake_[i] = 0;
    decision_iter_[i] = k;
  }

  std::vector<Sensor>& net_;
  Rect aoi_;
  const SensingModel& model_;
  const CommModel& comm_;
  SaraParams p_;
  Rng& rng_;

  std::vector<Circle> circles_;
  std::vector<char> awake_;
  std::vector<char> in_l_set_;  // gain-exchange snapshot for alpha neighborhoods
  GeneratorGrid grid_;
  std::vector<NodeInfo> info_;
  std::vector<int> decision_iter_;
};

void SaraRun::refresh_circles() {
  const size_t n = net_.size();
  circles_.resize(n);
  awake_.assign(n, 0);
  for (size_t i = 0; i < n; ++i) {
    circles_[i] = net_[i].circle();
    awake_[i] = net_[i].awake() ? 1 : 0;
  }
  grid_ = GeneratorGrid(circles_, aoi_, awake_);
}

void SaraRun::build_info() {
  const size_t n = net_.size();
  info_.assign(n, {});
  for (size_t i = 0; i < n; ++i) {
    Sensor& s = net_[i];
    if (!s.awake() || s.decided) continue;
    NodeInfo& ni = info_[i];
    ni.cell = build_cell(static_cast<int>(i), circles_, aoi_, grid_);
    ni.has_cell = true;
  }
  // Null-polygon overlap links. Cells of decided awake sensors are never
  // null, so the undecided null cells are the whole null set.
  std::vector<int> near;
  for (size_t j = 0; j < n; ++j) {
    if (!info_[j].has_cell || !info_[j].cell.is_null()) continue;
    grid_.collect_within(net_[j].pos, net_[j].radius + grid_.max_radius() + kGeomEps, near);
    for (int k : near) {
      if (k == static_cast<int>(j) || !info_[k].has_cell) continue;
      if (dist(net_[j].pos, net_[k].pos) > net_[j].radius + net_[k].radius) continue;
      info_[k].extra_links.push_back(static_cast<int>(j));
      info_[j].extra_links.push_back(k);
    }
  }
  for (size_t i = 0; i < n; ++i) {
    NodeInfo& ni = info_[i];
    if (!ni.has_cell) continue;
    std::sort(ni.extra_links.begin(), ni.extra_links.end());
    ni.extra_links.erase(std::unique(ni.extra_links.begin(), ni.extra_links.end()),
                         ni.extra_links.end());
    for (int nb : ni.cell.neighbors) {
      if (net_[nb].awake() && net_[nb].decided) ni.decided_neighbors.push_back(nb);
    }
    compute_gain_and_score(static_cast<int>(i));
  }
}

// D sets grew (or circles of this iteration's sleepers vanished from the
// cells); refresh the residual regions and gains of the undecided
// adjustable sensors without touching the cells.
void SaraRun::refresh_regions() {
  for (size_t i = 0; i < net_.size(); ++i) {
    Sensor& s = net_[i];
    if (s.cls != SensorClass::Adjustable || !s.awake() || s.decided || !info_[i].has_cell) {
      continue;
    }
    NodeInfo& ni = info_[i];
    ni.decided_neighbors.clear();
    ni.rf.reset();
    ni.rc.reset();
    for (int nb : ni.cell.neighbors) {
      if (net_[nb].awake() && net_[nb].decided) ni.decided_neighbors.push_back(nb);
    }
    compute_gain_and_score(static_cast<int>(i));
  }
}

void SaraRun::compute_gain_and_score(int i) {
  Sensor& s = net_[i];
  NodeInfo& ni = info_[i];
  if (s.cls == SensorClass::Fixed) {
    ni.gain_j = energy_gain_fixed_j(model_, s.cap_radius, p_.interval_hours);
  } else {
    std::optional<double> residual;
    if (!ni.cell.is_null()) {
      ResidualRegion region{*ni.cell.shape, {}};
      for (int d : ni.decided_neighbors) region.subtracted.push_back(circles_[d]);
      ni.rf = residual_farthest(region, s.pos);
      ni.rc = residual_closest(region, s.pos);
    }
    if (ni.rf && ni.rc && s.radius > ni.rc->dist + kBoundaryTol) {
      residual = ni.rf->dist;  // the disk reaches the region: gain of shrinking to it
    }
    ni.gain_j = energy_gain_adjustable_j(model_, s.radius, residual, p_.interval_hours);
  }
  switch (p_.criterion) {
    case AlphaCriterion::EnergyGain:
      ni.score = ni.gain_j;
      break;
    case AlphaCriterion::ResidualEnergy:
      ni.score = s.battery.remaining_j;
      break;
    case AlphaCriterion::ResidualLifetime: {
      const double per_interval =
          drain_joules(sensing_power_mw(model_, s.radius) + comm_.awake_idle_mw, p_.interval_hours);
      ni.score = s.battery.remaining_j / std::max(per_interval, 1e-12);
      break;
    }
  }
}

std::vector<double> SaraRun::neighborhood_scores(int i) const {
  std::vector<double> out{info_[i].score};
  auto add = [&](int nb) {
    if (in_l_set_[nb]) out.push_back(info_[nb].score);
  };
  for (int nb : info_[i].cell.neighbors) add(nb);
  for (int nb : info_[i].extra_links) add(nb);
  return out;
}

std::vector<Circle> SaraRun::candidate_circles(int i) const {
  std::vector<Circle> out;
  auto add = [&](int j) {
    if (j == i || !net_[j].awake()) return;
    out.push_back(circles_[j]);
  };
  for (int nb : info_[i].cell.neighbors) add(nb);
  for (int nb : info_[i].extra_links) add(nb);
  return out;
}

// A sensor is redundant when every point of its cell that it covers is also
// covered by the candidate disks: the part of the disk outside the cell is
// covered by the cells' own generators whenever it is covered at all, so the
// check reduces to "no uncovered cell point within radius".
bool SaraRun::cell_redundant(const Cell& cell, int i,
                             const std::vector<Circle>& candidates) const {
  if (cell.is_null()) return true;
  ResidualRegion region{*cell.shape, candidates};
  const auto rc = residual_closest(region, net_[i].pos);
  return !rc || rc->dist > net_[i].radius + kGeomEps;
}

bool SaraRun::recheck_redundant(int i) {
  // Turn-offs grow the cell; it has to be rebuilt against the current awake
  // set before re-testing.
  Cell cell = build_cell(i, circles_, aoi_, grid_, -1, &awake_);
  std::vector<Circle> cand;
  for (int nb : cell.neighbors) {
    if (net_[nb].awake()) cand.push_back(circles_[nb]);
  }
  for (int nb : info_[i].extra_links) {
    if (net_[nb].awake()) cand.push_back(circles_[nb]);
  }
  return cell_redundant(cell, i, cand);
}

void SaraRun::fixed_phase(int k, bool& any_decided, bool& any_slept) {
  any_decided = false;
  any_slept = false;
  std::vector<int> redundant_ids;
  for (size_t i = 0; i < net_.size(); ++i) {
    Sensor& s = net_[i];
    if (s.cls != SensorClass::Fixed || !s.awake() || s.decided) continue;
    const bool red = cell_redundant(info_[i].cell, static_cast<int>(i),
                                    candidate_circles(static_cast<int>(i)));
    if (!red) {
      decide_awake(static_cast<int>(i), k);  // turn-on
      any_decided = true;
    } else {
      redundant_ids.push_back(static_cast<int>(i));
    }
  }
  // Gains are exchanged after the turn-on messages; the still-undecided set
  // is the alpha neighborhood for this back-off round.
  in_l_set_.assign(net_.size(), 0);
  for (size_t i = 0; i < net_.size(); ++i) {
    in_l_set_[i] = (net_[i].awake() && !net_[i].decided && info_[i].has_cell) ? 1 : 0;
  }
  struct Pending {
    int id;
    double t;
    double alpha;
  };
  std::vector<Pending> redundant;
  redundant.reserve(redundant_ids.size());
  for (int id : redundant_ids) {
    const double alpha =
        get_alpha(info_[id].score, neighborhood_scores(id), p_.criterion, p_.alpha_min);
    redundant.push_back({id, rng_.uniform(0.0, p_.t_backoff_max), alpha});
  }
  std::sort(redundant.begin(), redundant.end(), [](const Pending& a, const Pending& b) {
    if (a.t != b.t) return a.t < b.t;
    return a.id < b.id;
  });
  bool any = false;
  for (const Pending& pd : redundant) {
    // Turn-off messages with earlier timestamps are processed before the
    // sensor re-checks its redundancy.
    const bool still = any ? recheck_redundant(pd.id) : true;
    if (!still) {
      decide_awake(pd.id, k);
      any_decided = true;
    } else if (rng_.uniform01() < pd.alpha) {
      decide_sleep(pd.id, k);  // turn-off
      any = true;
      any_decided = true;
      any_slept = true;
    }
  }
}

void SaraRun::adjustable_phase(int k, SaraResult& res) {
  in_l_set_.assign(net_.size(), 0);
  for (size_t i = 0; i < net_.size(); ++i) {
    in_l_set_[i] = (net_[i].awake() && !net_[i].decided && info_[i].has_cell) ? 1 : 0;
  }
  struct Update {
    int id;
    double radius;
    bool sleep;
  };
  std::vector<Update> pending;
  bool loose_done = false;
  for (size_t i = 0; i < net_.size(); ++i) {
    Sensor& s = net_[i];
    if (s.cls != SensorClass::Adjustable || !s.awake() || s.decided) continue;
    const NodeInfo& ni = info_[i];
    const double r = s.radius;
    if (r < kRadiusEps) {
      decide_sleep(static_cast<int>(i), k);
      continue;
    }
    double dbar = 0.0;
    if (!ni.cell.is_null() && ni.rf && ni.rc) {
      const double dc = ni.rc->dist;
      const double df = ni.rf->dist;
      if (r <= dc + kBoundaryTol) {
        dbar = 0.0;  // completely uncovered residual region
      } else if (r < df - kBoundaryTol) {
        decide_awake(static_cast<int>(i), k);  // partial coverage: radius is final
        continue;
      } else if (r - df <= kBoundaryTol) {
        // Boundary farthest configuration: strict ends the execution, loose
        // gets one serialized extra reduction per iteration.
        FarthestKind kind = FarthestKind::BoundaryStrict;
        int vidx = -1;
        const auto& verts = ni.cell.shape->v;
        for (size_t v = 0; v < verts.size(); ++v) {
          if (dist(verts[v], ni.rf->p) <= kBoundaryTol) {
            vidx = static_cast<int>(v);
            break;
          }
        }
        if (vidx >= 0) kind = vertex_kind(circles_[i], ni.cell, vidx, circles_);
        if (kind == FarthestKind::BoundaryStrict) {
          decide_awake(static_cast<int>(i), k);
          continue;
        }
        if (!loose_done) {
          loose_done = true;
          res.loose_reductions++;
          const int n = static_cast<int>(verts.size());
          const int a = ni.cell.edge_src[(vidx + n - 1) % n];
          const int b = ni.cell.edge_src[vidx];
          ResidualRegion reg{*ni.cell.shape, {circles_[a], circles_[b]}};
          const auto far = residual_farthest(reg, s.pos);
          pending.push_back({static_cast<int>(i), far ? far->dist : 0.0, !far});
        }
        continue;  // serialized: other loose vertices wait for the next iteration
      } else {
        dbar = ni.rf->dist;  // fully covered with slack
      }
    }
    const double alpha =
        get_alpha(ni.score, neighborhood_scores(static_cast<int>(i)), p_.criterion, p_.alpha_min);
    const double r_new = adjustable_update(r, dbar, alpha);
    if (dbar <= 0.0 && r_new < kRadiusEps) {
      pending.push_back({static_cast<int>(i), 0.0, true});
    } else if (std::abs(r_new - r) < kRadiusEps && dbar > 0.0) {
      // Numerically at the boundary-farthest configuration; settle there and
      // let the next iteration classify it strict or loose.
      pending.push_back({static_cast<int>(i), dbar, false});
    } else {
      pending.push_back({static_cast<int>(i), r_new, false});
    }
  }
  for (const Update& u : pending) {
    if (u.sleep) {
      decide_sleep(u.id, k);
    } else {
      net_[u.id].radius = std::min(u.radius, net_[u.id].radius);
    }
  }
}

SaraResult SaraRun::run() {
  SaraResult res;
  decision_iter_.assign(net_.size(), 0);
  for (Sensor& s : net_) {
    if (!s.alive()) continue;
    s.state = SensorState::Awake;
    s.decided = false;
    s.radius = s.cap_radius;
  }
  int k = 0;
  while (true) {
    bool undecided = false;
    for (const Sensor& s : net_) {
      if (s.awake() && !s.decided) {
        undecided = true;
        break;
      }
    }
    if (!undecided) break;
    if ((p_.k_max > 0 && k >= p_.k_max) || k >= p_.hard_cap) {
      if (p_.k_max <= 0 && k >= p_.hard_cap) res.hit_hard_cap = true;
      for (size_t i = 0; i < net_.size(); ++i) {
        Sensor& s = net_[i];
        if (!s.awake() || s.decided) continue;
        if (s.cls == SensorClass::Adjustable && s.radius < kRadiusEps) {
          s.state = SensorState::Sleeping;
          s.radius = 0.0;
        }
        s.decided = true;
        decision_iter_[i] = -1;  // frozen at the current radius
      }
      break;
    }
    ++k;
    refresh_circles();
    build_info();
    bool fixed_decided = false, fixed_slept = false;
    fixed_phase(k, fixed_decided, fixed_slept);
    if (fixed_slept) {
      refresh_circles();
      build_info();
    } else if (fixed_decided) {
      refresh_regions();  // turn-ons enlarge the D sets
    }
    adjustable_phase(k, res);
  }
  res.iterations = k;
  res.decision_iteration = decision_iter_;
  return res;
}

}  // namespace

SaraResult run_sara(std::vector<Sensor>& net, const Rect& aoi, const SensingModel& model,
                    const CommModel& comm, const SaraParams& params, Rng& rng) {
  SaraRun run(net, aoi, model, comm, params, rng);
  return run.run();
}

}  // namespace sara
