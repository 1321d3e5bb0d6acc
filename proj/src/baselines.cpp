#include "sara/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sara {

std::vector<Point> coverage_intersection_points(const std::vector<Circle>& circles,
                                                const Rect& aoi) {
  std::vector<Point> pts;
  for (size_t i = 0; i < circles.size(); ++i) {
    if (circles[i].radius <= kGeomEps) continue;
    for (size_t j = i + 1; j < circles.size(); ++j) {
      if (circles[j].radius <= kGeomEps) continue;
      const double d = dist(circles[i].center, circles[j].center);
      if (d >= circles[i].radius + circles[j].radius || d < kGeomEps) continue;
      for (const Point& p : circle_intersections(circles[i], circles[j])) {
        if (aoi.contains(p, kGeomEps)) pts.push_back(p);
      }
    }
    const Point c[4] = {{aoi.x0, aoi.y0}, {aoi.x1, aoi.y0}, {aoi.x1, aoi.y1}, {aoi.x0, aoi.y1}};
    for (int e = 0; e < 4; ++e) {
      segment_circle_intersections(c[e], c[(e + 1) % 4], circles[i], pts);
    }
  }
  return pts;
}

void run_dlm_round(std::vector<Sensor>& net, const Rect& aoi) {
  std::vector<int> alive;
  std::vector<Circle> full(net.size());
  std::vector<char> active(net.size(), 0);
  double rmax = 0.0;
  for (size_t i = 0; i < net.size(); ++i) {
    if (!net[i].alive()) continue;
    alive.push_back(static_cast<int>(i));
    full[i] = Circle{net[i].pos, net[i].cap_radius};  // adjustable treated as fixed at max
    active[i] = 1;
    rmax = std::max(rmax, net[i].cap_radius);
  }
  GeneratorGrid grid(full, aoi, active);
  std::vector<Circle> alive_circles;
  alive_circles.reserve(alive.size());
  for (int i : alive) alive_circles.push_back(full[i]);
  const std::vector<Point> pts = coverage_intersection_points(alive_circles, aoi);

  std::vector<int> count(net.size(), 0);
  std::vector<int> near;
  for (const Point& p : pts) {
    grid.collect_within(p, rmax + kGeomEps, near);
    for (int i : near) {
      if (dist(p, net[i].pos) <= net[i].cap_radius + kGeomEps) count[i]++;
    }
  }
  std::vector<int> order = alive;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (net[a].battery.remaining_j != net[b].battery.remaining_j) {
      return net[a].battery.remaining_j > net[b].battery.remaining_j;
    }
    if (count[a] != count[b]) return count[a] > count[b];
    return a < b;
  });

  std::vector<char> awake(net.size(), 0);
  std::vector<Circle> cand;
  for (int i : order) {
    cand.clear();
    grid.collect_within(net[i].pos, net[i].cap_radius + rmax + kGeomEps, near);
    for (int j : near) {
      if (j == i || !awake[j]) continue;
      if (dist(net[i].pos, net[j].pos) < net[i].cap_radius + net[j].cap_radius) {
        cand.push_back(full[j]);
      }
    }
    if (is_redundant(full[i], cand)) {
      net[i].state = SensorState::Sleeping;
      net[i].radius = 0.0;
    } else {
      net[i].state = SensorState::Awake;
      net[i].radius = net[i].cap_radius;
      awake[i] = 1;
    }
    net[i].decided = true;
  }
}

namespace {

// Voronoi state over the awake adjustable sensors. The original protocol is
// defined for adjustable devices only; fixed sensors stay outside the
// diagram, which is what keeps the trivial mixed-scenario extension from
// sizing the adjustable radii correctly.
struct VrcscState {
  const Rect& aoi;
  std::vector<Sensor>& net;
  std::vector<Circle> sites;  // zero-radius circles: ordinary Voronoi
  std::vector<char> active;
  GeneratorGrid grid;
  std::vector<Cell> cells;

  VrcscState(std::vector<Sensor>& n, const Rect& a) : aoi(a), net(n) {
    sites.resize(net.size());
    active.assign(net.size(), 0);
    for (size_t i = 0; i < net.size(); ++i) {
      sites[i] = Circle{net[i].pos, 0.0};
      active[i] = (net[i].awake() && net[i].cls == SensorClass::Adjustable) ? 1 : 0;
    }
    rebuild_grid();
    cells.resize(net.size());
    for (size_t i = 0; i < net.size(); ++i) {
      if (active[i]) cells[i] = build_cell(static_cast<int>(i), sites, aoi, grid);
    }
  }
  void rebuild_grid() { grid = GeneratorGrid(sites, aoi, active); }
  double cell_far(const Cell& c, int i) const {
    return farthest_vertex(*c.shape, net[i].pos).dist;
  }
};

}  // namespace

void run_vrcsc_round(std::vector<Sensor>& net, const Rect& aoi, const SensingModel& model,
                     const CommModel& comm, const VrcscParams& params) {
  std::vector<char> alive_awake(net.size(), 0);
  double rmax = 0.0;
  for (Sensor& s : net) {
    if (!s.alive()) continue;
    s.state = SensorState::Awake;
    s.radius = s.cap_radius;
    s.decided = true;
    alive_awake[s.id] = 1;
    rmax = std::max(rmax, s.cap_radius);
  }
  VrcscState st(net, aoi);
  const bool any_adjustable =
      std::any_of(st.active.begin(), st.active.end(), [](char a) { return a != 0; });
  for (size_t i = 0; i < net.size(); ++i) {
    if (st.active[i]) {
      net[i].radius = std::min(net[i].cap_radius, st.cell_far(st.cells[i], static_cast<int>(i)));
    }
  }

  // Fixed sensors only take the wake/sleep decision: sleep when the whole
  // sensing disk is already covered by the other awake sensors.
  std::vector<Circle> circles(net.size());
  for (const Sensor& s : net) circles[s.id] = s.circle();
  GeneratorGrid all_grid(circles, aoi, alive_awake);
  std::vector<int> near;
  std::vector<Circle> cand;
  for (size_t i = 0; i < net.size(); ++i) {
    if (net[i].cls != SensorClass::Fixed || !net[i].awake()) continue;
    cand.clear();
    all_grid.collect_within(net[i].pos, net[i].radius + rmax + kGeomEps, near);
    for (int j : near) {
      if (j == static_cast<int>(i) || !net[j].awake()) continue;
      if (dist(net[i].pos, net[j].pos) < net[i].radius + net[j].radius) {
        cand.push_back(net[j].circle());
      }
    }
    if (is_redundant(net[i].circle(), cand)) {
      net[i].state = SensorState::Sleeping;
      net[i].radius = 0.0;
    }
  }
  if (!any_adjustable) return;

  // Adjustable sensors sleep when the energy saved beats the neighbors'
  // enlargement cost and every neighbor can still cover its grown cell.
  for (size_t i = 0; i < net.size(); ++i) {
    if (!st.active[i]) continue;
    const std::vector<int> nbs = st.cells[i].neighbors;
    bool feasible = true;
    double cost = 0.0;
    std::vector<std::pair<int, Cell>> grown;
    for (int t : nbs) {
      if (!st.active[t]) continue;
      Cell c = build_cell(t, st.sites, aoi, st.grid, static_cast<int>(i), &st.active);
      const double far = st.cell_far(c, t);
      if (far > net[t].cap_radius + kGeomEps) {
        feasible = false;
        break;
      }
      cost += std::max(0.0, sensing_power_mw(model, far) - sensing_power_mw(model, net[t].radius));
      grown.emplace_back(t, std::move(c));
    }
    if (!feasible) continue;
    const double benefit =
        sensing_power_mw(model, net[i].radius) + comm.awake_idle_mw - comm.sleeping_mw;
    if (benefit <= params.benefit_threshold * cost) continue;
    net[i].state = SensorState::Sleeping;
    net[i].radius = 0.0;
    st.active[i] = 0;
    st.rebuild_grid();
    for (auto& [t, c] : grown) {
      net[t].radius = std::max(net[t].radius, std::min(net[t].cap_radius, st.cell_far(c, t)));
      st.cells[t] = std::move(c);
    }
  }
}

}  // namespace sara
