#include "sara/emit.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace sara {

void write_csv(const MetricsSeries& series, std::ostream& out) {
  out << kCsvHeader << "\n";
  char buf[256];
  for (const IntervalRow& r : series.rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.6f,%.4f,%.4f,%.4f,%.6f,%.3f,%d\n", r.interval,
                  r.covered_frac, r.awake_pct, r.sleeping_pct, r.dead_pct, r.mean_radius_m,
                  r.mean_residual_j, r.iters);
    out << buf;
  }
}

std::string csv_string(const MetricsSeries& series) {
  std::ostringstream ss;
  write_csv(series, ss);
  return ss.str();
}

MetricsSeries parse_csv(std::istream& in) {
  MetricsSeries series;
  std::string line;
  if (!std::getline(in, line)) return series;
  if (line != kCsvHeader) throw std::runtime_error("unexpected CSV header: " + line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    IntervalRow r;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%lf,%lf,%lf,%d", &r.interval, &r.covered_frac,
                    &r.awake_pct, &r.sleeping_pct, &r.dead_pct, &r.mean_radius_m,
                    &r.mean_residual_j, &r.iters) != 8) {
      throw std::runtime_error("bad CSV row: " + line);
    }
    series.rows.push_back(r);
  }
  return series;
}

void write_class_csv(const MetricsSeries& series, std::ostream& out) {
  out << "interval,awake_fixed_pct,awake_adjustable_pct,sleeping_fixed_pct,"
         "sleeping_adjustable_pct,dead_fixed_pct,dead_adjustable_pct\n";
  char buf[256];
  for (const IntervalRow& r : series.rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f\n", r.interval,
                  r.awake_fixed_pct, r.awake_adjustable_pct, r.sleeping_fixed_pct,
                  r.sleeping_adjustable_pct, r.dead_fixed_pct, r.dead_adjustable_pct);
    out << buf;
  }
}

void write_manifest(const ScenarioConfig& cfg, std::ostream& out) {
  out << "# sarasim run manifest\n";
  out << "version = " << kVersion << "\n";
  out << config_to_kv(cfg);
}

void render_svg(const std::vector<Sensor>& sensors, const Rect& aoi, std::ostream& out) {
  std::vector<Circle> circles;
  std::vector<int> ids;
  for (const Sensor& s : sensors) {
    if (s.awake()) {
      circles.push_back(s.circle());
      ids.push_back(s.id);
    }
  }
  char buf[512];
  const double w = aoi.width(), h = aoi.height();
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"%.4f %.4f %.4f %.4f\" "
                "width=\"800\" height=\"%d\">\n",
                aoi.x0, aoi.y0, w, h, static_cast<int>(800.0 * h / w));
  out << buf;
  out << "<g transform=\"translate(0," << h << ") scale(1,-1)\">\n";
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%.4f\" y=\"%.4f\" width=\"%.4f\" height=\"%.4f\" fill=\"white\" "
                "stroke=\"black\" stroke-width=\"0.15\"/>\n",
                aoi.x0, aoi.y0, w, h);
  out << buf;
  if (!circles.empty()) {
    const PowerDiagram diagram = build_power_diagram(circles, aoi);
    for (const Cell& cell : diagram.cells) {
      if (cell.is_null()) continue;
      out << "<polygon points=\"";
      for (const Point& p : cell.shape->v) {
        std::snprintf(buf, sizeof(buf), "%.4f,%.4f ", p.x, p.y);
        out << buf;
      }
      out << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"0.08\"/>\n";
    }
    for (size_t i = 0; i < circles.size(); ++i) {
      std::snprintf(buf, sizeof(buf),
                    "<circle cx=\"%.4f\" cy=\"%.4f\" r=\"%.4f\" fill=\"#3377cc\" "
                    "fill-opacity=\"0.18\" stroke=\"#3377cc\" stroke-width=\"0.06\"/>\n",
                    circles[i].center.x, circles[i].center.y, circles[i].radius);
      out << buf;
      std::snprintf(buf, sizeof(buf),
                    "<circle cx=\"%.4f\" cy=\"%.4f\" r=\"0.25\" fill=\"#cc3333\"/>"
                    "<!-- sensor %d -->\n",
                    circles[i].center.x, circles[i].center.y, ids[i]);
      out << buf;
    }
  }
  out << "</g>\n</svg>\n";
}

}  // namespace sara
