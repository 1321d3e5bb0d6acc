#include "sara/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sara {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw ConfigError("trailing characters in " + key + ": " + v);
    return d;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": " + v);
  }
}

std::vector<ClassSpec> parse_mix(const std::string& v) {
  std::vector<ClassSpec> mix;
  for (const std::string& part : split(v, ',')) {
    const std::vector<std::string> f = split(trim(part), ':');
    ClassSpec cs;
    if (f.size() == 3 && f[0] == "fixed") {
      cs.cls = SensorClass::Fixed;
      cs.percent = to_double(f[1], "mix");
      cs.r_min = cs.r_max = to_double(f[2], "mix");
    } else if (f.size() == 4 && f[0] == "adjustable") {
      cs.cls = SensorClass::Adjustable;
      cs.percent = to_double(f[1], "mix");
      cs.r_min = to_double(f[2], "mix");
      cs.r_max = to_double(f[3], "mix");
    } else {
      throw ConfigError("bad mix entry (want fixed:pct:r or adjustable:pct:rmin:rmax): " + part);
    }
    mix.push_back(cs);
  }
  if (mix.empty()) throw ConfigError("empty mix");
  return mix;
}

std::string mix_to_string(const std::vector<ClassSpec>& mix) {
  std::string out;
  char buf[128];
  for (const ClassSpec& cs : mix) {
    if (!out.empty()) out += ",";
    if (cs.cls == SensorClass::Fixed) {
      std::snprintf(buf, sizeof(buf), "fixed:%g:%g", cs.percent, cs.r_max);
    } else {
      std::snprintf(buf, sizeof(buf), "adjustable:%g:%g:%g", cs.percent, cs.r_min, cs.r_max);
    }
    out += buf;
  }
  return out;
}

}  // namespace

double ScenarioConfig::max_cap_radius() const {
  double m = 0.0;
  for (const ClassSpec& cs : mix) m = std::max(m, cs.r_max);
  return m;
}

std::string ScenarioConfig::validate() const {
  if (n < 1) throw ConfigError("n must be >= 1");
  if (aoi.width() <= 0 || aoi.height() <= 0) throw ConfigError("empty AoI");
  if (pitch <= 0) throw ConfigError("pitch must be > 0");
  if (!(alpha_min > 0 && alpha_min < 1)) throw ConfigError("alpha_min must be in (0,1)");
  if (k_max < 0) throw ConfigError("k_max must be >= 0 (0 = unbounded)");
  if (backoff_max <= 0) throw ConfigError("backoff_max must be > 0");
  if (battery_mah < 0 || battery_volt <= 0) throw ConfigError("bad battery spec");
  if (interval_hours <= 0) throw ConfigError("interval_h must be > 0");
  if (max_intervals < 1) throw ConfigError("max_intervals must be >= 1");
  if (sensing.a < 0 || sensing.b < 0) throw ConfigError("sensing a,b must be >= 0");
  if (comm.awake_idle_mw < comm.sleeping_mw || comm.sleeping_mw < 0) {
    throw ConfigError("need awake_idle >= sleeping >= 0");
  }
  if (thresholds.empty()) throw ConfigError("thresholds must be non-empty");
  for (double p : thresholds) {
    if (!(p > 0 && p <= 100)) throw ConfigError("thresholds must be in (0,100]");
  }
  double pct = 0.0;
  for (const ClassSpec& cs : mix) {
    if (cs.percent < 0) throw ConfigError("negative class percentage");
    if (cs.r_max <= 0) throw ConfigError("class radius must be > 0");
    if (cs.cls == SensorClass::Adjustable && cs.r_min > cs.r_max) {
      throw ConfigError("adjustable r_min > r_max");
    }
    pct += cs.percent;
  }
  if (std::abs(pct - 100.0) > 1e-6) throw ConfigError("class percentages must sum to 100");
  if (tx_range < 2.0 * max_cap_radius()) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "warning: tx_range %.3g < 2 * max sensing radius %.3g; "
                  "the connectivity assumption does not hold",
                  tx_range, max_cap_radius());
    return buf;
  }
  return "";
}

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig c;
  c.preset_name = name;
  if (name == "adjustable-homogeneous") {
    c.mix = {{SensorClass::Adjustable, 100.0, 2.0, 6.0}};
  } else if (name == "adjustable-heterogeneous") {
    c.mix = {{SensorClass::Adjustable, 50.0, 2.0, 6.0}, {SensorClass::Adjustable, 50.0, 2.0, 3.0}};
  } else if (name == "fixed-heterogeneous") {
    c.mix = {{SensorClass::Fixed, 50.0, 3.0, 3.0}, {SensorClass::Fixed, 50.0, 6.0, 6.0}};
  } else if (name == "mixed-homogeneous") {
    c.mix = {{SensorClass::Fixed, 50.0, 6.0, 6.0}, {SensorClass::Adjustable, 50.0, 2.0, 6.0}};
  } else if (name == "mixed-heterogeneous") {
    c.mix = {{SensorClass::Fixed, 50.0, 3.0, 3.0}, {SensorClass::Adjustable, 50.0, 2.0, 6.0}};
  } else {
    throw ConfigError("unknown preset: " + name);
  }
  return c;
}

std::vector<std::string> preset_names() {
  return {"adjustable-homogeneous", "adjustable-heterogeneous", "fixed-heterogeneous",
          "mixed-homogeneous", "mixed-heterogeneous"};
}

void apply_setting(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  const std::string k = trim(key), v = trim(value);
  if (k == "preset") {
    const std::string keep = v;
    cfg = preset(keep);
  } else if (k == "aoi_w") {
    cfg.aoi.x1 = cfg.aoi.x0 + to_double(v, k);
  } else if (k == "aoi_h") {
    cfg.aoi.y1 = cfg.aoi.y0 + to_double(v, k);
  } else if (k == "n") {
    cfg.n = static_cast<int>(to_double(v, k));
  } else if (k == "mix") {
    cfg.mix = parse_mix(v);
  } else if (k == "tx_range") {
    cfg.tx_range = to_double(v, k);
  } else if (k == "battery_mah") {
    cfg.battery_mah = to_double(v, k);
  } else if (k == "battery_volt") {
    cfg.battery_volt = to_double(v, k);
  } else if (k == "interval_h") {
    cfg.interval_hours = to_double(v, k);
  } else if (k == "algo") {
    if (v == "sara") cfg.algo = Algo::Sara;
    else if (v == "dlm") cfg.algo = Algo::Dlm;
    else if (v == "vrcsc") cfg.algo = Algo::Vrcsc;
    else throw ConfigError("unknown algo: " + v);
  } else if (k == "alpha_criterion") {
    if (v == "energy_gain") cfg.criterion = AlphaCriterion::EnergyGain;
    else if (v == "residual_energy") cfg.criterion = AlphaCriterion::ResidualEnergy;
    else if (v == "residual_lifetime") cfg.criterion = AlphaCriterion::ResidualLifetime;
    else throw ConfigError("unknown alpha_criterion: " + v);
  } else if (k == "alpha_min") {
    cfg.alpha_min = to_double(v, k);
  } else if (k == "k_max") {
    cfg.k_max = static_cast<int>(to_double(v, k));
  } else if (k == "backoff_max") {
    cfg.backoff_max = to_double(v, k);
  } else if (k == "thresholds") {
    cfg.thresholds.clear();
    for (const std::string& t : split(v, ',')) cfg.thresholds.push_back(to_double(trim(t), k));
  } else if (k == "seed") {
    cfg.seed = static_cast<std::uint64_t>(std::stoull(v));
  } else if (k == "pitch") {
    cfg.pitch = to_double(v, k);
  } else if (k == "sense_a") {
    cfg.sensing.a = to_double(v, k);
  } else if (k == "sense_b") {
    cfg.sensing.b = to_double(v, k);
  } else if (k == "sense_c") {
    cfg.sensing.c = to_double(v, k);
  } else if (k == "idle_mw") {
    cfg.comm.awake_idle_mw = to_double(v, k);
  } else if (k == "sleep_mw") {
    cfg.comm.sleeping_mw = to_double(v, k);
  } else if (k == "vrcsc_threshold") {
    cfg.vrcsc_threshold = to_double(v, k);
  } else if (k == "max_intervals") {
    cfg.max_intervals = static_cast<int>(to_double(v, k));
  } else {
    throw ConfigError("unknown config key: " + k);
  }
}

ScenarioConfig load_config(std::istream& in) {
  ScenarioConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value, got: " + t);
    apply_setting(cfg, t.substr(0, eq), t.substr(eq + 1));
  }
  return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return load_config(in);
}

std::string algo_name(Algo a) {
  switch (a) {
    case Algo::Sara: return "sara";
    case Algo::Dlm: return "dlm";
    case Algo::Vrcsc: return "vrcsc";
  }
  return "?";
}

std::string criterion_name(AlphaCriterion c) {
  switch (c) {
    case AlphaCriterion::EnergyGain: return "energy_gain";
    case AlphaCriterion::ResidualEnergy: return "residual_energy";
    case AlphaCriterion::ResidualLifetime: return "residual_lifetime";
  }
  return "?";
}

std::string config_to_kv(const ScenarioConfig& cfg) {
  std::ostringstream out;
  char buf[256];
  auto put = [&](const char* key, const std::string& val) { out << key << " = " << val << "\n"; };
  auto putd = [&](const char* key, double v) {
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    put(key, buf);
  };
  put("preset", cfg.preset_name);
  putd("aoi_w", cfg.aoi.width());
  putd("aoi_h", cfg.aoi.height());
  putd("n", cfg.n);
  put("mix", mix_to_string(cfg.mix));
  putd("tx_range", cfg.tx_range);
  putd("battery_mah", cfg.battery_mah);
  putd("battery_volt", cfg.battery_volt);
  putd("interval_h", cfg.interval_hours);
  put("algo", algo_name(cfg.algo));
  put("alpha_criterion", criterion_name(cfg.criterion));
  putd("alpha_min", cfg.alpha_min);
  putd("k_max", cfg.k_max);
  putd("backoff_max", cfg.backoff_max);
  {
    std::string t;
    for (double p : cfg.thresholds) {
      if (!t.empty()) t += ",";
      std::snprintf(buf, sizeof(buf), "%g", p);
      t += buf;
    }
    put("thresholds", t);
  }
  put("seed", std::to_string(cfg.seed));
  putd("pitch", cfg.pitch);
  putd("sense_a", cfg.sensing.a);
  putd("sense_b", cfg.sensing.b);
  putd("sense_c", cfg.sensing.c);
  putd("idle_mw", cfg.comm.awake_idle_mw);
  putd("sleep_mw", cfg.comm.sleeping_mw);
  putd("vrcsc_threshold", cfg.vrcsc_threshold);
  putd("max_intervals", cfg.max_intervals);
  return out.str();
}

}  // namespace sara
