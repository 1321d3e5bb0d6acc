// sarasim: run coverage/lifetime simulations (SARA / DLM / VRCSC), seed
// sweeps, and SVG snapshots.
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "sara/emit.hpp"
#include "sara/sim.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string config_file;
  std::string preset_name;
  std::string algo;
  std::string criterion;
  int seed = -1;
  int n = -1;
  double pitch = -1.0;
  int k = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_file, "config file (key = value lines)");
  cmd->add_option("--preset", o.preset_name, "scenario preset name");
  cmd->add_option("--algo", o.algo, "sara | dlm | vrcsc");
  cmd->add_option("--alpha-criterion", o.criterion,
                  "energy_gain | residual_energy | residual_lifetime");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--n", o.n, "number of sensors");
  cmd->add_option("--pitch", o.pitch, "coverage grid pitch (m)");
  cmd->add_option("--k", o.k, "max SARA iterations (0 = unbounded)");
}

sara::ScenarioConfig make_config(const CommonOpts& o) {
  sara::ScenarioConfig cfg;
  if (!o.preset_name.empty()) cfg = sara::preset(o.preset_name);
  if (!o.config_file.empty()) {
    if (!o.preset_name.empty()) {
      // Explicit preset first, then file overrides on top of it.
      std::ifstream in(o.config_file);
      if (!in) throw sara::ConfigError("cannot open config file: " + o.config_file);
      std::string line;
      while (std::getline(in, line)) {
        const auto h = line.find_first_not_of(" \t");
        if (h == std::string::npos || line[h] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw sara::ConfigError("expected key = value: " + line);
        sara::apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
      }
    } else {
      cfg = sara::load_config_file(o.config_file);
    }
  }
  if (!o.algo.empty()) sara::apply_setting(cfg, "algo", o.algo);
  if (!o.criterion.empty()) sara::apply_setting(cfg, "alpha_criterion", o.criterion);
  if (o.seed >= 0) sara::apply_setting(cfg, "seed", std::to_string(o.seed));
  if (o.n >= 0) sara::apply_setting(cfg, "n", std::to_string(o.n));
  if (o.pitch > 0) sara::apply_setting(cfg, "pitch", std::to_string(o.pitch));
  if (o.k >= 0) sara::apply_setting(cfg, "k_max", std::to_string(o.k));
  const std::string warning = cfg.validate();
  if (!warning.empty()) std::cerr << warning << "\n";
  return cfg;
}

void write_run(const sara::ScenarioConfig& cfg, const sara::MetricsSeries& series,
               const fs::path& dir) {
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "metrics.csv", std::ios::binary);
    sara::write_csv(series, out);
  }
  {
    std::ofstream out(dir / "metrics_classes.csv", std::ios::binary);
    sara::write_class_csv(series, out);
  }
  {
    std::ofstream out(dir / "manifest.txt", std::ios::binary);
    sara::write_manifest(cfg, out);
  }
}

void print_lifetimes(const sara::ScenarioConfig& cfg, const sara::MetricsSeries& series) {
  std::cout << "intervals recorded: " << series.rows.size() << "\n";
  for (double p : cfg.thresholds) {
    std::cout << "lifetime(" << p << "%): ";
    try {
      const int lt = sara::lifetime(series, p);
      if (lt == static_cast<int>(series.rows.size())) {
        std::cout << lt << " (never dropped below; end of series)\n";
      } else {
        std::cout << lt << "\n";
      }
    } catch (const sara::NeverCovered&) {
      std::cout << "never covered\n";
    }
  }
}

int cmd_simulate(const CommonOpts& o, const std::string& out_dir) {
  const sara::ScenarioConfig cfg = make_config(o);
  const sara::MetricsSeries series = sara::simulate(cfg);
  write_run(cfg, series, out_dir);
  print_lifetimes(cfg, series);
  std::cout << "wrote " << (fs::path(out_dir) / "metrics.csv").string() << "\n";
  return 0;
}

int cmd_sweep(const CommonOpts& o, const std::string& out_dir, const std::string& seeds_arg,
              const std::string& n_list_arg) {
  std::vector<int> seeds;
  {
    std::stringstream ss(seeds_arg);
    std::string item;
    while (std::getline(ss, item, ',')) seeds.push_back(std::stoi(item));
  }
  std::vector<int> ns;
  if (!n_list_arg.empty()) {
    std::stringstream ss(n_list_arg);
    std::string item;
    while (std::getline(ss, item, ',')) ns.push_back(std::stoi(item));
  }
  const sara::ScenarioConfig base = make_config(o);
  if (ns.empty()) ns.push_back(base.n);
  fs::create_directories(out_dir);
  std::ofstream summary(fs::path(out_dir) / "summary.csv", std::ios::binary);
  summary << "algo,n,seed,intervals";
  for (double p : base.thresholds) summary << ",lifetime" << p;
  summary << "\n";
  for (int n : ns) {
    for (int seed : seeds) {
      sara::ScenarioConfig cfg = base;
      cfg.n = n;
      cfg.seed = static_cast<std::uint64_t>(seed);
      const sara::MetricsSeries series = sara::simulate(cfg);
      char name[128];
      std::snprintf(name, sizeof(name), "run_%s_n%d_s%d", sara::algo_name(cfg.algo).c_str(), n,
                    seed);
      write_run(cfg, series, fs::path(out_dir) / name);
      summary << sara::algo_name(cfg.algo) << "," << n << "," << seed << ","
              << series.rows.size();
      for (double p : cfg.thresholds) {
        try {
          summary << "," << sara::lifetime(series, p);
        } catch (const sara::NeverCovered&) {
          summary << ",-1";
        }
      }
      summary << "\n";
      std::cout << name << ": " << series.rows.size() << " intervals\n";
    }
  }
  std::cout << "wrote " << (fs::path(out_dir) / "summary.csv").string() << "\n";
  return 0;
}

int cmd_render(const CommonOpts& o, const std::string& out_file, int interval) {
  const sara::ScenarioConfig cfg = make_config(o);
  std::vector<sara::Sensor> sensors;
  sara::simulate(cfg, sensors, interval);
  std::ofstream out(out_file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + out_file);
  sara::render_svg(sensors, cfg.aoi, out);
  std::cout << "wrote " << out_file << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sensor activation and radius adaptation simulator"};
  app.require_subcommand(1);

  CommonOpts sim_opts, sweep_opts, render_opts;
  std::string sim_out = "out", sweep_out = "sweep", render_out = "snapshot.svg";
  std::string seeds_arg = "1", n_list_arg;
  int render_interval = 0;

  CLI::App* sim = app.add_subcommand("simulate", "run one lifetime simulation");
  add_common(sim, sim_opts);
  sim->add_option("--out", sim_out, "output directory");

  CLI::App* sweep = app.add_subcommand("sweep", "run a multi-seed / multi-N battery");
  add_common(sweep, sweep_opts);
  sweep->add_option("--out", sweep_out, "output directory");
  sweep->add_option("--seeds", seeds_arg, "comma-separated seeds");
  sweep->add_option("--n-list", n_list_arg, "comma-separated sensor counts");

  CLI::App* render = app.add_subcommand("render", "write an SVG snapshot of the diagram");
  add_common(render, render_opts);
  render->add_option("--out", render_out, "output SVG file");
  render->add_option("--interval", render_interval, "simulate up to this interval first");

  CLI11_PARSE(app, argc, argv);
  try {
    if (sim->parsed()) return cmd_simulate(sim_opts, sim_out);
    if (sweep->parsed()) return cmd_sweep(sweep_opts, sweep_out, seeds_arg, n_list_arg);
    if (render->parsed()) return cmd_render(render_opts, render_out, render_interval);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
