// Command-line front end: single cross-modal projections and the standard
// sweep suite, CSV out.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ssg/config.hpp"
#include "ssg/csv.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
  std::string config_path;
  std::string kernel = "auto";
  int resolution = 0;  // 0 = keep configured sampling
  int threads = 0;
};

void apply_kernel(const std::string& kernel) {
  if (kernel == "auto")
    ssg::kernels::select(ssg::kernels::Variant::auto_detect);
  else if (kernel == "scalar")
    ssg::kernels::select(ssg::kernels::Variant::scalar);
  else if (kernel == "avx2")
    ssg::kernels::select(ssg::kernels::Variant::avx2);
  else
    throw std::runtime_error("--kernel: expected auto, scalar or avx2");
}

// One knob scales every sampling count: arcs use 2n elevation samples,
// surfaces n x n/8, the area raster n x n. n = 512 reproduces the defaults.
void apply_resolution(ssg::SamplingResolution& res, int n) {
  if (n <= 0) return;
  if (n < 2) throw std::runtime_error("--resolution: must be >= 2");
  res.arc_phi = 2 * n;
  res.surface_theta = n;
  res.surface_phi = std::max(2, n / 8);
  res.raster.range_cells = n;
  res.raster.azimuth_cells = n;
}

ssg::RunConfig load(const CommonOptions& opts) {
  ssg::RunConfig cfg;
  if (!opts.config_path.empty()) cfg = ssg::load_config(opts.config_path);
  apply_resolution(cfg.resolution, opts.resolution);
  return cfg;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void dump_span_samples(const ssg::ProjectionRegion& region, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "range_m\n";
  for (double r : region.ranges) out << fmt(r) << '\n';
}

void dump_fl_samples(const ssg::ProjectionRegion& region, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "range_m,azimuth_rad\n";
  for (const ssg::FlObservation& s : region.samples)
    out << fmt(s.range) << ',' << fmt(s.azimuth) << '\n';
}

int run_project(ssg::Direction dir, const CommonOptions& opts, const std::string& samples_path) {
  apply_kernel(opts.kernel);
  const ssg::RunConfig cfg = load(opts);
  if (cfg.direction && *cfg.direction != dir)
    throw std::runtime_error("config direction disagrees with the project subcommand");

  const ssg::RelativePose pose = cfg.make_pose(dir);
  ssg::ProjectionRegion region;
  size_t candidates = 0;
  if (dir == ssg::Direction::fl_to_ss) {
    const ssg::FlObservation obs = cfg.fl_observation();
    candidates = static_cast<size_t>(cfg.resolution.arc_phi);
    region = ssg::fl_to_ss(obs, pose, cfg.fl, cfg.ss, cfg.resolution.arc_phi);
    std::cout << "direction: fl-to-ss\n"
              << "observation: range " << fmt(obs.range) << " m, azimuth "
              << fmt(ssg::rad_to_deg(obs.azimuth)) << " deg\n";
  } else {
    const ssg::SsObservation obs = cfg.ss_observation();
    candidates = static_cast<size_t>(cfg.resolution.surface_theta) *
                 static_cast<size_t>(cfg.resolution.surface_phi);
    region = ssg::ss_to_fl(obs, pose, cfg.ss, cfg.fl, cfg.resolution.surface_theta,
                           cfg.resolution.surface_phi, cfg.resolution.raster);
    std::cout << "direction: ss-to-fl\n"
              << "observation: range " << fmt(obs.range) << " m\n";
  }

  std::cout << "kernel: " << ssg::kernels::active_name() << '\n';
  if (region.not_visible) {
    std::cout << "visible: no\n";
  } else if (region.kind == ssg::ProjectionRegion::Kind::ss_span) {
    std::cout << "visible: yes\n"
              << "surviving samples: " << region.ranges.size() << " / " << candidates << '\n'
              << "range span: [" << fmt(region.r_lo) << ", " << fmt(region.r_hi) << "] m\n"
              << "span length: " << fmt(region.span_length) << " m\n";
  } else {
    std::cout << "visible: yes\n"
              << "surviving samples: " << region.samples.size() << " / " << candidates << '\n'
              << "projection area: " << fmt(region.area) << " m^2\n";
  }

  if (!samples_path.empty()) {
    if (region.kind == ssg::ProjectionRegion::Kind::ss_span)
      dump_span_samples(region, samples_path);
    else
      dump_fl_samples(region, samples_path);
    std::cout << "samples written to " << samples_path << '\n';
  }
  return 0;
}

const char* direction_tag(ssg::Direction dir) {
  return dir == ssg::Direction::fl_to_ss ? "fl2ss" : "ss2fl";
}

int run_sweep(const CommonOptions& opts, bool all, int scenario_index,
              const std::string& direction_flag, const std::string& output_dir) {
  apply_kernel(opts.kernel);
  const ssg::RunConfig cfg = load(opts);

  std::vector<ssg::Direction> directions;
  if (all) {
    directions = {ssg::Direction::fl_to_ss, ssg::Direction::ss_to_fl};
  } else {
    if (direction_flag == "fl2ss")
      directions = {ssg::Direction::fl_to_ss};
    else if (direction_flag == "ss2fl")
      directions = {ssg::Direction::ss_to_fl};
    else
      throw std::runtime_error("--direction: expected fl2ss or ss2fl");
  }

  fs::path out_dir = output_dir.empty() ? fs::path(".") : fs::path(output_dir);
  if (cfg.output && output_dir.empty()) out_dir = *cfg.output;
  fs::create_directories(out_dir);

  for (ssg::Direction dir : directions) {
    std::vector<ssg::SweepScenario> suite =
        ssg::standard_suite(dir, cfg.fl, cfg.ss, cfg.resolution, cfg.sweep_angle_samples,
                            cfg.sweep_pair_angle_samples);
    for (ssg::SweepScenario& scenario : suite) {
      if (!all && scenario.index != scenario_index) continue;
      scenario.convention = cfg.convention;
      const std::vector<ssg::SweepRecord> records = ssg::run_scenario(scenario, opts.threads);
      const fs::path file =
          out_dir / ("sweep_" + std::string(direction_tag(dir)) + "_" +
                     std::to_string(scenario.index) + ".csv");
      ssg::emit_csv(records, file);
      std::cout << "scenario " << scenario.index << " (" << direction_tag(dir) << "): "
                << records.size() << " records -> " << file.string() << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-modal stereo sonar projection tool"};
  app.require_subcommand(1);

  CommonOptions opts;

  // project
  CLI::App* project = app.add_subcommand("project", "Project one observation into the other sonar");
  project->require_subcommand(1);
  std::string samples_path;
  CLI::App* p_fl2ss =
      project->add_subcommand("fl-to-ss", "Forward-looking observation into sidescan range space");
  CLI::App* p_ss2fl =
      project->add_subcommand("ss-to-fl", "Sidescan observation into forward-looking image space");
  for (CLI::App* sub : {p_fl2ss, p_ss2fl}) {
    sub->add_option("--config", opts.config_path, "JSON config file")->required();
    sub->add_option("--samples", samples_path, "Dump surviving samples to this CSV file");
    sub->add_option("--resolution", opts.resolution, "Base sampling resolution (default 512)");
    sub->add_option("--kernel", opts.kernel, "Transfer kernel: auto|scalar|avx2");
  }

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "Run orientation/distance sweep scenarios");
  bool all = false;
  int scenario_index = 0;
  std::string direction_flag;
  std::string output_dir;
  sweep->add_flag("--all", all, "Run all nine scenarios in both directions");
  sweep->add_option("--scenario", scenario_index, "Scenario index 1..9")->check(CLI::Range(1, 9));
  sweep->add_option("--direction", direction_flag, "fl2ss or ss2fl");
  sweep->add_option("--config", opts.config_path, "JSON config file");
  sweep->add_option("--output", output_dir, "Output directory for CSV files");
  sweep->add_option("--resolution", opts.resolution, "Base sampling resolution (default 512)");
  sweep->add_option("--threads", opts.threads, "Worker threads (0 = hardware)");
  sweep->add_option("--kernel", opts.kernel, "Transfer kernel: auto|scalar|avx2");

  if (argc <= 1) {
    std::cerr << app.help() << std::flush;
    return 2;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (project->parsed())
      return run_project(p_fl2ss->parsed() ? ssg::Direction::fl_to_ss : ssg::Direction::ss_to_fl,
                         opts, samples_path);
    if (sweep->parsed()) {
      if (!all && (scenario_index == 0 || direction_flag.empty()))
        throw std::runtime_error("sweep: give --all, or both --scenario and --direction");
      return run_sweep(opts, all, scenario_index, direction_flag, output_dir);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
