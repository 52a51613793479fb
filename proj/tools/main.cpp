#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loadorbit/analysis.hpp"
#include "loadorbit/demand.hpp"
#include "loadorbit/dynamics.hpp"
#include "loadorbit/render.hpp"

namespace {

using namespace loadorbit;

struct RunConfig {
  std::string input = "demo";
  double base_mva = 4000.0;
  double epsilon = 0.01;
  int max_iterations = 1000;
  double escape_radius = 2.0;
  std::string out_dir = "out";
  std::string pu_source = "exact";
  int threads = 0;
};

OrbitConfig orbit_config(const RunConfig& cfg) {
  OrbitConfig config;
  config.escape_radius = cfg.escape_radius;
  config.convergence_epsilon = cfg.epsilon;
  config.max_iterations = cfg.max_iterations;
  config.validate();
  return config;
}

std::vector<DemandSample> load_samples(const RunConfig& cfg) {
  if (cfg.input == "demo") return embedded_demo_dataset();
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + cfg.input);
  return parse_demand_csv(in);
}

std::vector<PerUnitPoint> per_unit_points(const RunConfig& cfg,
                                          const std::vector<DemandSample>& samples) {
  if (cfg.pu_source == "printed") {
    if (cfg.input != "demo") {
      throw std::runtime_error("--pu-source printed is only available with --input demo");
    }
    const auto& printed = demo_printed_per_unit();
    return {printed.begin(), printed.end()};
  }
  std::vector<PerUnitPoint> points;
  points.reserve(samples.size());
  for (const auto& sample : samples) points.push_back(to_per_unit(sample, cfg.base_mva));
  return points;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("failed writing output file: " + path.string());
}

std::filesystem::path ensure_out_dir(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<AnalysisRow> analyze_rows(const RunConfig& cfg,
                                      const std::vector<DemandSample>& samples) {
  OrbitConfig config = orbit_config(cfg);
  std::vector<PerUnitPoint> points = per_unit_points(cfg, samples);
  std::vector<AnalysisRow> rows;
  rows.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    rows.push_back(analyze_point(samples[i].hour_index, points[i].c, config));
  }
  return rows;
}

int cmd_analyze(const RunConfig& cfg) {
  std::vector<DemandSample> samples = load_samples(cfg);
  std::vector<AnalysisRow> rows = analyze_rows(cfg, samples);
  std::filesystem::path dir = ensure_out_dir(cfg);
  write_file(dir / "analysis.csv", write_analysis_csv(rows));
  write_file(dir / "analysis.json", write_analysis_json(rows));
  if (cfg.input == "demo") {
    write_file(dir / "deviation.csv", write_deviation_csv(deviation_report(rows)));
  }
  return 0;
}

int cmd_orbits(const RunConfig& cfg, std::vector<int> hours) {
  std::vector<DemandSample> samples = load_samples(cfg);
  std::vector<PerUnitPoint> points = per_unit_points(cfg, samples);

  std::set<int> known;
  for (const auto& sample : samples) known.insert(sample.hour_index);
  if (hours.empty()) {
    hours.assign(known.begin(), known.end());
  }
  for (int hour : hours) {
    if (!known.count(hour)) throw std::runtime_error("unknown hour " + std::to_string(hour));
  }

  OrbitConfig config = orbit_config(cfg);
  std::vector<OrbitTrace> traces;
  std::vector<std::string> labels;
  Region shared{};
  bool first = true;
  for (int hour : hours) {
    std::size_t index = 0;
    while (samples[index].hour_index != hour) ++index;
    OrbitTrace trace = loadorbit::orbit_trace(points[index].c, config);
    for (const auto& p : trace.points) {
      if (first) {
        shared = {p.re, p.re, p.im, p.im};
        first = false;
      }
      shared.re_min = std::min(shared.re_min, p.re);
      shared.re_max = std::max(shared.re_max, p.re);
      shared.im_min = std::min(shared.im_min, p.im);
      shared.im_max = std::max(shared.im_max, p.im);
    }
    traces.push_back(std::move(trace));
    labels.push_back(samples[index].label);
  }
  double re_pad = std::max(shared.re_span() * 0.12, 0.05);
  double im_pad = std::max(shared.im_span() * 0.12, 0.05);
  shared.re_min -= re_pad;
  shared.re_max += re_pad;
  shared.im_min -= im_pad;
  shared.im_max += im_pad;

  std::filesystem::path dir = ensure_out_dir(cfg);
  OrbitSvgOptions options;
  options.region = shared;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "orbit_%02d.svg", hours[i]);
    OrbitSvgOptions single = options;
    single.labels = {labels[i]};
    write_file(dir / name, orbit_svg({traces[i]}, single));
  }
  options.labels = labels;
  write_file(dir / "orbits_panel.svg", orbit_svg(traces, options));
  return 0;
}

int cmd_render(const RunConfig& cfg, const std::string& mode, const std::string& c_text,
               const std::vector<double>& region_fields, int width, int height,
               const std::string& palette_name, bool with_trajectory,
               bool max_iters_given) {
  Region region;
  if (!region_fields.empty()) {
    region = {region_fields[0], region_fields[1], region_fields[2], region_fields[3]};
  }
  OrbitConfig config = orbit_config(cfg);
  if (!max_iters_given) config.max_iterations = 256;
  Palette palette = palette_name == "paper" ? Palette::Banded : Palette::Grayscale;

  std::filesystem::path dir = ensure_out_dir(cfg);
  if (mode == "julia") {
    if (c_text.empty()) throw std::runtime_error("julia mode needs --c <complex>");
    ComplexValue c = parse_complex_literal(c_text);
    EscapeGrid grid = compute_escape_grid(region, width, height, config,
                                          GridMode::julia(c), cfg.threads);
    write_file(dir / ("julia_" + complex_filename_tag(c) + ".ppm"),
               write_ppm(grid, palette));
  } else {
    EscapeGrid grid = compute_escape_grid(region, width, height, config,
                                          GridMode::mandelbrot(), cfg.threads);
    write_file(dir / "mandelbrot.ppm", write_ppm(grid, palette));
  }

  if (with_trajectory) {
    std::vector<DemandSample> samples = load_samples(cfg);
    std::vector<PerUnitPoint> points = per_unit_points(cfg, samples);
    std::vector<int> hours;
    for (const auto& sample : samples) hours.push_back(sample.hour_index);
    write_file(dir / "trajectory.svg", trajectory_svg(points, hours, true));
  }
  return 0;
}

int cmd_curves(const RunConfig& cfg) {
  std::vector<DemandSample> samples = load_samples(cfg);
  std::vector<AnalysisRow> rows = analyze_rows(cfg, samples);
  std::vector<PerUnitPoint> points = per_unit_points(cfg, samples);
  DaySeries series = day_series(rows);

  std::vector<int> hours;
  for (const auto& sample : samples) hours.push_back(sample.hour_index);

  std::filesystem::path dir = ensure_out_dir(cfg);
  write_file(dir / "demand_curve.svg", demand_curve_svg(samples));
  write_file(dir / "trajectory.svg", trajectory_svg(points, hours, true));
  write_file(dir / "counts.svg", counts_svg(series));
  write_file(dir / "attractors.svg", attractors_svg(series));
  return 0;
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--input", cfg.input, "input CSV path, or 'demo' for the built-in dataset");
  cmd->add_option("--base-mva", cfg.base_mva, "per-unit base in MVA")->check(CLI::PositiveNumber);
  cmd->add_option("--epsilon", cfg.epsilon, "convergence tolerance");
  cmd->add_option("--escape-radius", cfg.escape_radius, "escape radius");
  cmd->add_option("--out", cfg.out_dir, "output directory");
  cmd->add_option("--pu-source", cfg.pu_source, "per-unit values: recomputed or published")
      ->check(CLI::IsMember({"exact", "printed"}));
  cmd->add_option("--threads", cfg.threads, "render worker threads (0 = hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"daily demand orbits under z <- z^2 + c"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto* analyze = app.add_subcommand("analyze", "per-hour attractor and orbit table");
  add_common_flags(analyze, cfg);
  auto* analyze_iters = analyze->add_option("--max-iters", cfg.max_iterations, "iteration budget");

  std::vector<int> hours;
  auto* orbits = app.add_subcommand("orbits", "orbit diagrams per hour");
  add_common_flags(orbits, cfg);
  auto* orbits_iters = orbits->add_option("--max-iters", cfg.max_iterations, "iteration budget");
  orbits->add_option("--hours", hours, "hours to draw (default: all)")->delimiter(',');

  std::string mode = "mandelbrot";
  std::string c_text;
  std::vector<double> region_fields;
  int width = 800, height = 600;
  std::string palette_name = "gray";
  bool with_trajectory = false;
  auto* render = app.add_subcommand("render", "escape-time PPM images");
  add_common_flags(render, cfg);
  auto* render_iters = render->add_option("--max-iters", cfg.max_iterations,
                                          "iteration budget (default 256 here)");
  render->add_option("--mode", mode, "mandelbrot or julia")
      ->check(CLI::IsMember({"mandelbrot", "julia"}));
  render->add_option("--c", c_text, "julia parameter, e.g. -1+0i");
  render->add_option("--region", region_fields, "re_min,re_max,im_min,im_max")
      ->delimiter(',')
      ->expected(4);
  render->add_option("--width", width, "image width")->check(CLI::PositiveNumber);
  render->add_option("--height", height, "image height")->check(CLI::PositiveNumber);
  render->add_option("--palette", palette_name, "gray or paper")
      ->check(CLI::IsMember({"gray", "paper"}));
  render->add_flag("--with-trajectory", with_trajectory,
                   "also plot the demand points over the set");

  auto* curves = app.add_subcommand("curves", "demand, trajectory, counts, attractor charts");
  add_common_flags(curves, cfg);
  auto* curves_iters = curves->add_option("--max-iters", cfg.max_iterations, "iteration budget");

  CLI11_PARSE(app, argc, argv);
  (void)analyze_iters;
  (void)curves_iters;
  (void)orbits_iters;

  try {
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (orbits->parsed()) return cmd_orbits(cfg, hours);
    if (render->parsed()) {
      return cmd_render(cfg, mode, c_text, region_fields, width, height, palette_name,
                        with_trajectory, render_iters->count() > 0);
    }
    if (curves->parsed()) return cmd_curves(cfg);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}
