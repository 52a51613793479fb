#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "loadorbit/render.hpp"

namespace loadorbit {
namespace {

std::string num(double value, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::string escape_text(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct PlotRect {
  double x0 = 0.0;
  double y0 = 0.0;
  double w = 0.0;
  double h = 0.0;
};

// Maps complex-plane coordinates into a pixel rectangle; im grows upward.
struct Mapper {
  Region region;
  PlotRect rect;
  double x(double re) const {
    return rect.x0 + (re - region.re_min) / region.re_span() * rect.w;
  }
  double y(double im) const {
    return rect.y0 + (region.im_max - im) / region.im_span() * rect.h;
  }
};

void append_text(std::string& out, double x, double y, const std::string& text,
                 const char* anchor = "middle", int size = 10) {
  out += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"monospace\" font-size=\"" +
         std::to_string(size) + "\" text-anchor=\"" + anchor + "\">" + escape_text(text) +
         "</text>\n";
}

void append_line(std::string& out, double x1, double y1, double x2, double y2,
                 const char* color, double width = 1.0) {
  out += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
         "\" y2=\"" + num(y2) + "\" stroke=\"" + color + "\" stroke-width=\"" +
         num(width, 1) + "\"/>\n";
}

void append_marker(std::string& out, double x, double y, const char* color,
                   double radius = 2.4) {
  out += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"" + num(radius, 1) +
         "\" fill=\"" + color + "\"/>\n";
}

// Light-gray run-length rectangles over Mandelbrot-interior cells, drawn as a
// backdrop so orbits and trajectories sit on the set they live in.
void append_silhouette(std::string& out, const Mapper& mapper, int nx, int ny) {
  OrbitConfig config;
  config.max_iterations = 64;
  EscapeGrid grid = compute_escape_grid(mapper.region, nx, ny, config,
                                        GridMode::mandelbrot(), 0);
  double cell_w = mapper.rect.w / nx;
  double cell_h = mapper.rect.h / ny;
  for (int row = 0; row < ny; ++row) {
    int col = 0;
    while (col < nx) {
      if (grid.at(col, row) < grid.max_iterations) {
        ++col;
        continue;
      }
      int run_begin = col;
      while (col < nx && grid.at(col, row) == grid.max_iterations) ++col;
      out += "<rect x=\"" + num(mapper.rect.x0 + run_begin * cell_w) + "\" y=\"" +
             num(mapper.rect.y0 + row * cell_h) + "\" width=\"" +
             num((col - run_begin) * cell_w) + "\" height=\"" + num(cell_h) +
             "\" fill=\"#e4e4e4\"/>\n";
    }
  }
}

void append_plane_axes(std::string& out, const Mapper& mapper) {
  const PlotRect& r = mapper.rect;
  out += "<rect x=\"" + num(r.x0) + "\" y=\"" + num(r.y0) + "\" width=\"" + num(r.w) +
         "\" height=\"" + num(r.h) + "\" fill=\"none\" stroke=\"#333333\"/>\n";
  for (int k = 0; k <= 2; ++k) {
    double re = mapper.region.re_min + k * mapper.region.re_span() / 2;
    double im = mapper.region.im_min + k * mapper.region.im_span() / 2;
    append_line(out, mapper.x(re), r.y0 + r.h, mapper.x(re), r.y0 + r.h + 4, "#333333");
    append_text(out, mapper.x(re), r.y0 + r.h + 15, num(re), "middle", 9);
    append_line(out, r.x0 - 4, mapper.y(im), r.x0, mapper.y(im), "#333333");
    append_text(out, r.x0 - 6, mapper.y(im) + 3, num(im), "end", 9);
  }
}

Region fit_region(const std::vector<ComplexValue>& points, double pad_fraction) {
  Region region{points[0].re, points[0].re, points[0].im, points[0].im};
  for (const auto& p : points) {
    region.re_min = std::min(region.re_min, p.re);
    region.re_max = std::max(region.re_max, p.re);
    region.im_min = std::min(region.im_min, p.im);
    region.im_max = std::max(region.im_max, p.im);
  }
  double re_pad = std::max(region.re_span() * pad_fraction, 0.05);
  double im_pad = std::max(region.im_span() * pad_fraction, 0.05);
  region.re_min -= re_pad;
  region.re_max += re_pad;
  region.im_min -= im_pad;
  region.im_max += im_pad;
  return region;
}

std::string svg_open(int width, int height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
         std::to_string(width) + " " + std::to_string(height) + "\">\n";
}

struct SeriesLine {
  std::string name;
  const char* color;
  std::vector<double> values;
};

std::string line_chart(const std::string& title, const std::string& y_label,
                       const std::vector<int>& hours,
                       const std::vector<SeriesLine>& lines, int y_decimals,
                       bool zero_floor) {
  if (hours.empty()) throw std::invalid_argument("chart needs at least one point");
  for (const auto& line : lines) {
    if (line.values.size() != hours.size()) {
      throw std::invalid_argument("chart series length mismatch");
    }
  }

  const int width = 720, height = 440;
  const PlotRect rect{64, 40, width - 64 - 18.0, height - 40 - 48.0};

  double y_min = lines[0].values[0], y_max = lines[0].values[0];
  for (const auto& line : lines) {
    for (double v : line.values) {
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
  }
  if (zero_floor) y_min = 0.0;
  if (y_min == y_max) {
    y_min -= 1.0;
    y_max += 1.0;
  } else {
    double pad = (y_max - y_min) * 0.06;
    y_max += pad;
    if (!zero_floor) y_min -= pad;
  }
  int x_min = *std::min_element(hours.begin(), hours.end());
  int x_max = *std::max_element(hours.begin(), hours.end());
  double x_span = x_max > x_min ? x_max - x_min : 1.0;

  auto px = [&](double hour) { return rect.x0 + (hour - x_min) / x_span * rect.w; };
  auto py = [&](double v) { return rect.y0 + (y_max - v) / (y_max - y_min) * rect.h; };

  std::string out = svg_open(width, height);
  append_text(out, width / 2.0, 22, title, "middle", 13);

  for (int k = 0; k <= 4; ++k) {
    double v = y_min + k * (y_max - y_min) / 4;
    append_line(out, rect.x0, py(v), rect.x0 + rect.w, py(v), "#e8e8e8");
    append_text(out, rect.x0 - 7, py(v) + 3, num(v, y_decimals), "end", 9);
  }
  for (int h = x_min; h <= x_max; ++h) {
    if (h % 2 != 0 && h != x_max) continue;
    append_line(out, px(h), rect.y0 + rect.h, px(h), rect.y0 + rect.h + 4, "#333333");
    append_text(out, px(h), rect.y0 + rect.h + 15, std::to_string(h), "middle", 9);
  }
  out += "<rect x=\"" + num(rect.x0) + "\" y=\"" + num(rect.y0) + "\" width=\"" +
         num(rect.w) + "\" height=\"" + num(rect.h) + "\" fill=\"none\" stroke=\"#333333\"/>\n";
  append_text(out, rect.x0 + rect.w / 2, height - 10, "hour", "middle", 10);
  append_text(out, 16, rect.y0 - 10, y_label, "start", 10);

  for (const auto& line : lines) {
    if (hours.size() >= 2) {
      std::string pts;
      for (std::size_t i = 0; i < hours.size(); ++i) {
        pts += num(px(hours[i])) + "," + num(py(line.values[i])) + " ";
      }
      pts.pop_back();
      out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + line.color +
             "\" stroke-width=\"1.5\"/>\n";
    }
    for (std::size_t i = 0; i < hours.size(); ++i) {
      append_marker(out, px(hours[i]), py(line.values[i]), line.color, 2.2);
    }
  }

  if (lines.size() > 1) {
    double lx = rect.x0 + rect.w - 110, ly = rect.y0 + 10;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      out += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly + 14.0 * i - 7) +
             "\" width=\"10\" height=\"10\" fill=\"" + lines[i].color + "\"/>\n";
      append_text(out, lx + 14, ly + 14.0 * i + 2, lines[i].name, "start", 10);
    }
  }

  out += "</svg>\n";
  return out;
}

}  // namespace

std::string orbit_svg(const std::vector<OrbitTrace>& traces, const OrbitSvgOptions& options) {
  if (traces.empty()) throw std::invalid_argument("orbit diagram needs at least one trace");
  if (!options.labels.empty() && options.labels.size() != traces.size()) {
    throw std::invalid_argument("orbit diagram labels must match traces");
  }

  const int panel = 340;
  int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(traces.size()))));
  int rows = static_cast<int>((traces.size() + cols - 1) / cols);

  std::string out = svg_open(cols * panel, rows * panel);
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const OrbitTrace& trace = traces[i];
    double ox = static_cast<double>(panel) * (i % cols);
    double oy = static_cast<double>(panel) * (i / cols);

    Mapper mapper;
    mapper.rect = {ox + 50, oy + 30, panel - 50 - 16.0, panel - 30 - 40.0};
    mapper.region = options.region ? *options.region : fit_region(trace.points, 0.12);

    if (options.set_silhouette) append_silhouette(out, mapper, 132, 110);
    append_plane_axes(out, mapper);

    std::string label = options.labels.empty() ? "orbit " + std::to_string(i)
                                               : options.labels[i];
    append_text(out, ox + panel / 2.0, oy + 18,
                label + " (" + std::to_string(trace.orbit_count()) + " steps)", "middle", 11);

    if (trace.points.size() >= 2) {
      std::string pts;
      for (const auto& p : trace.points) {
        pts += num(mapper.x(p.re)) + "," + num(mapper.y(p.im)) + " ";
      }
      pts.pop_back();
      out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\"/>\n";
    }
    for (std::size_t k = 0; k < trace.points.size(); ++k) {
      append_marker(out, mapper.x(trace.points[k].re), mapper.y(trace.points[k].im),
                    k == 0 ? "#2ca02c" : "#d62728");
    }
  }
  out += "</svg>\n";
  return out;
}

std::string demand_curve_svg(const std::vector<DemandSample>& samples) {
  if (samples.empty()) throw std::invalid_argument("demand curve needs at least one sample");
  std::vector<int> hours;
  SeriesLine p{"P (MW)", "#1f77b4", {}};
  SeriesLine q{"Q (MVAr)", "#ff7f0e", {}};
  for (const auto& sample : samples) {
    hours.push_back(sample.hour_index);
    p.values.push_back(sample.p_mw);
    q.values.push_back(sample.q_mvar);
  }
  return line_chart("Daily demand", "power", hours, {p, q}, 0, true);
}

std::string counts_svg(const DaySeries& series) {
  if (series.hours.empty()) throw std::invalid_argument("counts chart needs data");
  SeriesLine line{"orbits", "#2ca02c", {}};
  line.values.assign(series.orbit_counts.begin(), series.orbit_counts.end());
  return line_chart("Orbit count by hour", "orbits", series.hours, {line}, 0, true);
}

std::string attractors_svg(const DaySeries& series) {
  if (series.hours.empty()) throw std::invalid_argument("attractor chart needs data");
  SeriesLine line{"attractor", "#9467bd", series.attractors};
  return line_chart("Attractor magnitude by hour", "attractor", series.hours, {line}, 3, false);
}

std::string trajectory_svg(const std::vector<PerUnitPoint>& points,
                           const std::vector<int>& hours, bool set_silhouette) {
  if (points.empty()) throw std::invalid_argument("trajectory needs at least one point");
  if (points.size() != hours.size()) {
    throw std::invalid_argument("trajectory hours must match points");
  }

  const int width = 560, height = 560;
  std::vector<ComplexValue> cs;
  cs.reserve(points.size());
  for (const auto& p : points) cs.push_back(p.c);

  Mapper mapper;
  mapper.rect = {60, 40, width - 60 - 20.0, height - 40 - 50.0};
  mapper.region = fit_region(cs, 0.2);

  std::string out = svg_open(width, height);
  append_text(out, width / 2.0, 22, "Demand trajectory in the complex plane", "middle", 13);
  if (set_silhouette) append_silhouette(out, mapper, 150, 150);
  append_plane_axes(out, mapper);

  if (cs.size() >= 2) {
    std::string pts;
    for (const auto& c : cs) pts += num(mapper.x(c.re)) + "," + num(mapper.y(c.im)) + " ";
    pts.pop_back();
    out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\"/>\n";
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    append_marker(out, mapper.x(cs[i].re), mapper.y(cs[i].im), "#d62728");
    char label[8];
    std::snprintf(label, sizeof(label), "%02d", hours[i]);
    append_text(out, mapper.x(cs[i].re) + 4, mapper.y(cs[i].im) - 4, label, "start", 8);
  }
  out += "</svg>\n";
  return out;
}

}  // namespace loadorbit
