#include "loadorbit/render.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace loadorbit {
namespace {

int escape_count(ComplexValue z, ComplexValue c, double radius_squared,
                 int max_iterations) {
  for (int t = 0; t < max_iterations; ++t) {
    if (magnitude_squared(z) > radius_squared) return t;
    z = quadratic_step(z, c);
  }
  return max_iterations;
}

void fill_rows(EscapeGrid& grid, const OrbitConfig& config, int row_begin, int row_end) {
  const double r2 = config.escape_radius * config.escape_radius;
  for (int row = row_begin; row < row_end; ++row) {
    for (int col = 0; col < grid.width; ++col) {
      ComplexValue point = pixel_point(grid.region, grid.width, grid.height, col, row);
      ComplexValue z0, c;
      if (grid.mode.kind == GridKind::Mandelbrot) {
        c = point;
      } else {
        z0 = point;
        c = grid.mode.julia_c;
      }
      grid.counts[static_cast<std::size_t>(row) * grid.width + col] =
          escape_count(z0, c, r2, config.max_iterations);
    }
  }
}

}  // namespace

void Region::validate() const {
  if (!(re_min < re_max) || !(im_min < im_max)) {
    throw std::invalid_argument("region must satisfy re_min < re_max and im_min < im_max");
  }
}

ComplexValue pixel_point(const Region& region, int width, int height, int col, int row) {
  return {region.re_min + (col + 0.5) * region.re_span() / width,
          region.im_max - (row + 0.5) * region.im_span() / height};
}

EscapeGrid compute_escape_grid(const Region& region, int width, int height,
                               const OrbitConfig& config, GridMode mode, int threads) {
  region.validate();
  config.validate();
  if (width < 1 || height < 1) {
    throw std::invalid_argument("grid needs width >= 1 and height >= 1");
  }
  if (mode.kind == GridKind::Julia && !is_finite(mode.julia_c)) {
    throw std::invalid_argument("julia parameter must be finite");
  }

  EscapeGrid grid;
  grid.region = region;
  grid.width = width;
  grid.height = height;
  grid.max_iterations = config.max_iterations;
  grid.mode = mode;
  grid.counts.assign(static_cast<std::size_t>(width) * height, 0);

  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  threads = std::min(threads, height);

  if (threads == 1) {
    fill_rows(grid, config, 0, height);
    return grid;
  }

  std::vector<std::thread> workers;
  workers.reserve(threads);
  int rows_per_worker = height / threads;
  int remainder = height % threads;
  int row = 0;
  for (int w = 0; w < threads; ++w) {
    int take = rows_per_worker + (w < remainder ? 1 : 0);
    workers.emplace_back(fill_rows, std::ref(grid), std::cref(config), row, row + take);
    row += take;
  }
  for (auto& worker : workers) worker.join();
  return grid;
}

std::string write_ppm(const EscapeGrid& grid, Palette palette) {
  static const std::array<std::array<unsigned char, 3>, 16> bands = {{
      {66, 30, 15},    {25, 7, 26},     {9, 1, 47},      {4, 4, 73},
      {0, 7, 100},     {12, 44, 138},   {24, 82, 177},   {57, 125, 209},
      {134, 181, 229}, {211, 236, 248}, {241, 233, 191}, {248, 201, 95},
      {255, 170, 0},   {204, 128, 0},   {153, 87, 0},    {106, 52, 3},
  }};

  std::string out = "P6\n" + std::to_string(grid.width) + " " +
                    std::to_string(grid.height) + "\n255\n";
  out.reserve(out.size() + grid.counts.size() * 3);
  for (int count : grid.counts) {
    if (count >= grid.max_iterations) {
      out.append(3, '\0');
    } else if (palette == Palette::Grayscale) {
      auto level = static_cast<char>(255LL * count / grid.max_iterations);
      out.append(3, level);
    } else {
      const auto& rgb = bands[static_cast<std::size_t>(count) % bands.size()];
      out += static_cast<char>(rgb[0]);
      out += static_cast<char>(rgb[1]);
      out += static_cast<char>(rgb[2]);
    }
  }
  return out;
}

ComplexValue parse_complex_literal(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty complex literal");
  std::string body = text;
  bool imaginary_tail = body.back() == 'i' || body.back() == 'j';
  if (imaginary_tail) body.pop_back();

  auto parse_real = [&](const std::string& field) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(field, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad complex literal: " + text);
    }
    if (used != field.size()) throw std::invalid_argument("bad complex literal: " + text);
    return value;
  };

  // Split at the last +/- that is not an exponent sign and not leading.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') &&
        body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }

  if (split == std::string::npos) {
    double value = parse_real(body.empty() ? "1" : body == "-" ? "-1" : body);
    if (imaginary_tail) return {0.0, value};
    return {value, 0.0};
  }
  if (!imaginary_tail) throw std::invalid_argument("bad complex literal: " + text);
  std::string im_field = body.substr(split);
  if (im_field == "+") im_field = "1";
  if (im_field == "-") im_field = "-1";
  return {parse_real(body.substr(0, split)), parse_real(im_field)};
}

std::string complex_filename_tag(ComplexValue c) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.6g_%.6g", c.re, c.im);
  return buf;
}

}  // namespace loadorbit
