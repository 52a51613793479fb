#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loadorbit/analysis.hpp"
#include "loadorbit/demand.hpp"
#include "loadorbit/dynamics.hpp"

namespace loadorbit {

/// Rectangular viewport in the complex plane.
struct Region {
  double re_min = -2.5;
  double re_max = 1.0;
  double im_min = -1.25;
  double im_max = 1.25;
  void validate() const;  // throws std::invalid_argument unless min < max on both axes
  double re_span() const { return re_max - re_min; }
  double im_span() const { return im_max - im_min; }
};

enum class GridKind : std::uint8_t { Mandelbrot, Julia };

/// Mandelbrot mode iterates z <- z^2 + c with c = pixel point and z0 = 0.
/// Julia mode fixes c and seeds z0 at the pixel point.
struct GridMode {
  GridKind kind = GridKind::Mandelbrot;
  ComplexValue julia_c;
  static GridMode mandelbrot() { return {}; }
  static GridMode julia(ComplexValue c) { return {GridKind::Julia, c}; }
};

/// Escape-iteration counts over a pixel grid. counts is row-major with the
/// top row first; each entry is the first index t with |z_t| > escape_radius,
/// or max_iterations for pixels that never escaped within the budget.
struct EscapeGrid {
  Region region;
  int width = 0;
  int height = 0;
  int max_iterations = 0;
  GridMode mode;
  std::vector<int> counts;
  int at(int col, int row) const { return counts[static_cast<std::size_t>(row) * width + col]; }
};

/// Complex point sampled at the center of pixel (col, row); row grows downward.
ComplexValue pixel_point(const Region& region, int width, int height, int col, int row);

/// Compute the grid, splitting rows across threads (0 = hardware count).
/// Results are bit-identical for any thread count.
EscapeGrid compute_escape_grid(const Region& region, int width, int height,
                               const OrbitConfig& config, GridMode mode,
                               int threads = 0);

enum class Palette : std::uint8_t { Grayscale, Banded };

/// Binary PPM ("P6", maxval 255). Grayscale: never-escaped pixels are black,
/// escaped pixels get gray level floor(255*count/max_iterations). Banded:
/// never-escaped pixels are black, escaped pixels cycle a fixed color table.
std::string write_ppm(const EscapeGrid& grid, Palette palette = Palette::Grayscale);

/// Parse "a", "a+bi", "a-bi" (also accepts 'j' for the imaginary unit).
ComplexValue parse_complex_literal(const std::string& text);

/// Compact deterministic tag for filenames, e.g. (-1, 0) -> "-1_0".
std::string complex_filename_tag(ComplexValue c);

struct OrbitSvgOptions {
  std::optional<Region> region;        // shared axes; default fits each trace
  bool set_silhouette = true;          // light Mandelbrot-interior underlay
  std::vector<std::string> labels;     // per-panel titles, parallel to traces
};

/// One labeled panel per trace: the orbit polyline with per-point markers on
/// complex-plane axes.
std::string orbit_svg(const std::vector<OrbitTrace>& traces,
                      const OrbitSvgOptions& options = {});

/// Real and reactive demand vs hour as two labeled polylines.
std::string demand_curve_svg(const std::vector<DemandSample>& samples);

/// Orbit counts vs hour.
std::string counts_svg(const DaySeries& series);

/// Attractor magnitudes vs hour.
std::string attractors_svg(const DaySeries& series);

/// The per-unit demand points joined in hour order on complex-plane axes,
/// optionally over a Mandelbrot-interior silhouette.
std::string trajectory_svg(const std::vector<PerUnitPoint>& points,
                           const std::vector<int>& hours,
                           bool set_silhouette = true);

}  // namespace loadorbit
