#include "loadorbit/dynamics.hpp"

#include <cmath>

namespace loadorbit {

namespace {

void require_finite(ComplexValue z, const char* what) {
  if (!is_finite(z)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

// Principal complex square root with the convention pinned: the real part is
// non-negative, and when it is zero the imaginary part is non-negative.
ComplexValue principal_sqrt(ComplexValue w) {
  const double mag = magnitude(w);
  // sqrt in polar form, stabilized around the real axis.
  double re = std::sqrt((mag + w.re) / 2.0);
  double im = std::sqrt((mag - w.re) / 2.0);
  if (w.im < 0.0) im = -im;
  if (re == 0.0) {
    re = 0.0;  // normalize -0
    im = std::fabs(im);
  }
  return {re, im};
}

}  // namespace

double magnitude_squared(ComplexValue z) { return z.re * z.re + z.im * z.im; }

// sqrt of the exact-rounded norm keeps magnitudes reproducible across IEEE
// platforms (std::hypot is not correctly rounded everywhere). Components
// handled here stay far below the overflow threshold.
double magnitude(ComplexValue z) { return std::sqrt(magnitude_squared(z)); }

double distance(ComplexValue a, ComplexValue b) {
  return magnitude({a.re - b.re, a.im - b.im});
}

bool is_finite(ComplexValue z) { return std::isfinite(z.re) && std::isfinite(z.im); }

void OrbitConfig::validate() const {
  if (!(escape_radius >= 2.0)) {
    throw std::invalid_argument("escape_radius must be >= 2");
  }
  if (!(convergence_epsilon > 0.0) || !(convergence_epsilon < escape_radius)) {
    throw std::invalid_argument("convergence_epsilon must lie in (0, escape_radius)");
  }
  if (max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be >= 1");
  }
}

EscapeOutcome escape_time(ComplexValue c, const OrbitConfig& config) {
  require_finite(c, "c");
  config.validate();
  const double r2 = config.escape_radius * config.escape_radius;
  ComplexValue z{0.0, 0.0};
  for (int t = 1; t <= config.max_iterations; ++t) {
    z = quadratic_step(z, c);
    if (magnitude_squared(z) > r2) return {true, t};
  }
  return {false, 0};
}

OrbitTrace orbit_trace(ComplexValue c, const OrbitConfig& config) {
  require_finite(c, "c");
  config.validate();
  const double r2 = config.escape_radius * config.escape_radius;

  OrbitTrace trace;
  trace.seed = c;
  trace.points.reserve(16);
  trace.points.push_back(c);

  ComplexValue z = c;
  for (int t = 1; t <= config.max_iterations; ++t) {
    const ComplexValue next = quadratic_step(z, c);
    trace.points.push_back(next);
    if (magnitude_squared(next) > r2) {
      trace.terminal = {TerminalKind::Escaped, t};
      return trace;
    }
    if (distance(next, z) < config.convergence_epsilon) {
      trace.terminal = {TerminalKind::Converged, t};
      return trace;
    }
    z = next;
  }
  trace.terminal = {TerminalKind::MaxIterationsReached, config.max_iterations};
  return trace;
}

AttractorResult attractor_estimate(const OrbitTrace& trace) {
  AttractorResult result;
  result.final_point = trace.final_point();
  result.attractor_magnitude = magnitude(result.final_point);
  result.orbit_count = trace.orbit_count();
  result.status = trace.terminal;

  const FixedPointPair roots = fixed_points(trace.seed);
  result.fixed_point = roots.attracting_candidate.point;
  result.multiplier_magnitude = roots.attracting_candidate.multiplier;
  return result;
}

FixedPointPair fixed_points(ComplexValue c) {
  require_finite(c, "c");
  const ComplexValue disc{1.0 - 4.0 * c.re, -4.0 * c.im};
  const ComplexValue s = principal_sqrt(disc);
  const FixedPoint minus{{(1.0 - s.re) / 2.0, -s.im / 2.0},
                         magnitude({1.0 - s.re, -s.im})};
  const FixedPoint plus{{(1.0 + s.re) / 2.0, s.im / 2.0},
                        magnitude({1.0 + s.re, s.im})};
  if (minus.multiplier <= plus.multiplier) return {minus, plus};
  return {plus, minus};
}

bool in_main_cardioid(ComplexValue c) {
  require_finite(c, "c");
  const ComplexValue s = principal_sqrt({1.0 - 4.0 * c.re, -4.0 * c.im});
  return magnitude({1.0 - s.re, -s.im}) <= 1.0;
}

bool in_period2_bulb(ComplexValue c) {
  require_finite(c, "c");
  return magnitude({c.re + 1.0, c.im}) < 0.25;
}

}  // namespace loadorbit
