#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace loadorbit {

/// A point in the complex plane. Dimensionless per-unit coordinates when it
/// represents a demand sample, plain coordinates otherwise. All public
/// operations require both components to be finite.
struct ComplexValue {
  double re = 0.0;
  double im = 0.0;

  friend bool operator==(const ComplexValue&, const ComplexValue&) = default;
};

double magnitude(ComplexValue z);
double magnitude_squared(ComplexValue z);
double distance(ComplexValue a, ComplexValue b);
bool is_finite(ComplexValue z);

/// Parameters shared by the escape-time and orbit-tracing kernels.
///
/// escape_radius must be >= 2: radius 2 is already sufficient to certify
/// divergence, larger values only delay detection. convergence_epsilon is the
/// successive-step threshold used by orbit_trace.
struct OrbitConfig {
  double escape_radius = 2.0;
  double convergence_epsilon = 0.01;
  int max_iterations = 1000;

  /// Throws std::invalid_argument when any invariant is violated.
  void validate() const;
};

enum class TerminalKind : std::uint8_t { Escaped, Converged, MaxIterationsReached };

/// How an orbit stopped, and at which iteration index.
struct TerminalStatus {
  TerminalKind kind = TerminalKind::MaxIterationsReached;
  int iteration = 0;

  friend bool operator==(const TerminalStatus&, const TerminalStatus&) = default;
};

/// The finite orbit z0, z1, ..., zT of the quadratic map started at z0 = c.
/// points holds every iterate including the stopping one; terminal records
/// why the iteration stopped.
struct OrbitTrace {
  ComplexValue seed;
  std::vector<ComplexValue> points;
  TerminalStatus terminal;

  int orbit_count() const { return static_cast<int>(points.size()) - 1; }
  ComplexValue final_point() const { return points.back(); }
};

/// Attractor estimate for one constant c: the magnitude of the orbit's
/// stopping point, the iteration count, and the closed-form fixed-point
/// cross-check.
struct AttractorResult {
  double attractor_magnitude = 0.0;
  ComplexValue final_point;
  int orbit_count = 0;
  ComplexValue fixed_point;
  double multiplier_magnitude = 0.0;
  TerminalStatus status;
};

/// A fixed point z* of z^2 + c together with |2 z*|, the magnitude of the
/// map's derivative there. The fixed point attracts nearby orbits when the
/// multiplier is below 1.
struct FixedPoint {
  ComplexValue point;
  double multiplier = 0.0;
};

struct FixedPointPair {
  FixedPoint attracting_candidate;  // smaller multiplier
  FixedPoint repelling;             // larger (or equal) multiplier
};

/// One step of the quadratic map: z^2 + c with standard complex
/// multiplication. Total on finite inputs.
inline ComplexValue quadratic_step(ComplexValue z, ComplexValue c) {
  return {z.re * z.re - z.im * z.im + c.re, 2.0 * z.re * z.im + c.im};
}

struct EscapeOutcome {
  bool escaped = false;
  int iteration = 0;  // first t with |z_t| > escape_radius; meaningless otherwise
};

/// Escape-time classification of c: iterate from z0 = 0 and report the first
/// iteration whose magnitude strictly exceeds the escape radius, or Interior
/// (escaped = false) when the budget runs out.
EscapeOutcome escape_time(ComplexValue c, const OrbitConfig& config);

/// Trace the orbit started at z0 = c. Stops at the first of: escape
/// (|z_t| > escape_radius), convergence (|z_t - z_{t-1}| < epsilon), or the
/// iteration budget. The returned trace includes z0 and the stopping iterate.
OrbitTrace orbit_trace(ComplexValue c, const OrbitConfig& config);

/// Summarize a trace: attractor magnitude is the magnitude of the last orbit
/// point, orbit count the number of iterations performed. The closed-form
/// fixed point with the smaller multiplier is attached as a cross-check,
/// whether or not the trace converged.
AttractorResult attractor_estimate(const OrbitTrace& trace);

/// Both roots of z^2 - z + c = 0 via the quadratic formula,
/// z* = (1 +- sqrt(1 - 4c)) / 2, with multipliers |2 z*|. Principal square
/// root: non-negative real part; if the real part is zero, non-negative
/// imaginary part. For c = 1/4 both entries hold the double root.
FixedPointPair fixed_points(ComplexValue c);

/// Closed-form interior test: c lies in the main cardioid iff
/// |1 - sqrt(1 - 4c)| <= 1 (the attracting-fixed-point condition).
bool in_main_cardioid(ComplexValue c);

/// Closed-form interior test for the period-2 bulb: |c + 1| < 1/4.
bool in_period2_bulb(ComplexValue c);

}  // namespace loadorbit
