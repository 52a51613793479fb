#pragma once

#include <array>
#include <string>
#include <vector>

#include "loadorbit/demand.hpp"
#include "loadorbit/dynamics.hpp"

namespace loadorbit {

/// Axis-aligned extent of a set of orbit points. May be degenerate (a single
/// point collapses it to zero width and height).
struct BoundingBox {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;
};

/// Size measures of one orbit: diameter is the maximum pairwise distance
/// among the stored points, path_length the total length of the polyline
/// through them. diameter <= path_length always.
struct OrbitGeometry {
  double diameter = 0.0;
  double path_length = 0.0;
  BoundingBox bounding_box;
};

/// One analyzed hour: the per-unit constant, its attractor estimate, and the
/// orbit-geometry columns.
struct AnalysisRow {
  int hour_index = 0;
  ComplexValue c;
  double attractor_magnitude = 0.0;
  int orbit_count = 0;
  TerminalStatus terminal;
  double orbit_diameter = 0.0;
  double path_length = 0.0;
  double multiplier_magnitude = 0.0;
};

/// Orbit counts and attractor magnitudes projected into plottable series.
struct DaySeries {
  std::vector<int> hours;
  std::vector<int> orbit_counts;
  std::vector<double> attractors;
};

struct ExpansionDelta {
  int hour = 0;  // later hour of the consecutive pair
  double delta_diameter = 0.0;
};

/// Exact pairwise-scan geometry of a trace (O(n^2), n bounded by the
/// iteration budget).
OrbitGeometry orbit_geometry(const OrbitTrace& trace);

/// Analyze one constant: trace the orbit, estimate the attractor, measure
/// the geometry.
AnalysisRow analyze_point(int hour_index, ComplexValue c, const OrbitConfig& config);

/// Full-day analysis: convert each sample to per-unit and analyze it.
/// Rows come back in hour order.
std::vector<AnalysisRow> analyze_day(const std::vector<DemandSample>& samples,
                                     double base_mva, const OrbitConfig& config);

/// Project rows into the orbit-count and attractor series.
DaySeries day_series(const std::vector<AnalysisRow>& rows);

/// Consecutive-hour differences of orbit_diameter. Positive means the orbit
/// expanded relative to the previous hour.
std::vector<ExpansionDelta> expansion_report(const std::vector<AnalysisRow>& rows);

/// Whether a diameter change counts as "practically unaltered" relative to
/// the previous hour's diameter. Default threshold: 5% relative change.
bool is_flat_delta(double delta_diameter, double previous_diameter,
                   double flatness_threshold = 0.05);

const char* terminal_name(TerminalStatus status);

/// CSV: "hour,p_pu,q_pu,attractor,num_orbits,status,diameter,path_length,multiplier".
std::string write_analysis_csv(const std::vector<AnalysisRow>& rows);

/// JSON array of row objects with the same field names as the CSV columns.
std::string write_analysis_json(const std::vector<AnalysisRow>& rows);

/// Published attractor magnitude and orbit count for one demo hour, used as
/// the reference the deviation report compares against.
struct ReferenceResult {
  double attractor = 0.0;
  int orbit_count = 0;
};

/// Reference attractor/orbit-count table for the embedded demo dataset.
const std::array<ReferenceResult, 24>& demo_reference_results();

/// One row of the demo deviation report: computed vs reference attractor and
/// count, plus recomputed vs published per-unit columns. A per-unit entry is
/// discrepant when the published value is explainable by neither rounding nor
/// truncation to three decimals.
struct DeviationRow {
  int hour = 0;
  double attractor = 0.0;
  double attractor_ref = 0.0;
  double attractor_dev = 0.0;
  int num_orbits = 0;
  int num_orbits_ref = 0;
  int num_orbits_dev = 0;
  double p_pu = 0.0;
  double p_pu_printed = 0.0;
  double p_pu_dev = 0.0;
  bool p_pu_discrepant = false;
  double q_pu = 0.0;
  double q_pu_printed = 0.0;
  double q_pu_dev = 0.0;
  bool q_pu_discrepant = false;
};

/// Build the deviation report for a demo-run analysis (requires all 24 hours).
std::vector<DeviationRow> deviation_report(const std::vector<AnalysisRow>& rows);

std::string write_deviation_csv(const std::vector<DeviationRow>& rows);

}  // namespace loadorbit
