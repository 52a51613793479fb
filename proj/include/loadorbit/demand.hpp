#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "loadorbit/dynamics.hpp"

namespace loadorbit {

/// One hourly record of real power (MW) and reactive power (MVAr).
struct DemandSample {
  int hour_index = 0;  // 0..23
  std::string label;   // "HH:00:00"
  double p_mw = 0.0;
  double q_mvar = 0.0;
};

/// A demand sample converted to per-unit coordinates: c = p_pu + i q_pu with
/// real power on the real axis and reactive power on the imaginary axis.
struct PerUnitPoint {
  double p_pu = 0.0;
  double q_pu = 0.0;
  ComplexValue c;
  double base_mva = 0.0;
};

/// Parse "hour,p_mw,q_mvar" CSV text. Hours are "HH:MM:SS" with zero
/// minutes/seconds or bare integers 0-23; extra columns are ignored so the
/// per-unit echo output reparses. Samples come back sorted by hour.
/// Throws std::runtime_error naming the offending row on malformed input,
/// duplicate hours, negative or non-finite power, or an empty table.
std::vector<DemandSample> parse_demand_csv(std::istream& text);
std::vector<DemandSample> parse_demand_csv(const std::string& text);

/// Serialize samples in the input schema ("hour,p_mw,q_mvar").
std::string write_demand_csv(const std::vector<DemandSample>& samples);

/// Per-unit echo: "hour,p_mw,q_mvar,p_pu,q_pu,power_factor", 6 decimals.
std::string write_per_unit_csv(const std::vector<DemandSample>& samples, double base_mva);

/// Exact per-unit conversion: p_pu = p_mw / base, q_pu = q_mvar / base, no
/// intermediate rounding. Throws std::invalid_argument on a non-positive base.
PerUnitPoint to_per_unit(const DemandSample& sample, double base_mva);

/// The embedded 24-hour demo dataset (MW / MVAr per hour).
const std::vector<DemandSample>& embedded_demo_dataset();

/// Display-rounded per-unit columns published alongside the demo dataset.
/// These are reference values, not recomputed ones; the two disagree beyond
/// display rounding on a few rows. Index = hour.
const std::array<PerUnitPoint, 24>& demo_printed_per_unit();

/// P / sqrt(P^2 + Q^2). Returns 0 for a purely reactive load; throws
/// std::domain_error when apparent power is zero.
double power_factor(const DemandSample& sample);

struct BoundedCheck {
  bool bounded = true;
  int escape_iteration = 0;  // set when bounded == false
};

/// Ingestion-time loadability check: trace the orbit of point.c and report
/// whether it stays bounded or escapes (with the escape iteration).
BoundedCheck validate_within_bounded_region(const PerUnitPoint& point,
                                            const OrbitConfig& config);

}  // namespace loadorbit
