#include "loadorbit/demand.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace loadorbit {

namespace {

[[noreturn]] void fail_row(std::size_t row, const std::string& message) {
  throw std::runtime_error("demand csv row " + std::to_string(row) + ": " + message);
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

// "HH:MM:SS" (zero minutes/seconds) or a bare integer 0-23.
int parse_hour(const std::string& field, std::size_t row) {
  int hh = 0, mm = 0, ss = 0;
  char extra = '\0';
  if (std::sscanf(field.c_str(), "%d:%d:%d%c", &hh, &mm, &ss, &extra) == 3) {
    if (mm != 0 || ss != 0) fail_row(row, "minutes and seconds must be zero in '" + field + "'");
  } else {
    std::size_t used = 0;
    try {
      hh = std::stoi(field, &used);
    } catch (const std::exception&) {
      fail_row(row, "malformed hour '" + field + "'");
    }
    if (used != field.size()) fail_row(row, "malformed hour '" + field + "'");
  }
  if (hh < 0 || hh > 23) fail_row(row, "hour out of range 0-23 in '" + field + "'");
  return hh;
}

double parse_real(const std::string& field, std::size_t row, const char* name) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &used);
  } catch (const std::exception&) {
    fail_row(row, std::string("malformed ") + name + " '" + field + "'");
  }
  if (used != field.size()) fail_row(row, std::string("malformed ") + name + " '" + field + "'");
  if (!std::isfinite(value)) fail_row(row, std::string(name) + " must be finite");
  return value;
}

std::string hour_label(int hour) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:00:00", hour);
  return buf;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::vector<DemandSample> parse_demand_csv(std::istream& text) {
  std::string line;
  std::size_t row = 0;
  bool header_seen = false;
  std::vector<DemandSample> samples;
  std::set<int> seen_hours;

  while (std::getline(text, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    auto fields = split_fields(line);
    if (!header_seen) {
      if (fields.size() < 3 || fields[0] != "hour" || fields[1] != "p_mw" ||
          fields[2] != "q_mvar") {
        fail_row(row, "expected header starting with 'hour,p_mw,q_mvar'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() < 3) fail_row(row, "expected at least 3 fields");

    DemandSample sample;
    sample.hour_index = parse_hour(fields[0], row);
    sample.p_mw = parse_real(fields[1], row, "p_mw");
    sample.q_mvar = parse_real(fields[2], row, "q_mvar");
    if (sample.p_mw < 0.0) fail_row(row, "p_mw must be non-negative");
    if (!seen_hours.insert(sample.hour_index).second) {
      fail_row(row, "duplicate hour " + std::to_string(sample.hour_index));
    }
    sample.label = hour_label(sample.hour_index);
    samples.push_back(std::move(sample));
  }

  if (!header_seen) throw std::runtime_error("demand csv: empty input (missing header)");
  if (samples.empty()) throw std::runtime_error("demand csv: no data rows");

  std::sort(samples.begin(), samples.end(),
            [](const DemandSample& a, const DemandSample& b) {
              return a.hour_index < b.hour_index;
            });
  return samples;
}

std::vector<DemandSample> parse_demand_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_demand_csv(in);
}

std::string write_demand_csv(const std::vector<DemandSample>& samples) {
  std::string out = "hour,p_mw,q_mvar\n";
  for (const auto& s : samples) {
    out += s.label + "," + fixed6(s.p_mw) + "," + fixed6(s.q_mvar) + "\n";
  }
  return out;
}

std::string write_per_unit_csv(const std::vector<DemandSample>& samples, double base_mva) {
  std::string out = "hour,p_mw,q_mvar,p_pu,q_pu,power_factor\n";
  for (const auto& s : samples) {
    const PerUnitPoint pu = to_per_unit(s, base_mva);
    out += s.label + "," + fixed6(s.p_mw) + "," + fixed6(s.q_mvar) + "," + fixed6(pu.p_pu) +
           "," + fixed6(pu.q_pu) + "," + fixed6(power_factor(s)) + "\n";
  }
  return out;
}

PerUnitPoint to_per_unit(const DemandSample& sample, double base_mva) {
  if (!(base_mva > 0.0) || !std::isfinite(base_mva)) {
    throw std::invalid_argument("base_mva must be positive and finite");
  }
  PerUnitPoint point;
  point.p_pu = sample.p_mw / base_mva;
  point.q_pu = sample.q_mvar / base_mva;
  point.c = {point.p_pu, point.q_pu};
  point.base_mva = base_mva;
  return point;
}

const std::vector<DemandSample>& embedded_demo_dataset() {
  static const std::vector<DemandSample> dataset = [] {
    constexpr double mw[24][2] = {
        {889, 371},  {834, 405},  {792, 337},  {790, 324},  {804, 323},  {925, 355},
        {1041, 482}, {1105, 556}, {1191, 610}, {1256, 704}, {1309, 744}, {1366, 775},
        {1385, 793}, {1356, 774}, {1337, 759}, {1350, 774}, {1336, 773}, {1312, 749},
        {1287, 687}, {1420, 683}, {1389, 660}, {1311, 605}, {1175, 544}, {1030, 489},
    };
    std::vector<DemandSample> rows;
    rows.reserve(24);
    for (int h = 0; h < 24; ++h) {
      rows.push_back({h, hour_label(h), mw[h][0], mw[h][1]});
    }
    return rows;
  }();
  return dataset;
}

const std::array<PerUnitPoint, 24>& demo_printed_per_unit() {
  static const std::array<PerUnitPoint, 24> table = [] {
    constexpr double pu[24][2] = {
        {0.222, 0.092}, {0.208, 0.101}, {0.197, 0.082}, {0.199, 0.081},
        {0.201, 0.080}, {0.231, 0.088}, {0.260, 0.120}, {0.276, 0.139},
        {0.297, 0.152}, {0.314, 0.176}, {0.327, 0.186}, {0.341, 0.193},
        {0.346, 0.198}, {0.339, 0.193}, {0.334, 0.189}, {0.337, 0.193},
        {0.334, 0.193}, {0.328, 0.187}, {0.321, 0.171}, {0.355, 0.170},
        {0.351, 0.167}, {0.327, 0.151}, {0.293, 0.136}, {0.257, 0.122},
    };
    std::array<PerUnitPoint, 24> rows{};
    for (int h = 0; h < 24; ++h) {
      rows[h] = {pu[h][0], pu[h][1], {pu[h][0], pu[h][1]}, 4000.0};
    }
    return rows;
  }();
  return table;
}

double power_factor(const DemandSample& sample) {
  const double apparent_sq = sample.p_mw * sample.p_mw + sample.q_mvar * sample.q_mvar;
  if (apparent_sq == 0.0) throw std::domain_error("power factor undefined at zero apparent power");
  return sample.p_mw / std::sqrt(apparent_sq);
}

BoundedCheck validate_within_bounded_region(const PerUnitPoint& point,
                                            const OrbitConfig& config) {
  const OrbitTrace trace = orbit_trace(point.c, config);
  if (trace.terminal.kind == TerminalKind::Escaped) {
    return {false, trace.terminal.iteration};
  }
  return {true, 0};
}

}  // namespace loadorbit
