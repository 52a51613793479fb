#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "loadorbit/demand.hpp"

using namespace loadorbit;

TEST_CASE("parse_demand_csv reads labeled and integer hours") {
  auto samples = parse_demand_csv(std::string("hour,p_mw,q_mvar\n00:00:00,889,371\n"));
  REQUIRE(samples.size() == 1);
  CHECK(samples[0].hour_index == 0);
  CHECK(samples[0].label == "00:00:00");
  CHECK(samples[0].p_mw == 889.0);
  CHECK(samples[0].q_mvar == 371.0);

  auto by_index = parse_demand_csv(std::string("hour,p_mw,q_mvar\n0,889,371\n"));
  REQUIRE(by_index.size() == 1);
  CHECK(by_index[0].hour_index == 0);
  CHECK(by_index[0].label == "00:00:00");

  auto crlf = parse_demand_csv(std::string("hour,p_mw,q_mvar\r\n19:00:00,1420,683\r\n"));
  REQUIRE(crlf.size() == 1);
  CHECK(crlf[0].hour_index == 19);
  CHECK(crlf[0].p_mw == 1420.0);

  auto unsorted = parse_demand_csv(
      std::string("hour,p_mw,q_mvar\n2,792,337\n0,889,371\n\n1,834,405\n"));
  REQUIRE(unsorted.size() == 3);
  CHECK(unsorted[0].hour_index == 0);
  CHECK(unsorted[1].hour_index == 1);
  CHECK(unsorted[2].hour_index == 2);
}

TEST_CASE("parse_demand_csv rejects malformed input with the row number") {
  auto message_of = [](const std::string& text) {
    try {
      parse_demand_csv(text);
    } catch (const std::runtime_error& error) {
      return std::string(error.what());
    }
    return std::string("no error");
  };

  CHECK(message_of("") == "demand csv: empty input (missing header)");
  CHECK(message_of("hour,p_mw,q_mvar\n") == "demand csv: no data rows");
  CHECK(message_of("wrong,header\n1,2,3\n").find("header") != std::string::npos);

  CHECK(message_of("hour,p_mw,q_mvar\n25:00:00,1,1\n").find("row 2") != std::string::npos);
  CHECK(message_of("hour,p_mw,q_mvar\n24,1,1\n").find("hour") != std::string::npos);
  CHECK(message_of("hour,p_mw,q_mvar\n01:30:00,1,1\n").find("minutes") != std::string::npos);
  CHECK(message_of("hour,p_mw,q_mvar\nxx,1,1\n").find("row 2") != std::string::npos);
  CHECK(message_of("hour,p_mw,q_mvar\n1,abc,1\n").find("row 2") != std::string::npos);
  CHECK(message_of("hour,p_mw,q_mvar\n1,nan,1\n").find("row 2") != std::string::npos);
  CHECK(message_of("hour,p_mw,q_mvar\n1,-5,1\n").find("row 2") != std::string::npos);
  CHECK(message_of("hour,p_mw,q_mvar\n1,1\n").find("row 2") != std::string::npos);
  CHECK(message_of("hour,p_mw,q_mvar\n1,10,20\n1,11,21\n").find("duplicate") !=
        std::string::npos);
}

TEST_CASE("to_per_unit divides exactly") {
  DemandSample h00{0, "00:00:00", 889.0, 371.0};
  PerUnitPoint pu = to_per_unit(h00, 4000.0);
  CHECK(pu.p_pu == 0.22225);
  CHECK(pu.q_pu == 0.09275);
  CHECK(pu.c.re == 0.22225);
  CHECK(pu.c.im == 0.09275);
  CHECK(pu.base_mva == 4000.0);

  DemandSample h19{19, "19:00:00", 1420.0, 683.0};
  PerUnitPoint peak = to_per_unit(h19, 4000.0);
  CHECK(peak.p_pu == 0.355);
  CHECK(peak.q_pu == 0.17075);

  DemandSample nothing{0, "00:00:00", 0.0, 0.0};
  PerUnitPoint zero = to_per_unit(nothing, 4000.0);
  CHECK(zero.p_pu == 0.0);
  CHECK(zero.q_pu == 0.0);

  CHECK_THROWS_AS(to_per_unit(h00, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(to_per_unit(h00, -1.0), std::invalid_argument);
}

TEST_CASE("per-unit conversion is linear in the base") {
  for (const auto& sample : embedded_demo_dataset()) {
    PerUnitPoint base = to_per_unit(sample, 4000.0);
    for (double k : {2.0, 4.0, 8.0}) {
      PerUnitPoint scaled = to_per_unit(sample, 4000.0 * k);
      CHECK(scaled.c.re == base.c.re / k);
      CHECK(scaled.c.im == base.c.im / k);
    }
    for (double k : {3.0, 7.0}) {
      PerUnitPoint scaled = to_per_unit(sample, 4000.0 * k);
      CHECK(scaled.c.re == doctest::Approx(base.c.re / k).epsilon(1e-14));
      CHECK(scaled.c.im == doctest::Approx(base.c.im / k).epsilon(1e-14));
    }
  }
}

TEST_CASE("embedded demo dataset matches the published day") {
  const auto& demo = embedded_demo_dataset();
  REQUIRE(demo.size() == 24);
  CHECK(demo[0].hour_index == 0);
  CHECK(demo[0].p_mw == 889.0);
  CHECK(demo[0].q_mvar == 371.0);
  CHECK(demo[19].hour_index == 19);
  CHECK(demo[19].p_mw == 1420.0);
  CHECK(demo[19].q_mvar == 683.0);
  CHECK(demo[23].hour_index == 23);
  CHECK(demo[23].p_mw == 1030.0);
  CHECK(demo[23].q_mvar == 489.0);
  CHECK(demo[19].label == "19:00:00");
  for (std::size_t i = 0; i < demo.size(); ++i) {
    CHECK(demo[i].hour_index == static_cast<int>(i));
  }
}

TEST_CASE("demand CSV round-trips through serialize and parse") {
  const auto& demo = embedded_demo_dataset();
  auto reparsed = parse_demand_csv(write_demand_csv(demo));
  REQUIRE(reparsed.size() == demo.size());
  for (std::size_t i = 0; i < demo.size(); ++i) {
    CHECK(reparsed[i].hour_index == demo[i].hour_index);
    CHECK(reparsed[i].label == demo[i].label);
    CHECK(reparsed[i].p_mw == demo[i].p_mw);
    CHECK(reparsed[i].q_mvar == demo[i].q_mvar);
  }
}

TEST_CASE("per-unit echo CSV carries six decimal places") {
  std::string csv = write_per_unit_csv(embedded_demo_dataset(), 4000.0);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "hour,p_mw,q_mvar,p_pu,q_pu,power_factor");
  std::getline(lines, line);
  CHECK(line == "00:00:00,889.000000,371.000000,0.222250,0.092750,0.922862");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 23);
}

TEST_CASE("power_factor behaves across load shapes") {
  CHECK(power_factor({0, "", 889.0, 371.0}) == 0.9228617898676937);
  CHECK(power_factor({0, "", 5.0, 0.0}) == 1.0);
  CHECK(power_factor({0, "", 0.0, 371.0}) == 0.0);
  CHECK_THROWS_AS(power_factor({0, "", 0.0, 0.0}), std::domain_error);
}

TEST_CASE("printed per-unit table exposes the published columns") {
  const auto& printed = demo_printed_per_unit();
  CHECK(printed[0].p_pu == 0.222);
  CHECK(printed[0].q_pu == 0.092);
  CHECK(printed[0].c.re == 0.222);
  CHECK(printed[19].p_pu == 0.355);
  CHECK(printed[19].q_pu == 0.170);
  CHECK(printed[23].p_pu == 0.257);
}

TEST_CASE("recomputed per-unit values track the printed columns") {
  const auto& demo = embedded_demo_dataset();
  const auto& printed = demo_printed_per_unit();
  int within = 0;
  for (std::size_t i = 0; i < demo.size(); ++i) {
    PerUnitPoint exact = to_per_unit(demo[i], 4000.0);
    double dev = std::max(std::fabs(exact.p_pu - printed[i].p_pu),
                          std::fabs(exact.q_pu - printed[i].q_pu));
    if (dev <= 0.002 + 1e-12) ++within;
  }
  CHECK(within >= 21);
  CHECK(within == 22);
}

TEST_CASE("bounded-region validation flags escaping points") {
  OrbitConfig config;
  PerUnitPoint h12 = to_per_unit(embedded_demo_dataset()[12], 4000.0);
  CHECK(validate_within_bounded_region(h12, config).bounded);

  PerUnitPoint zero;
  zero.c = {0.0, 0.0};
  CHECK(validate_within_bounded_region(zero, config).bounded);

  PerUnitPoint outside;
  outside.c = {1.0, 0.0};
  BoundedCheck check = validate_within_bounded_region(outside, config);
  CHECK_FALSE(check.bounded);
  CHECK(check.escape_iteration == 2);

  for (const auto& sample : embedded_demo_dataset()) {
    CHECK(validate_within_bounded_region(to_per_unit(sample, 4000.0), config).bounded);
  }
}
