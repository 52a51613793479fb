#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "loadorbit/analysis.hpp"
#include "loadorbit/render.hpp"

using namespace loadorbit;

namespace {

boost::property_tree::ptree parse_xml(const std::string& text) {
  std::istringstream in(text);
  boost::property_tree::ptree tree;
  boost::property_tree::read_xml(in, tree);
  return tree;
}

std::size_t count_elements(const boost::property_tree::ptree& tree, const std::string& name) {
  std::size_t total = 0;
  for (const auto& child : tree) {
    if (child.first == name) ++total;
    total += count_elements(child.second, name);
  }
  return total;
}

OrbitConfig config_with(int max_iterations) {
  OrbitConfig config;
  config.max_iterations = max_iterations;
  return config;
}

}  // namespace

TEST_CASE("region validation") {
  Region region;
  CHECK_NOTHROW(region.validate());
  CHECK(region.re_min == -2.5);
  CHECK(region.im_max == 1.25);

  CHECK_THROWS_AS((Region{0, 0, 0, 0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((Region{1, -1, 0, 1}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((Region{0, 1, 2, 2}).validate(), std::invalid_argument);
}

TEST_CASE("pixel mapping samples cell centers, top row first") {
  Region region{-2.0, 2.0, -2.0, 2.0};
  ComplexValue top_left = pixel_point(region, 8, 8, 0, 0);
  CHECK(top_left.re == -1.75);
  CHECK(top_left.im == 1.75);
  ComplexValue bottom_right = pixel_point(region, 8, 8, 7, 7);
  CHECK(bottom_right.re == 1.75);
  CHECK(bottom_right.im == -1.75);
}

TEST_CASE("single-pixel grids classify the landmark points") {
  EscapeGrid interior = compute_escape_grid({-1.5, -0.5, -0.5, 0.5}, 1, 1,
                                            config_with(100), GridMode::mandelbrot());
  REQUIRE(interior.counts.size() == 1);
  CHECK(interior.counts[0] == 100);

  EscapeGrid outside = compute_escape_grid({0.5, 1.5, -0.5, 0.5}, 1, 1,
                                           config_with(100), GridMode::mandelbrot());
  CHECK(outside.counts[0] == 3);

  EscapeGrid julia_origin = compute_escape_grid({-0.5, 0.5, -0.5, 0.5}, 1, 1,
                                                config_with(100), GridMode::julia({0.0, 0.0}));
  CHECK(julia_origin.counts[0] == 100);

  // a Julia seed already beyond the escape radius needs zero iterations
  EscapeGrid julia_far = compute_escape_grid({2.5, 3.5, -0.5, 0.5}, 1, 1,
                                             config_with(100), GridMode::julia({0.0, 0.0}));
  CHECK(julia_far.counts[0] == 0);
}

TEST_CASE("grid counts equal the scalar escape oracle per pixel") {
  Region region{-2.5, 1.0, -1.25, 1.25};
  OrbitConfig config = config_with(64);
  EscapeGrid grid = compute_escape_grid(region, 16, 16, config, GridMode::mandelbrot());
  for (int row = 0; row < 16; ++row) {
    for (int col = 0; col < 16; ++col) {
      EscapeOutcome outcome = escape_time(pixel_point(region, 16, 16, col, row), config);
      int expected = outcome.escaped ? outcome.iteration : config.max_iterations;
      CHECK(grid.at(col, row) == expected);
    }
  }
}

TEST_CASE("grid computation is invalid-input safe") {
  CHECK_THROWS_AS(compute_escape_grid({0, 0, 0, 0}, 4, 4, OrbitConfig{}, GridMode::mandelbrot()),
                  std::invalid_argument);
  CHECK_THROWS_AS(compute_escape_grid(Region{}, 0, 4, OrbitConfig{}, GridMode::mandelbrot()),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      compute_escape_grid(Region{}, 4, 4, OrbitConfig{},
                          GridMode::julia({std::numeric_limits<double>::quiet_NaN(), 0.0})),
      std::invalid_argument);
}

TEST_CASE("thread count never changes the counts") {
  Region region{-2.0, 1.0, -1.25, 1.25};
  OrbitConfig config = config_with(256);
  EscapeGrid one = compute_escape_grid(region, 64, 64, config, GridMode::mandelbrot(), 1);
  for (int threads : {2, 3, 5, 8, 0}) {
    EscapeGrid many = compute_escape_grid(region, 64, 64, config, GridMode::mandelbrot(), threads);
    CHECK(one.counts == many.counts);
  }

  EscapeGrid julia_one = compute_escape_grid(region, 48, 32, config,
                                             GridMode::julia({-1.0, 0.0}), 1);
  EscapeGrid julia_many = compute_escape_grid(region, 48, 32, config,
                                              GridMode::julia({-1.0, 0.0}), 7);
  CHECK(julia_one.counts == julia_many.counts);
}

TEST_CASE("a conjugation-symmetric viewport gives mirror-symmetric counts") {
  EscapeGrid grid = compute_escape_grid({-2.0, 1.0, -1.25, 1.25}, 64, 64,
                                        config_with(256), GridMode::mandelbrot());
  for (int row = 0; row < 64; ++row) {
    for (int col = 0; col < 64; ++col) {
      CHECK(grid.at(col, row) == grid.at(col, 63 - row));
    }
  }
}

TEST_CASE("a 3x refinement of a dyadic viewport revisits the same centers") {
  Region region{-2.0, 2.0, -2.0, 2.0};
  OrbitConfig config = config_with(64);
  EscapeGrid coarse = compute_escape_grid(region, 8, 8, config, GridMode::mandelbrot());
  EscapeGrid fine = compute_escape_grid(region, 24, 24, config, GridMode::mandelbrot());
  for (int row = 0; row < 8; ++row) {
    for (int col = 0; col < 8; ++col) {
      ComplexValue a = pixel_point(region, 8, 8, col, row);
      ComplexValue b = pixel_point(region, 24, 24, 3 * col + 1, 3 * row + 1);
      REQUIRE(a.re == b.re);
      REQUIRE(a.im == b.im);
      CHECK(coarse.at(col, row) == fine.at(3 * col + 1, 3 * row + 1));
    }
  }
}

TEST_CASE("write_ppm emits the exact binary layout") {
  EscapeGrid grid;
  grid.region = {0.0, 1.0, 0.0, 1.0};
  grid.width = 2;
  grid.height = 1;
  grid.max_iterations = 100;
  grid.counts = {100, 3};

  std::string bytes = write_ppm(grid);
  std::string expected = "P6\n2 1\n255\n";
  expected += std::string(3, '\0');
  expected += std::string(3, static_cast<char>(7));
  CHECK(bytes == expected);
  CHECK(write_ppm(grid) == bytes);

  EscapeGrid prisoner = grid;
  prisoner.width = 1;
  prisoner.counts = {100};
  std::string black = write_ppm(prisoner);
  CHECK(black.substr(black.size() - 3) == std::string(3, '\0'));

  std::string banded = write_ppm(grid, Palette::Banded);
  CHECK(banded.substr(0, 11) == "P6\n2 1\n255\n");
  CHECK(banded.substr(11, 3) == std::string(3, '\0'));
  CHECK(static_cast<unsigned char>(banded[14]) == 4);
  CHECK(static_cast<unsigned char>(banded[15]) == 4);
  CHECK(static_cast<unsigned char>(banded[16]) == 73);
}

TEST_CASE("ppm payload length matches the declared dimensions") {
  EscapeGrid grid = compute_escape_grid({-2.0, 1.0, -1.0, 1.0}, 16, 16,
                                        config_with(32), GridMode::mandelbrot());
  std::string bytes = write_ppm(grid);
  std::string header = "P6\n16 16\n255\n";
  REQUIRE(bytes.substr(0, header.size()) == header);
  CHECK(bytes.size() == header.size() + 3u * 16u * 16u);
}

TEST_CASE("orbit diagrams carry one marker per orbit point") {
  OrbitTrace h03 = orbit_trace({0.1975, 0.081}, OrbitConfig{});
  REQUIRE(h03.points.size() == 5);
  std::string svg = orbit_svg({h03});
  auto tree = parse_xml(svg);
  CHECK(count_elements(tree, "circle") == 5);
  CHECK(count_elements(tree, "polyline") == 1);
  CHECK(count_elements(tree, "svg") == 1);

  OrbitTrace h19 = orbit_trace({0.355, 0.17075}, OrbitConfig{});
  OrbitSvgOptions options;
  options.labels = {"03:00:00", "19:00:00"};
  std::string panel = orbit_svg({h03, h19}, options);
  auto panel_tree = parse_xml(panel);
  CHECK(count_elements(panel_tree, "circle") == h03.points.size() + h19.points.size());
  CHECK(count_elements(panel_tree, "polyline") == 2);
  CHECK(panel.find("03:00:00") != std::string::npos);
  CHECK(panel.find("19:00:00") != std::string::npos);

  OrbitTrace lonely;
  lonely.seed = {0.1, 0.1};
  lonely.points = {{0.1, 0.1}};
  OrbitSvgOptions plain;
  plain.set_silhouette = false;
  std::string dot = orbit_svg({lonely}, plain);
  auto dot_tree = parse_xml(dot);
  CHECK(count_elements(dot_tree, "circle") == 1);
  CHECK(count_elements(dot_tree, "polyline") == 0);

  CHECK_THROWS_AS(orbit_svg({}), std::invalid_argument);
  OrbitSvgOptions bad;
  bad.labels = {"a", "b"};
  CHECK_THROWS_AS(orbit_svg({h03}, bad), std::invalid_argument);
}

TEST_CASE("series charts are well-formed and sized to their data") {
  const auto& demo = embedded_demo_dataset();
  std::string demand = demand_curve_svg(demo);
  auto demand_tree = parse_xml(demand);
  CHECK(count_elements(demand_tree, "circle") == 48);
  CHECK(count_elements(demand_tree, "polyline") == 2);
  CHECK(demand.find("P (MW)") != std::string::npos);
  CHECK(demand.find("Q (MVAr)") != std::string::npos);

  DaySeries series = day_series(analyze_day(demo, 4000.0, OrbitConfig{}));
  std::string counts = counts_svg(series);
  auto counts_tree = parse_xml(counts);
  CHECK(count_elements(counts_tree, "circle") == 24);
  std::string attractors = attractors_svg(series);
  auto attractors_tree = parse_xml(attractors);
  CHECK(count_elements(attractors_tree, "circle") == 24);

  DaySeries singleton;
  singleton.hours = {7};
  singleton.orbit_counts = {5};
  singleton.attractors = {0.3};
  auto single_tree = parse_xml(counts_svg(singleton));
  CHECK(count_elements(single_tree, "circle") == 1);
  CHECK(count_elements(single_tree, "polyline") == 0);

  CHECK_THROWS_AS(demand_curve_svg({}), std::invalid_argument);
  CHECK_THROWS_AS(counts_svg(DaySeries{}), std::invalid_argument);
}

TEST_CASE("trajectory chart joins the day's points in order") {
  const auto& demo = embedded_demo_dataset();
  std::vector<PerUnitPoint> points;
  std::vector<int> hours;
  for (const auto& sample : demo) {
    points.push_back(to_per_unit(sample, 4000.0));
    hours.push_back(sample.hour_index);
  }
  std::string svg = trajectory_svg(points, hours);
  auto tree = parse_xml(svg);
  CHECK(count_elements(tree, "circle") == 24);
  CHECK(count_elements(tree, "polyline") == 1);
  CHECK(svg.find(">19<") != std::string::npos);

  std::string bare = trajectory_svg({points[0]}, {0}, false);
  auto bare_tree = parse_xml(bare);
  CHECK(count_elements(bare_tree, "circle") == 1);
  CHECK(count_elements(bare_tree, "rect") == 1);

  CHECK_THROWS_AS(trajectory_svg({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(trajectory_svg(points, {0, 1}), std::invalid_argument);
}

TEST_CASE("complex literals parse and reject junk") {
  ComplexValue basilica = parse_complex_literal("-1+0i");
  CHECK(basilica.re == -1.0);
  CHECK(basilica.im == 0.0);

  ComplexValue spiral = parse_complex_literal("0.285+0.01i");
  CHECK(spiral.re == 0.285);
  CHECK(spiral.im == 0.01);

  ComplexValue negative = parse_complex_literal("-0.7-0.3i");
  CHECK(negative.re == -0.7);
  CHECK(negative.im == -0.3);

  CHECK(parse_complex_literal("2").re == 2.0);
  CHECK(parse_complex_literal("2").im == 0.0);
  CHECK(parse_complex_literal("i").im == 1.0);
  CHECK(parse_complex_literal("-i").im == -1.0);
  CHECK(parse_complex_literal("3j").im == 3.0);
  CHECK(parse_complex_literal("1e-3+2e-4i").re == 0.001);
  CHECK(parse_complex_literal("1e-3+2e-4i").im == 0.0002);

  CHECK_THROWS_AS(parse_complex_literal(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex_literal("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex_literal("1+2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex_literal("1+2x"), std::invalid_argument);
}

TEST_CASE("filename tags are compact and deterministic") {
  CHECK(complex_filename_tag({-1.0, 0.0}) == "-1_0");
  CHECK(complex_filename_tag({0.285, 0.01}) == "0.285_0.01");
  CHECK(complex_filename_tag({0.25, -1.5}) == "0.25_-1.5");
}
