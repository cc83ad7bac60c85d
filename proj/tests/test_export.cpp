// Copyright 2026 The kwmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "kwmap/error.hpp"
#include "kwmap/export.hpp"
#include "support.hpp"

using namespace kwmap;
using testing::make_network;

namespace {

MapLayout at(std::vector<Point> p) {
  MapLayout l;
  l.positions = std::move(p);
  return l;
}

Clustering clusters(std::vector<int> a) {
  Clustering c;
  c.assignment = std::move(a);
  return c;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

CoocNetwork fixture_network() {
  return make_network({{"citation index", 9}, {"impact factor", 8}, {"journal", 17}, {"peer review", 4}, {"h-index", 1}},
                      {{0, 1, 3}, {0, 2, 5}, {1, 2, 6}, {2, 3, 2}, {3, 4, 1}});
}

// Compares against tests/golden/<name>; KWMAP_UPDATE_GOLDEN=1 rewrites it.
void check_golden(const std::string& name, const std::string& actual) {
  const auto path = testing::golden_dir() / name;
  if (std::getenv("KWMAP_UPDATE_GOLDEN") != nullptr) write_text_file(path, actual);
  CHECK_MESSAGE(read_text_file(path) == actual, "golden mismatch: " << name);
}

}  // namespace

TEST_CASE("fixed formatting rounds half to even on the binary value and drops negative zero") {
  CHECK(format_fixed(0.03125, 4) == "0.0312");
  CHECK(format_fixed(0.09375, 4) == "0.0938");
  CHECK(format_fixed(1.0, 4) == "1.0000");
  CHECK(format_fixed(-0.00001, 4) == "0.0000");
  CHECK(format_fixed(-0.0, 4) == "0.0000");
  CHECK(format_fixed(-1.23456, 4) == "-1.2346");
  CHECK(std::stod(format_exact(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("map export of a single term") {
  const auto net = make_network({{"journal", 3}}, {});
  std::ostringstream out;
  write_map(out, make_map_records(at({{0.0, -0.0}}), net, clusters({1})));
  CHECK(out.str() == "id\tlabel\tx\ty\tcluster\toccurrences\n1\tjournal\t0.0000\t0.0000\t1\t3\n");
}

TEST_CASE("map export of two terms at distance one") {
  const auto net = make_network({{"a", 1}, {"b", 2}}, {{0, 1, 1}});
  std::ostringstream out;
  write_map(out, make_map_records(at({{-0.5, 0.0}, {0.5, 0.0}}), net, clusters({1, 1})));
  CHECK(out.str() == "id\tlabel\tx\ty\tcluster\toccurrences\n1\ta\t-0.5000\t0.0000\t1\t1\n2\tb\t0.5000\t0.0000\t1\t2\n");
}

TEST_CASE("map export requires positions and clusters for every term") {
  const auto net = fixture_network();
  CHECK_THROWS_AS(make_map_records(at({{0, 0}}), net, clusters({1, 1, 1, 1, 1})), ConsistencyError);
  CHECK_THROWS_AS(make_map_records(at(std::vector<Point>(5)), net, clusters({1})), ConsistencyError);
}

TEST_CASE("map files round-trip") {
  const auto net = fixture_network();
  const auto l = at({{0.123456, -0.5}, {0.25, 0.75}, {-1.0, 0.0}, {0.33333, 0.1}, {2.0, -2.0}});
  const auto records = make_map_records(l, net, clusters({1, 1, 2, 2, 3}));
  const auto dir = testing::scratch_dir("map-rt");
  export_map(l, net, clusters({1, 1, 2, 2, 3}), dir / "map.txt");
  const auto back = import_map(dir / "map.txt");
  REQUIRE(back.size() == records.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    auto expected = records[k];
    expected.x = std::stod(format_fixed(expected.x, 4));
    expected.y = std::stod(format_fixed(expected.y, 4));
    CHECK(back[k] == expected);
  }
  std::ostringstream again;
  write_map(again, back);
  CHECK(again.str() == read_text_file(dir / "map.txt"));
  std::istringstream bad("id\tlabel\n");
  CHECK_THROWS_AS(read_map(bad), InputError);
}

TEST_CASE("network export: triangle, empty, round-trip and golden") {
  const auto tri = make_network({{"a", 1}, {"b", 1}, {"c", 1}}, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
  std::ostringstream t;
  write_network(t, tri);
  CHECK(t.str() == "1\t2\t1\n1\t3\t1\n2\t3\t1\n");

  std::ostringstream empty;
  write_network(empty, make_network({{"a", 1}}, {}));
  CHECK(empty.str().empty());

  const auto net = fixture_network();
  const auto dir = testing::scratch_dir("net-rt");
  export_network(net, dir / "network.txt", dir / "terms.txt");
  const auto back = import_network(dir / "network.txt", dir / "terms.txt");
  CHECK(back.terms() == net.terms());
  CHECK(back.edges() == net.edges());
  check_golden("fixture_network.txt", read_text_file(dir / "network.txt"));
  check_golden("fixture_terms.txt", read_text_file(dir / "terms.txt"));

  std::istringstream bad_net("2\t1\t4\n"), terms("1\ta\t1\n2\tb\t1\n");
  CHECK_THROWS_AS(read_network(bad_net, terms), InputError);
}

TEST_CASE("cluster and position files round-trip exactly") {
  Clustering c = clusters({2, 1, 1, 3});
  std::stringstream cs;
  write_clusters(cs, c);
  CHECK(read_clusters(cs).assignment == c.assignment);
  const auto l = at({{0.1 + 0.2, -1e-300}, {1.0 / 3.0, 2.0}, {-0.0, 5e10}, {0.5, 0.25}});
  std::stringstream ps;
  write_positions(ps, l);
  CHECK(read_positions(ps).positions == l.positions);
}

TEST_CASE("graph JSON lists items and links") {
  const auto net = fixture_network();
  const auto l = at({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 2}});
  const auto text = format_graph_json(l, net, clusters({1, 1, 1, 2, 2}));
  const auto j = nlohmann::json::parse(text);
  const auto& items = j.at("network").at("items");
  REQUIRE(items.size() == 5);
  CHECK(items[2].at("label") == "journal");
  CHECK(items[2].at("weights").at("Links") == 3);
  CHECK(items[2].at("weights").at("Total link strength") == 13);
  CHECK(items[2].at("weights").at("Occurrences") == 17);
  CHECK(j.at("network").at("links").size() == 5);
  CHECK(j.at("network").at("links")[1].at("target_id") == 3);
  check_golden("fixture_graph.json", text);
}

TEST_CASE("node radius follows the occurrence formula") {
  CHECK(node_radius(1) == 7.0);
  CHECK(node_radius(9) == 13.0);
  CHECK(node_radius(4, 2.0) == 20.0);
  CHECK(cluster_palette().size() == 18);
}

TEST_CASE("SVG with one node has one circle and one label") {
  const auto net = make_network({{"journal", 1}}, {});
  const auto svg = format_svg(at({{0, 0}}), net, clusters({1}));
  CHECK(count(svg, "<circle") == 1);
  CHECK(count(svg, "<text") == 1);
  CHECK(count(svg, "<line") == 0);
  CHECK(svg.find("width=\"1000\" height=\"700\"") != std::string::npos);
  CHECK(svg.find("r=\"7.00\"") != std::string::npos);
}

TEST_CASE("SVG draws the top quartile of edges and escapes labels") {
  const auto net = make_network({{"a & b", 1}, {"<c>", 9}, {"d", 4}, {"e", 2}, {"f", 3}},
                                {{0, 1, 3}, {0, 2, 5}, {1, 2, 6}, {2, 3, 2}, {3, 4, 1}, {1, 4, 2}, {0, 4, 1},
                                 {0, 3, 1}});
  const auto l = at({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.5, 0.5}});
  const auto svg = format_svg(l, net, clusters({1, 1, 2, 2, 19}));
  CHECK(count(svg, "<line") == 2);                 // ceil(8 / 4)
  CHECK(count(svg, "stroke-width=\"3.00\"") >= 1); // strongest edge
  CHECK(svg.find("a &amp; b") != std::string::npos);
  CHECK(svg.find("&lt;c&gt;") != std::string::npos);
  CHECK(svg.find(std::string("fill=\"") + cluster_palette()[1] + "\"") != std::string::npos);
  CHECK(svg == format_svg(l, net, clusters({1, 1, 2, 2, 19})));
  const auto dir = testing::scratch_dir("svg");
  render_svg(l, net, clusters({1, 1, 2, 2, 19}), dir / "m.svg");
  CHECK(read_text_file(dir / "m.svg") == svg);
  check_golden("fixture_map.svg", format_svg(at({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 2}}), fixture_network(),
                                             clusters({1, 1, 1, 2, 2})));
}
