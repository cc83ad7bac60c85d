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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "kwmap/cluster.hpp"
#include "kwmap/layout.hpp"
#include "kwmap/network.hpp"

namespace kwmap {

/// Fixed-point formatting with round-half-even on the exact binary value.
/// Negative zero prints without a sign.
std::string format_fixed(double value, int decimals);

/// Shortest text that reads back to the same double.
std::string format_exact(double value);

struct MapRecord {
  int id = 0;
  std::string label;
  double x = 0.0;
  double y = 0.0;
  int cluster = 0;
  std::int64_t occurrences = 0;

  bool operator==(const MapRecord&) const = default;
};

/// One record per network term, ids 1-based in term order. Throws
/// ConsistencyError when the layout or clustering does not cover the network.
std::vector<MapRecord> make_map_records(const MapLayout& layout, const CoocNetwork& net, const Clustering& clustering);

/// Map TSV: header `id label x y cluster occurrences`, 4 decimals, LF.
void write_map(std::ostream& out, const std::vector<MapRecord>& records);
void export_map(const MapLayout& layout, const CoocNetwork& net, const Clustering& clustering,
                const std::filesystem::path& path);
std::vector<MapRecord> read_map(std::istream& in);
std::vector<MapRecord> import_map(const std::filesystem::path& path);

/// Network TSV `i j c_ij` (1-based, i < j, sorted) and the sidecar term table
/// `index term occurrences`. Neither file has a header.
void write_network(std::ostream& out, const CoocNetwork& net);
void write_terms(std::ostream& out, const CoocNetwork& net);
void export_network(const CoocNetwork& net, const std::filesystem::path& network_path,
                    const std::filesystem::path& terms_path);
CoocNetwork read_network(std::istream& network, std::istream& terms, Counting counting = Counting::binary);
CoocNetwork import_network(const std::filesystem::path& network_path, const std::filesystem::path& terms_path,
                           Counting counting = Counting::binary);

/// Cluster TSV `id cluster` with header.
void write_clusters(std::ostream& out, const Clustering& clustering);
Clustering read_clusters(std::istream& in);

/// Position TSV `id x y` with header, exact round-trip values.
void write_positions(std::ostream& out, const MapLayout& layout);
MapLayout read_positions(std::istream& in);

/// Map/network JSON with `network.items` and `network.links`.
std::string format_graph_json(const MapLayout& layout, const CoocNetwork& net, const Clustering& clustering);
void export_graph_json(const MapLayout& layout, const CoocNetwork& net, const Clustering& clustering,
                       const std::filesystem::path& path);

struct SvgOptions {
  double radius_scale = 1.0;
  int width = 1000;
  int height = 700;
};

/// Palette indexed by cluster id modulo its size.
const std::vector<std::string>& cluster_palette();

/// Node radius (4 + 3 sqrt(occurrences)) * radius_scale.
double node_radius(std::int64_t occurrences, double radius_scale = 1.0);

/// Deterministic SVG map. Edges are drawn for the top quartile of
/// association strengths with width proportional to strength.
std::string format_svg(const MapLayout& layout, const CoocNetwork& net, const Clustering& clustering,
                       const SvgOptions& options = {});
void render_svg(const MapLayout& layout, const CoocNetwork& net, const Clustering& clustering,
                const std::filesystem::path& path, const SvgOptions& options = {});

/// Writes `content` to `path` in binary mode; throws InputError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace kwmap
