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

#include "kwmap/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "kwmap/error.hpp"

namespace kwmap {

std::string format_fixed(double value, int decimals) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  if (res.ec != std::errc()) throw ConfigError("cannot format number");
  std::string s(buf, res.ptr);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string format_exact(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  if (res.ec != std::errc()) throw ConfigError("cannot format number");
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

template <class T>
T parse_number(const std::string& s, const char* what, std::size_t line) {
  T v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw InputError(std::string("line ") + std::to_string(line) + ": bad " + what + " '" + s + "'");
  return v;
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  auto out = open_out(path);
  out << content;
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<MapRecord> make_map_records(const MapLayout& layout, const CoocNetwork& net, const Clustering& clustering) {
  if (layout.positions.size() != net.size()) throw ConsistencyError("map export: a term has no position");
  if (clustering.assignment.size() != net.size()) throw ConsistencyError("map export: a term has no cluster");
  std::vector<MapRecord> records;
  for (std::size_t i = 0; i < net.size(); ++i)
    records.push_back({static_cast<int>(i) + 1, net.term(i).label, layout.positions[i].x, layout.positions[i].y,
                       clustering.assignment[i], net.term(i).occurrences});
  return records;
}

void write_map(std::ostream& out, const std::vector<MapRecord>& records) {
  out << "id\tlabel\tx\ty\tcluster\toccurrences\n";
  for (const auto& r : records)
    out << r.id << '\t' << r.label << '\t' << format_fixed(r.x, 4) << '\t' << format_fixed(r.y, 4) << '\t'
        << r.cluster << '\t' << r.occurrences << '\n';
}

void export_map(const MapLayout& layout, const CoocNetwork& net, const Clustering& clustering,
                const std::filesystem::path& path) {
  auto records = make_map_records(layout, net, clustering);
  std::ostringstream buf;
  write_map(buf, records);
  write_text_file(path, buf.str());
}

std::vector<MapRecord> read_map(std::istream& in) {
  std::string line;
  if (!next_line(in, line) || line != "id\tlabel\tx\ty\tcluster\toccurrences")
    throw InputError("map file: missing or wrong header");
  std::vector<MapRecord> records;
  for (std::size_t no = 2; next_line(in, line); ++no) {
    if (line.empty()) continue;
    auto f = split_tabs(line);
    if (f.size() != 6) throw InputError("map file line " + std::to_string(no) + ": expected 6 columns");
    records.push_back({parse_number<int>(f[0], "id", no), f[1], parse_number<double>(f[2], "x", no),
                       parse_number<double>(f[3], "y", no), parse_number<int>(f[4], "cluster", no),
                       parse_number<std::int64_t>(f[5], "occurrences", no)});
  }
  return records;
}

std::vector<MapRecord> import_map(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_map(in);
}

void write_network(std::ostream& out, const CoocNetwork& net) {
  for (const auto& e : net.edges()) out << e.i + 1 << '\t' << e.j + 1 << '\t' << e.count << '\n';
}

void write_terms(std::ostream& out, const CoocNetwork& net) {
  for (std::size_t i = 0; i < net.size(); ++i)
    out << i + 1 << '\t' << net.term(i).label << '\t' << net.term(i).occurrences << '\n';
}

void export_network(const CoocNetwork& net, const std::filesystem::path& network_path,
                    const std::filesystem::path& terms_path) {
  std::ostringstream edges, terms;
  write_network(edges, net);
  write_terms(terms, net);
  write_text_file(network_path, edges.str());
  write_text_file(terms_path, terms.str());
}

CoocNetwork read_network(std::istream& network, std::istream& terms_in, Counting counting) {
  std::vector<NetworkTerm> terms;
  std::string line;
  for (std::size_t no = 1; next_line(terms_in, line); ++no) {
    if (line.empty()) continue;
    auto f = split_tabs(line);
    if (f.size() != 3) throw InputError("term table line " + std::to_string(no) + ": expected 3 columns");
    if (parse_number<std::size_t>(f[0], "index", no) != terms.size() + 1)
      throw InputError("term table line " + std::to_string(no) + ": indices must be 1..n in order");
    terms.push_back({f[1], parse_number<std::int64_t>(f[2], "occurrences", no), {}});
  }
  std::vector<Edge> edges;
  for (std::size_t no = 1; next_line(network, line); ++no) {
    if (line.empty()) continue;
    auto f = split_tabs(line);
    if (f.size() != 3) throw InputError("network line " + std::to_string(no) + ": expected 3 columns");
    const auto i = parse_number<std::size_t>(f[0], "index", no);
    const auto j = parse_number<std::size_t>(f[1], "index", no);
    if (i < 1 || j < 1 || i >= j || j > terms.size())
      throw InputError("network line " + std::to_string(no) + ": need 1 <= i < j <= n");
    edges.push_back({i - 1, j - 1, parse_number<std::int64_t>(f[2], "count", no)});
  }
  try {
    return CoocNetwork(std::move(terms), std::move(edges), counting, Provenance{"file", {}});
  } catch (const ConsistencyError& e) {
    throw InputError(std::string("network file: ") + e.what());
  }
}

CoocNetwork import_network(const std::filesystem::path& network_path, const std::filesystem::path& terms_path,
                           Counting counting) {
  auto net = open_in(network_path);
  auto terms = open_in(terms_path);
  return read_network(net, terms, counting);
}

void write_clusters(std::ostream& out, const Clustering& clustering) {
  out << "id\tcluster\n";
  for (std::size_t i = 0; i < clustering.assignment.size(); ++i) out << i + 1 << '\t' << clustering.assignment[i] << '\n';
}

Clustering read_clusters(std::istream& in) {
  std::string line;
  if (!next_line(in, line) || line != "id\tcluster") throw InputError("cluster file: missing or wrong header");
  Clustering c;
  for (std::size_t no = 2; next_line(in, line); ++no) {
    if (line.empty()) continue;
    auto f = split_tabs(line);
    if (f.size() != 2 || parse_number<std::size_t>(f[0], "id", no) != c.assignment.size() + 1)
      throw InputError("cluster file line " + std::to_string(no) + ": expected ids 1..n in order");
    c.assignment.push_back(parse_number<int>(f[1], "cluster", no));
  }
  return c;
}

void write_positions(std::ostream& out, const MapLayout& layout) {
  out << "id\tx\ty\n";
  for (std::size_t i = 0; i < layout.positions.size(); ++i)
    out << i + 1 << '\t' << format_exact(layout.positions[i].x) << '\t' << format_exact(layout.positions[i].y) << '\n';
}

MapLayout read_positions(std::istream& in) {
  std::string line;
  if (!next_line(in, line) || line != "id\tx\ty") throw InputError("position file: missing or wrong header");
  MapLayout layout;
  for (std::size_t no = 2; next_line(in, line); ++no) {
    if (line.empty()) continue;
    auto f = split_tabs(line);
    if (f.size() != 3 || parse_number<std::size_t>(f[0], "id", no) != layout.positions.size() + 1)
      throw InputError("position file line " + std::to_string(no) + ": expected ids 1..n in order");
    layout.positions.push_back({parse_number<double>(f[1], "x", no), parse_number<double>(f[2], "y", no)});
  }
  return layout;
}

std::string format_graph_json(const MapLayout& layout, const CoocNetwork& net, const Clustering& clustering) {
  using nlohmann::ordered_json;
  const auto records = make_map_records(layout, net, clustering);
  ordered_json items = ordered_json::array();
  for (const auto& r : records) {
    const auto i = static_cast<std::size_t>(r.id - 1);
    std::size_t links = 0;
    for (const auto& e : net.edges()) links += (e.i == i || e.j == i);
    ordered_json item;
    item["id"] = r.id;
    item["label"] = r.label;
    item["x"] = r.x;
    item["y"] = r.y;
    item["cluster"] = r.cluster;
    item["weights"] = {{"Links", links}, {"Total link strength", net.strength(i)}, {"Occurrences", r.occurrences}};
    items.push_back(std::move(item));
  }
  ordered_json link_list = ordered_json::array();
  for (const auto& e : net.edges())
    link_list.push_back({{"source_id", e.i + 1}, {"target_id", e.j + 1}, {"strength", e.count}});
  ordered_json root;
  root["network"]["items"] = std::move(items);
  root["network"]["links"] = std::move(link_list);
  return root.dump(2) + "\n";
}

void export_graph_json(const MapLayout& layout, const CoocNetwork& net, const Clustering& clustering,
                       const std::filesystem::path& path) {
  write_text_file(path, format_graph_json(layout, net, clustering));
}

const std::vector<std::string>& cluster_palette() {
  static const std::vector<std::string> palette = {
      "#d62728", "#2ca02c", "#1f77b4", "#bcbd22", "#9467bd", "#17becf", "#ff7f0e", "#e377c2", "#8c564b",
      "#7f7f7f", "#aec7e8", "#98df8a", "#ff9896", "#c5b0d5", "#c49c94", "#f7b6d2", "#dbdb8d", "#9edae5",
  };
  return palette;
}

double node_radius(std::int64_t occurrences, double radius_scale) {
  return (4.0 + 3.0 * std::sqrt(static_cast<double>(occurrences))) * radius_scale;
}

std::string format_svg(const MapLayout& layout, const CoocNetwork& net, const Clustering& clustering,
                       const SvgOptions& options) {
  const auto records = make_map_records(layout, net, clustering);
  const double w = options.width, h = options.height, margin = 60.0;

  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    if (k == 0 || records[k].x < min_x) min_x = records[k].x;
    if (k == 0 || records[k].x > max_x) max_x = records[k].x;
    if (k == 0 || records[k].y < min_y) min_y = records[k].y;
    if (k == 0 || records[k].y > max_y) max_y = records[k].y;
  }
  const double span_x = max_x - min_x, span_y = max_y - min_y;
  double scale = 1.0;
  if (span_x > 0 || span_y > 0)
    scale = std::min(span_x > 0 ? (w - 2 * margin) / span_x : 1e300, span_y > 0 ? (h - 2 * margin) / span_y : 1e300);
  const double cx = (min_x + max_x) / 2, cy = (min_y + max_y) / 2;
  auto px = [&](double x) { return w / 2 + (x - cx) * scale; };
  auto py = [&](double y) { return h / 2 - (y - cy) * scale; };
  auto num = [](double v) { return format_fixed(v, 2); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\"" << options.height
      << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  svg << "<g class=\"edges\" stroke=\"#999999\" stroke-opacity=\"0.6\">\n";
  if (!net.edges().empty()) {
    const SimilarityMatrix sim = association_strength(net);
    std::vector<double> values;
    for (const auto& e : sim.edges()) values.push_back(e.s);
    std::sort(values.begin(), values.end(), std::greater<>());
    const std::size_t top = (values.size() + 3) / 4;
    const double threshold = values[top - 1];
    const double max_s = values.front();
    for (const auto& e : sim.edges()) {
      if (e.s < threshold) continue;
      std::size_t a = sim.nodes[e.i], b = sim.nodes[e.j];
      svg << "<line x1=\"" << num(px(records[a].x)) << "\" y1=\"" << num(py(records[a].y)) << "\" x2=\""
          << num(px(records[b].x)) << "\" y2=\"" << num(py(records[b].y)) << "\" stroke-width=\""
          << num(3.0 * e.s / max_s) << "\"/>\n";
    }
  }
  svg << "</g>\n";

  const auto& palette = cluster_palette();
  svg << "<g class=\"nodes\" stroke=\"#ffffff\" stroke-width=\"1\">\n";
  for (const auto& r : records) {
    const auto color = palette[static_cast<std::size_t>(r.cluster) % palette.size()];
    svg << "<circle id=\"n" << r.id << "\" cx=\"" << num(px(r.x)) << "\" cy=\"" << num(py(r.y)) << "\" r=\""
        << num(node_radius(r.occurrences, options.radius_scale)) << "\" fill=\"" << color << "\"/>\n";
  }
  svg << "</g>\n";
  svg << "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" fill=\"#222222\">\n";
  for (const auto& r : records) {
    const double y = py(r.y) + node_radius(r.occurrences, options.radius_scale) + 12.0;
    svg << "<text x=\"" << num(px(r.x)) << "\" y=\"" << num(y) << "\">" << xml_escape(r.label) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void render_svg(const MapLayout& layout, const CoocNetwork& net, const Clustering& clustering,
                const std::filesystem::path& path, const SvgOptions& options) {
  write_text_file(path, format_svg(layout, net, clustering, options));
}

}  // namespace kwmap
