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

#include "kwmap/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kwmap/digest.hpp"
#include "kwmap/error.hpp"
#include "kwmap/export.hpp"

namespace kwmap {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(PipelineMode m) {
  switch (m) {
    case PipelineMode::all: return "all";
    case PipelineMode::title_abstract: return "title-abstract";
    case PipelineMode::citation_context: return "citation-context";
  }
  return "all";
}

PipelineMode pipeline_mode_from_string(std::string_view s) {
  if (s == "all") return PipelineMode::all;
  if (s == "title-abstract") return PipelineMode::title_abstract;
  if (s == "citation-context") return PipelineMode::citation_context;
  throw ConfigError("mode must be all, title-abstract or citation-context, got '" + std::string(s) + "'");
}

fs::path default_data_dir() {
  if (const char* env = std::getenv("KWMAP_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return KWMAP_DEFAULT_DATA_DIR;
}

namespace {

void provider_from_json(const json& j, HttpProviderConfig& p) {
  for (const auto& [key, value] : j.items()) {
    if (key == "base_url") p.base_url = value.get<std::string>();
    else if (key == "endpoint") p.endpoint = value.get<std::string>();
    else if (key == "api_key_env") p.api_key_env = value.get<std::string>();
    else if (key == "api_key_header") p.api_key_header = value.get<std::string>();
    else if (key == "attributes") p.attributes = value.get<std::string>();
    else if (key == "publications_expr") p.publications_expr = value.get<std::string>();
    else if (key == "citing_expr") p.citing_expr = value.get<std::string>();
    else if (key == "doi_expr") p.doi_expr = value.get<std::string>();
    else if (key == "timeout_seconds") p.timeout_seconds = value.get<int>();
    else if (key == "params") {
      for (const auto& [k, v] : value.items()) {
        if (k == "expr") p.param_expr = v.get<std::string>();
        else if (k == "attributes") p.param_attributes = v.get<std::string>();
        else if (k == "count") p.param_count = v.get<std::string>();
        else if (k == "offset") p.param_offset = v.get<std::string>();
        else throw ConfigError("unknown provider.params key '" + k + "'");
      }
    } else if (key == "fields") {
      for (const auto& [k, v] : value.items()) {
        if (k == "entities") p.entities_path = v.get<std::string>();
        else if (k == "id") p.id_field = v.get<std::string>();
        else if (k == "doi") p.doi_field = v.get<std::string>();
        else if (k == "title") p.title_field = v.get<std::string>();
        else if (k == "abstract") p.abstract_field = v.get<std::string>();
        else if (k == "year") p.year_field = v.get<std::string>();
        else if (k == "contexts") p.contexts_field = v.get<std::string>();
        else throw ConfigError("unknown provider.fields key '" + k + "'");
      }
    } else {
      throw ConfigError("unknown provider key '" + key + "'");
    }
  }
  if (p.base_url.empty()) throw ConfigError("provider.base_url is required");
}

ordered_json provider_to_json(const HttpProviderConfig& p) {
  ordered_json j;
  j["base_url"] = p.base_url;
  j["endpoint"] = p.endpoint;
  j["api_key_env"] = p.api_key_env;
  j["api_key_header"] = p.api_key_header;
  j["params"] = {{"expr", p.param_expr}, {"attributes", p.param_attributes}, {"count", p.param_count},
                 {"offset", p.param_offset}};
  j["attributes"] = p.attributes;
  j["publications_expr"] = p.publications_expr;
  j["citing_expr"] = p.citing_expr;
  j["doi_expr"] = p.doi_expr;
  j["fields"] = {{"entities", p.entities_path}, {"id", p.id_field},         {"doi", p.doi_field},
                 {"title", p.title_field},      {"abstract", p.abstract_field}, {"year", p.year_field},
                 {"contexts", p.contexts_field}};
  j["timeout_seconds"] = p.timeout_seconds;
  return j;
}

}  // namespace

PipelineConfig config_from_json(const json& doc_in, PipelineConfig c) {
  const json& doc = doc_in.contains("config") && doc_in["config"].is_object() ? doc_in["config"] : doc_in;
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, v] : doc.items()) {
      if (key == "corpus") c.corpus = v.is_null() ? "" : v.get<std::string>();
      else if (key == "provider") {
        if (v.is_null()) c.provider.reset();
        else {
          HttpProviderConfig p;
          provider_from_json(v, p);
          c.provider = p;
        }
      } else if (key == "query") c.query = v.get<std::string>();
      else if (key == "page_size") c.page_size = v.get<std::size_t>();
      else if (key == "mode") c.mode = pipeline_mode_from_string(v.get<std::string>());
      else if (key == "set") {
        const auto s = v.get<std::string>();
        if (s != "cited" && s != "citing") throw ConfigError("set must be cited or citing");
        c.set = s == "cited" ? SetTag::cited : SetTag::citing;
      } else if (key == "min_occurrences") c.min_occurrences = v.get<int>();
      else if (key == "counting") c.counting = counting_from_string(v.get<std::string>());
      else if (key == "relevance_fraction") c.relevance_fraction = v.get<double>();
      else if (key == "resolution") c.resolution = v.get<double>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "restarts") c.restarts = v.get<int>();
      else if (key == "layout_max_iter") c.layout_max_iter = v.get<int>();
      else if (key == "layout_tol") c.layout_tol = v.get<double>();
      else if (key == "svg_radius_scale") c.svg_radius_scale = v.get<double>();
      else if (key == "stoplist") c.stoplist = v.get<std::string>();
      else if (key == "exclusions") c.exclusions = v.is_null() ? "" : v.get<std::string>();
      else if (key == "thesaurus") c.thesaurus = v.is_null() ? "" : v.get<std::string>();
      else if (key == "out") c.out = v.get<std::string>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

PipelineConfig load_config(const fs::path& path, PipelineConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }
  return config_from_json(doc, std::move(base));
}

ordered_json config_to_json(const PipelineConfig& c) {
  ordered_json j;
  j["corpus"] = c.corpus.empty() ? ordered_json(nullptr) : ordered_json(c.corpus);
  j["provider"] = c.provider ? provider_to_json(*c.provider) : ordered_json(nullptr);
  j["query"] = c.query;
  j["page_size"] = c.page_size;
  j["mode"] = std::string(to_string(c.mode));
  j["set"] = std::string(to_string(c.set));
  j["min_occurrences"] = c.min_occurrences;
  j["counting"] = std::string(to_string(c.counting));
  j["relevance_fraction"] = c.relevance_fraction;
  j["resolution"] = c.resolution;
  j["seed"] = c.seed;
  j["restarts"] = c.restarts;
  j["layout_max_iter"] = c.layout_max_iter;
  j["layout_tol"] = c.layout_tol;
  j["svg_radius_scale"] = c.svg_radius_scale;
  j["stoplist"] = c.stoplist;
  j["exclusions"] = c.exclusions.empty() ? ordered_json(nullptr) : ordered_json(c.exclusions);
  j["thesaurus"] = c.thesaurus.empty() ? ordered_json(nullptr) : ordered_json(c.thesaurus);
  return j;
}

void validate(const PipelineConfig& c, bool require_source) {
  if (require_source && c.corpus.empty() && !c.provider) throw ConfigError("either a corpus path or a provider is required");
  if (c.provider && c.corpus.empty() && c.query.empty()) throw ConfigError("provider harvest needs a query");
  if (c.page_size < 1) throw ConfigError("page_size must be >= 1");
  if (c.min_occurrences < 1) throw ConfigError("min_occurrences must be >= 1");
  if (!(c.relevance_fraction > 0.0 && c.relevance_fraction <= 1.0))
    throw ConfigError("relevance_fraction must be in (0, 1]");
  if (!(c.resolution > 0.0)) throw ConfigError("resolution must be > 0");
  if (c.restarts < 1) throw ConfigError("restarts must be >= 1");
  if (c.layout_max_iter < 1) throw ConfigError("layout_max_iter must be >= 1");
  if (!(c.layout_tol > 0.0)) throw ConfigError("layout_tol must be > 0");
  if (!(c.svg_radius_scale > 0.0)) throw ConfigError("svg_radius_scale must be > 0");
  if (c.stoplist.empty()) throw ConfigError("stoplist path is required");
}

WordLists load_word_lists(const PipelineConfig& c) {
  WordLists lists;
  lists.stoplist = load_word_list(c.stoplist);
  if (!c.exclusions.empty()) lists.exclusions = load_word_list(c.exclusions);
  if (!c.thesaurus.empty()) lists.thesaurus = load_thesaurus(c.thesaurus);
  return lists;
}

Corpus acquire_corpus(const PipelineConfig& c, const RetryPolicy& retry) {
  if (!c.corpus.empty()) return load_corpus(c.corpus);
  if (!c.provider) throw ConfigError("either a corpus path or a provider is required");
  HttpProvider provider(*c.provider);
  Corpus corpus;
  DocumentSet cited = fetch_publications(provider, c.query, c.page_size, retry);
  enrich_by_doi(provider, cited, retry);
  std::vector<std::string> ids;
  for (const auto& d : cited) ids.push_back(d.id);
  CitingHarvest harvest;
  if (!ids.empty()) harvest = fetch_citing_with_contexts(provider, ids, c.page_size, retry);
  enrich_by_doi(provider, harvest.citing, retry);
  for (const auto& d : cited) corpus.documents.add(d);
  for (const auto& d : harvest.citing)
    if (!corpus.documents.add(d)) ++corpus.warnings.duplicate_ids;
  corpus.contexts = std::move(harvest.contexts);
  return corpus;
}

std::vector<TextUnit> units_for(const Corpus& corpus, UnitSource source, SetTag set) {
  if (source == UnitSource::citation_context) return make_units(corpus.contexts);
  return make_units(corpus.documents.subset(set));
}

namespace {

template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

}  // namespace

NetworkBuild build_network(const std::vector<TextUnit>& units, const PipelineConfig& c, const WordLists& lists) {
  NetworkBuild b;
  b.lexicon = stage("lexicon", [&] {
    auto lex = build_lexicon(units, c.min_occurrences, {}, lists.thesaurus, lists.stoplist, c.execution);
    if (lex.terms.empty()) throw InputError("empty lexicon");
    return lex;
  });
  b.thresholded = stage("network", [&] {
    auto net = count_cooccurrences(units, b.lexicon, c.counting, c.execution);
    if (net.edges().empty()) throw InputError("no co-occurrences among lexicon terms");
    return net;
  });
  b.relevance = stage("selection", [&] { return relevance_scores(b.thresholded); });
  b.selected = stage("selection", [&] {
    auto net = drop_isolated(select_top_terms(b.thresholded, b.relevance, c.relevance_fraction, lists.exclusions));
    if (net.edges().empty()) throw InputError("no co-occurring terms left after selection");
    return net;
  });
  return b;
}

MapAnalysis analyse(const CoocNetwork& net, const PipelineConfig& c) {
  MapAnalysis a;
  a.similarity = stage("cluster", [&] { return association_strength(net); });
  a.clustering = stage("cluster", [&] { return cluster(a.similarity, c.resolution, c.seed, c.restarts, c.execution); });
  a.layout = stage("layout", [&] { return layout(a.similarity, c.seed, c.layout_max_iter, c.layout_tol, c.execution); });
  return a;
}

namespace {

// Files and directories created by one run, removed again if it fails.
class OutputTracker {
 public:
  explicit OutputTracker(fs::path root) : root_(std::move(root)) {}

  void make_dir(const fs::path& rel) {
    fs::path p = root_ / rel;
    std::vector<fs::path> fresh;
    for (fs::path cur = p; !cur.empty() && !fs::exists(cur); cur = cur.parent_path()) fresh.push_back(cur);
    fs::create_directories(p);
    dirs_.insert(dirs_.end(), fresh.rbegin(), fresh.rend());
  }

  void write(const fs::path& rel, const std::string& content) {
    write_text_file(root_ / rel, content);
    files_.push_back(rel);
  }

  const std::vector<fs::path>& files() const { return files_; }
  const fs::path& root() const { return root_; }

  void rollback() noexcept {
    std::error_code ec;
    for (const auto& f : files_) fs::remove(root_ / f, ec);
    for (auto it = dirs_.rbegin(); it != dirs_.rend(); ++it) fs::remove(*it, ec);
  }

 private:
  fs::path root_;
  std::vector<fs::path> files_;
  std::vector<fs::path> dirs_;
};

std::string lexicon_table(const Lexicon& lex) {
  std::vector<std::pair<std::string, std::size_t>> rows;
  for (const auto& [t, s] : lex.terms) rows.emplace_back(t, s.occurrence_count);
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.second != b.second ? a.second > b.second : a.first < b.first; });
  std::ostringstream out;
  for (const auto& [t, n] : rows) out << t << '\t' << n << '\n';
  return out.str();
}

std::string frequency_tables(const CoocNetwork& net, const Clustering& clustering) {
  std::ostringstream out;
  out << "cluster\tterm\toccurrences\n";
  for (int c = 1; c <= clustering.n_clusters(); ++c)
    for (const auto& [term, n] : frequency_table(net, clustering, c, 10).rows) out << c << '\t' << term << '\t' << n << '\n';
  return out.str();
}

std::size_t param_count(const CoocNetwork& net, const char* key) {
  auto it = net.provenance().params.find(key);
  return it == net.provenance().params.end() ? 0 : std::stoul(it->second);
}

ordered_json summary_json(const NetworkSummary& s) {
  ordered_json j;
  j["n_units"] = s.n_units;
  j["n_extracted"] = s.n_extracted;
  j["n_thresholded"] = s.n_thresholded;
  j["n_selected_before_exclusions"] = s.n_selected_before_exclusions;
  j["n_selected_after_exclusions"] = s.n_selected_after_exclusions;
  j["n_isolated_dropped"] = s.n_isolated_dropped;
  j["n_terms"] = s.n_terms;
  j["n_edges"] = s.n_edges;
  j["n_clusters"] = s.n_clusters;
  j["quality"] = s.quality;
  j["layout_objective"] = s.layout_objective;
  j["layout_converged"] = s.layout_converged;
  j["layout_iterations"] = s.layout_iterations;
  return j;
}

ordered_json input_entry(const std::string& path) {
  if (path.empty()) return nullptr;
  return {{"path", path}, {"sha256", sha256_file(path)}};
}

struct Job {
  std::string label;
  UnitSource source;
  SetTag set;
};

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& c) {
  stage("config", [&] { validate(c); });
  const fs::path root = c.out;
  OutputTracker out(root);
  PipelineResult result;
  try {
    const WordLists lists = stage("config", [&] { return load_word_lists(c); });
    const Corpus corpus = stage("ingest", [&] { return acquire_corpus(c); });
    stage("export", [&] { out.make_dir(""); });

    ordered_json inputs;
    if (!c.corpus.empty()) {
      inputs["corpus"] = stage("ingest", [&] { return input_entry(c.corpus); });
    } else {
      const std::string dump = format_corpus(corpus.documents, corpus.contexts);
      stage("ingest", [&] { out.write("corpus.jsonl", dump); });
      inputs["corpus"] = {{"path", "corpus.jsonl"}, {"sha256", sha256_hex(dump)}};
    }
    inputs["stoplist"] = input_entry(c.stoplist);
    inputs["exclusions"] = input_entry(c.exclusions);
    inputs["thesaurus"] = input_entry(c.thesaurus);

    std::vector<Job> jobs;
    if (c.mode == PipelineMode::all)
      jobs = {{"cited", UnitSource::title_abstract, SetTag::cited},
              {"citing", UnitSource::title_abstract, SetTag::citing},
              {"context", UnitSource::citation_context, SetTag::cited}};
    else if (c.mode == PipelineMode::title_abstract)
      jobs = {{std::string(to_string(c.set)), UnitSource::title_abstract, c.set}};
    else
      jobs = {{"context", UnitSource::citation_context, SetTag::cited}};

    std::vector<CoocNetwork> selected;
    ordered_json network_summaries = ordered_json::object();
    for (const auto& job : jobs) {
      const auto units = stage("units", [&] { return units_for(corpus, job.source, job.set); });
      NetworkBuild build = build_network(units, c, lists);
      MapAnalysis analysis = analyse(build.selected, c);

      stage("export", [&] {
        out.make_dir(job.label);
        const fs::path dir = job.label;
        std::ostringstream net_txt, terms_txt, map_txt;
        write_network(net_txt, build.selected);
        write_terms(terms_txt, build.selected);
        write_map(map_txt, make_map_records(analysis.layout, build.selected, analysis.clustering));
        out.write(dir / "lexicon.txt", lexicon_table(build.lexicon));
        out.write(dir / "network.txt", net_txt.str());
        out.write(dir / "terms.txt", terms_txt.str());
        out.write(dir / "map.txt", map_txt.str());
        out.write(dir / "tables.txt", frequency_tables(build.selected, analysis.clustering));
        out.write(dir / "graph.json", format_graph_json(analysis.layout, build.selected, analysis.clustering));
        out.write(dir / "map.svg", format_svg(analysis.layout, build.selected, analysis.clustering,
                                              SvgOptions{c.svg_radius_scale}));
      });

      NetworkSummary s;
      s.label = job.label;
      s.n_units = units.size();
      s.n_extracted = build.lexicon.n_extracted;
      s.n_thresholded = build.lexicon.n_thresholded;
      s.n_selected_before_exclusions = param_count(build.selected, "selected_before_exclusions");
      s.n_selected_after_exclusions = param_count(build.selected, "selected_after_exclusions");
      s.n_isolated_dropped = param_count(build.selected, "isolated_dropped");
      s.n_terms = build.selected.size();
      s.n_edges = build.selected.edges().size();
      s.n_clusters = analysis.clustering.n_clusters();
      s.quality = analysis.clustering.quality;
      s.layout_objective = analysis.layout.objective;
      s.layout_converged = analysis.layout.converged;
      s.layout_iterations = analysis.layout.iterations_used;
      network_summaries[job.label] = summary_json(s);
      result.networks.push_back(s);
      selected.push_back(std::move(build.selected));
    }

    if (c.mode == PipelineMode::all) {
      result.comparison = stage("compare", [&] { return triplet_report(selected[0], selected[1], selected[2]); });
      stage("export", [&] { out.write("comparison.json", to_json(*result.comparison).dump(2) + "\n"); });
    }

    const CorpusStats stats = dataset_stats(corpus.documents.subset(SetTag::cited),
                                            corpus.documents.subset(SetTag::citing), corpus.contexts);
    ordered_json manifest;
    manifest["tool"] = "kwmap";
    manifest["manifest_version"] = 1;
    manifest["config"] = config_to_json(c);
    manifest["inputs"] = inputs;
    manifest["corpus"] = {{"n_cited", stats.n_cited},
                          {"n_citing", stats.n_citing},
                          {"n_contexts", stats.n_contexts},
                          {"n_overlap", stats.n_overlap},
                          {"duplicate_ids", corpus.warnings.duplicate_ids},
                          {"dangling_references", corpus.warnings.dangling_references}};
    manifest["networks"] = network_summaries;
    ordered_json outputs = ordered_json::object();
    for (const auto& rel : out.files())
      outputs[rel.generic_string()] = sha256_file(root / rel);
    manifest["outputs"] = outputs;
    stage("manifest", [&] { out.write("manifest.json", manifest.dump(2) + "\n"); });

    result.artifacts = out.files();
    result.manifest = std::move(manifest);
  } catch (...) {
    out.rollback();
    throw;
  }
  return result;
}

}  // namespace kwmap
