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

// kwmap: keyword co-occurrence maps from titles, abstracts and citation contexts.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "kwmap/comparison.hpp"
#include "kwmap/corpus.hpp"
#include "kwmap/error.hpp"
#include "kwmap/export.hpp"
#include "kwmap/pipeline.hpp"

namespace fs = std::filesystem;
using namespace kwmap;

namespace {

// Flag values; only the ones given on the command line override the config.
struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> corpus;
  std::optional<std::string> mode;
  std::optional<std::string> set;
  std::optional<int> min_occurrences;
  std::optional<std::string> counting;
  std::optional<double> relevance_fraction;
  std::optional<double> resolution;
  std::optional<std::uint64_t> seed;
  std::optional<int> restarts;
  std::optional<std::string> exclusions;
  std::optional<std::string> thesaurus;
  std::optional<std::string> stoplist;
  std::optional<std::string> out;
  bool serial = false;
};

void add_pipeline_flags(CLI::App* cmd, Flags& f, bool with_out = true) {
  cmd->add_option("--config", f.config, "JSON config file (a run manifest also works)");
  cmd->add_option("--corpus", f.corpus, "corpus JSONL dump");
  cmd->add_option("--mode", f.mode, "all | title-abstract | citation-context");
  cmd->add_option("--set", f.set, "document set for title-abstract mode: cited | citing");
  cmd->add_option("--min-occurrences", f.min_occurrences, "minimum number of units per term (default 4)");
  cmd->add_option("--counting", f.counting, "binary | full (default binary)");
  cmd->add_option("--relevance-fraction", f.relevance_fraction, "fraction of most relevant terms kept (default 0.6)");
  cmd->add_option("--resolution", f.resolution, "clustering resolution (default 1.0)");
  cmd->add_option("--seed", f.seed, "random seed (default 42)");
  cmd->add_option("--restarts", f.restarts, "clustering restarts (default 10)");
  cmd->add_option("--exclusions", f.exclusions, "terms removed after the relevance cut");
  cmd->add_option("--thesaurus", f.thesaurus, "TSV of variant -> canonical term");
  cmd->add_option("--stoplist", f.stoplist, "stop word list");
  if (with_out) cmd->add_option("--out", f.out, "output directory");
  cmd->add_flag("--serial", f.serial, "run kernels single-threaded (same output)");
}

PipelineConfig resolve(const Flags& f, bool require_source = true) {
  PipelineConfig c;
  if (f.config) c = load_config(*f.config);
  if (f.corpus) c.corpus = *f.corpus;
  if (f.mode) c.mode = pipeline_mode_from_string(*f.mode);
  if (f.set) {
    if (*f.set != "cited" && *f.set != "citing") throw ConfigError("--set must be cited or citing");
    c.set = *f.set == "cited" ? SetTag::cited : SetTag::citing;
  }
  if (f.min_occurrences) c.min_occurrences = *f.min_occurrences;
  if (f.counting) c.counting = counting_from_string(*f.counting);
  if (f.relevance_fraction) c.relevance_fraction = *f.relevance_fraction;
  if (f.resolution) c.resolution = *f.resolution;
  if (f.seed) c.seed = *f.seed;
  if (f.restarts) c.restarts = *f.restarts;
  if (f.exclusions) c.exclusions = *f.exclusions;
  if (f.thesaurus) c.thesaurus = *f.thesaurus;
  if (f.stoplist) c.stoplist = *f.stoplist;
  if (f.out) c.out = *f.out;
  if (f.serial) c.execution = Execution::serial;
  validate(c, require_source);
  return c;
}

// Single-network commands default to the cited titles and abstracts.
UnitSource single_source(const PipelineConfig& c) {
  return c.mode == PipelineMode::citation_context ? UnitSource::citation_context : UnitSource::title_abstract;
}

struct NetworkDir {
  std::string dir;
  CoocNetwork load() const {
    return import_network(fs::path(dir) / "network.txt", fs::path(dir) / "terms.txt");
  }
};

void ensure_dir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw InputError("cannot create directory '" + p.string() + "': " + ec.message());
}

template <class Reader>
auto read_file(const fs::path& path, Reader reader) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return reader(in);
}

std::string stats_json(const Corpus& corpus) {
  const auto stats = dataset_stats(corpus.documents.subset(SetTag::cited), corpus.documents.subset(SetTag::citing),
                                   corpus.contexts);
  nlohmann::ordered_json j;
  j["n_cited"] = stats.n_cited;
  j["n_citing"] = stats.n_citing;
  j["n_contexts"] = stats.n_contexts;
  j["n_overlap"] = stats.n_overlap;
  j["duplicate_ids"] = corpus.warnings.duplicate_ids;
  j["dangling_references"] = corpus.warnings.dangling_references;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [id, n] : stats.contexts_per_cited) hist[id] = n;
  j["contexts_per_cited"] = hist;
  return j.dump(2) + "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Keyword co-occurrence maps from titles, abstracts and citation contexts"};
  app.require_subcommand(1);

  Flags f;

  auto* ingest = app.add_subcommand("ingest", "load or harvest a corpus, write it as JSONL and print statistics");
  add_pipeline_flags(ingest, f);

  auto* extract = app.add_subcommand("extract", "print the thresholded lexicon of one unit collection");
  add_pipeline_flags(extract, f);

  auto* build = app.add_subcommand("build", "write network.txt and terms.txt for one unit collection");
  add_pipeline_flags(build, f);

  NetworkDir net_dir;
  auto* clus = app.add_subcommand("cluster", "cluster a network directory, writing clusters.txt");
  add_pipeline_flags(clus, f, false);
  clus->add_option("network", net_dir.dir, "directory with network.txt and terms.txt")->required();

  auto* lay = app.add_subcommand("layout", "lay out a network directory, writing positions.txt");
  add_pipeline_flags(lay, f, false);
  lay->add_option("network", net_dir.dir, "directory with network.txt and terms.txt")->required();

  double radius_scale = 1.0;
  auto* exp = app.add_subcommand("export", "write map.txt, graph.json and map.svg for a clustered, laid-out network");
  exp->add_option("network", net_dir.dir, "directory with network, terms, clusters and positions files")->required();
  exp->add_option("--radius-scale", radius_scale, "SVG node radius multiplier");

  std::string cited_dir, citing_dir, context_dir, report_path;
  auto* cmp = app.add_subcommand("compare", "compare cited, citing and context networks");
  cmp->add_option("cited", cited_dir)->required();
  cmp->add_option("citing", citing_dir)->required();
  cmp->add_option("context", context_dir)->required();
  cmp->add_option("--out", report_path, "write the report here instead of stdout");

  auto* pipe = app.add_subcommand("pipeline", "run the full protocol and write all outputs with a manifest");
  add_pipeline_flags(pipe, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::config);
  }

  if (pipe->parsed()) {
    const PipelineConfig c = resolve(f);
    const auto result = run_pipeline(c);
    for (const auto& p : result.artifacts) std::cout << (fs::path(c.out) / p).generic_string() << '\n';
    return 0;
  }

  if (ingest->parsed()) {
    const PipelineConfig c = resolve(f);
    const Corpus corpus = acquire_corpus(c);
    ensure_dir(c.out);
    write_corpus(fs::path(c.out) / "corpus.jsonl", corpus.documents, corpus.contexts);
    std::cout << stats_json(corpus);
    return 0;
  }

  if (extract->parsed() || build->parsed()) {
    const PipelineConfig c = resolve(f);
    const WordLists lists = load_word_lists(c);
    const Corpus corpus = acquire_corpus(c);
    const auto units = units_for(corpus, single_source(c), c.set);
    const NetworkBuild b = build_network(units, c, lists);
    if (extract->parsed()) {
      for (const auto& term : b.thresholded.terms())
        std::cout << term.label << '\t' << term.occurrences << '\n';
      return 0;
    }
    ensure_dir(c.out);
    export_network(b.selected, fs::path(c.out) / "network.txt", fs::path(c.out) / "terms.txt");
    std::cout << b.selected.size() << " terms, " << b.selected.edges().size() << " edges\n";
    return 0;
  }

  if (clus->parsed() || lay->parsed()) {
    const PipelineConfig c = resolve(f, false);
    const CoocNetwork net = net_dir.load();
    const SimilarityMatrix sim = association_strength(net);
    std::ostringstream out;
    if (clus->parsed()) {
      const Clustering cl = cluster(sim, c.resolution, c.seed, c.restarts, c.execution);
      write_clusters(out, cl);
      write_text_file(fs::path(net_dir.dir) / "clusters.txt", out.str());
      std::cout << cl.n_clusters() << " clusters, quality " << format_exact(cl.quality) << '\n';
    } else {
      const MapLayout l = layout(sim, c.seed, c.layout_max_iter, c.layout_tol, c.execution);
      write_positions(out, l);
      write_text_file(fs::path(net_dir.dir) / "positions.txt", out.str());
      std::cout << "objective " << format_exact(l.objective) << (l.converged ? ", converged" : ", not converged")
                << " after " << l.iterations_used << " iterations\n";
    }
    return 0;
  }

  if (exp->parsed()) {
    const fs::path dir = net_dir.dir;
    const CoocNetwork net = net_dir.load();
    const Clustering cl = read_file(dir / "clusters.txt", [](std::istream& in) { return read_clusters(in); });
    const MapLayout l = read_file(dir / "positions.txt", [](std::istream& in) { return read_positions(in); });
    export_map(l, net, cl, dir / "map.txt");
    export_graph_json(l, net, cl, dir / "graph.json");
    render_svg(l, net, cl, dir / "map.svg", SvgOptions{radius_scale});
    return 0;
  }

  if (cmp->parsed()) {
    const auto report = triplet_report(NetworkDir{cited_dir}.load(), NetworkDir{citing_dir}.load(),
                                       NetworkDir{context_dir}.load());
    const std::string text = to_json(report).dump(2) + "\n";
    if (report_path.empty()) std::cout << text;
    else write_text_file(report_path, text);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "kwmap: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "kwmap: " << e.what() << '\n';
    return static_cast<int>(ExitCode::input);
  }
}
