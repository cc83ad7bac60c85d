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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kwmap/cluster.hpp"
#include "kwmap/comparison.hpp"
#include "kwmap/corpus.hpp"
#include "kwmap/layout.hpp"
#include "kwmap/lexicon.hpp"
#include "kwmap/network.hpp"
#include "kwmap/provider.hpp"

namespace kwmap {

/// `all` builds the cited, citing and context networks and compares them.
enum class PipelineMode { all, title_abstract, citation_context };

std::string_view to_string(PipelineMode m);
PipelineMode pipeline_mode_from_string(std::string_view s);  // throws ConfigError

/// Directory holding the bundled stoplist and exclusion list. KWMAP_DATA_DIR
/// overrides the build-time location.
std::filesystem::path default_data_dir();

struct PipelineConfig {
  std::string corpus;                          // JSONL dump; empty -> provider
  std::optional<HttpProviderConfig> provider;
  std::string query;                           // publications query sent to the provider
  std::size_t page_size = 100;
  PipelineMode mode = PipelineMode::all;
  SetTag set = SetTag::cited;                  // document set used by title-abstract mode
  int min_occurrences = 4;
  Counting counting = Counting::binary;
  double relevance_fraction = 0.6;
  double resolution = 1.0;
  std::uint64_t seed = 42;
  int restarts = 10;
  int layout_max_iter = 10000;
  double layout_tol = 1e-8;
  double svg_radius_scale = 1.0;
  std::string stoplist = (default_data_dir() / "stoplist.txt").string();
  std::string exclusions = (default_data_dir() / "exclusions.txt").string();
  std::string thesaurus;                       // empty -> none
  std::string out = "kwmap-out";
  Execution execution = Execution::parallel;   // does not affect output bytes

  bool operator==(const PipelineConfig&) const = default;
};

/// Overlays the keys present in `doc` onto `base`. A run manifest is accepted
/// too (its `config` object is used). Unknown keys are a ConfigError.
PipelineConfig config_from_json(const nlohmann::json& doc, PipelineConfig base = {});
PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base = {});
/// Every tunable parameter; `out` and `execution` are omitted because they
/// do not influence output bytes.
nlohmann::ordered_json config_to_json(const PipelineConfig& config);
/// Throws ConfigError on out-of-range parameters. `require_source` demands a
/// corpus path or provider; commands working on exported networks skip it.
void validate(const PipelineConfig& config, bool require_source = true);

struct WordLists {
  WordSet stoplist;
  WordSet exclusions;
  Thesaurus thesaurus;
};
WordLists load_word_lists(const PipelineConfig& config);

/// Reads the corpus file, or harvests it from the configured provider.
Corpus acquire_corpus(const PipelineConfig& config, const RetryPolicy& retry = {});

/// Units for one network: title+abstract of one document set, or contexts.
std::vector<TextUnit> units_for(const Corpus& corpus, UnitSource source, SetTag set);

struct NetworkBuild {
  Lexicon lexicon;
  CoocNetwork thresholded;        // all lexicon terms
  std::vector<double> relevance;  // per thresholded term
  CoocNetwork selected;           // after relevance cut, exclusions and isolated-term removal
};

/// Lexicon -> co-occurrence network -> relevance cut. Manual exclusions are
/// applied after the cut.
NetworkBuild build_network(const std::vector<TextUnit>& units, const PipelineConfig& config, const WordLists& lists);

struct MapAnalysis {
  SimilarityMatrix similarity;
  Clustering clustering;
  MapLayout layout;
};

MapAnalysis analyse(const CoocNetwork& net, const PipelineConfig& config);

struct NetworkSummary {
  std::string label;
  std::size_t n_units = 0;
  std::size_t n_extracted = 0;
  std::size_t n_thresholded = 0;
  std::size_t n_selected_before_exclusions = 0;
  std::size_t n_selected_after_exclusions = 0;
  std::size_t n_isolated_dropped = 0;
  std::size_t n_terms = 0;
  std::size_t n_edges = 0;
  int n_clusters = 0;
  double quality = 0.0;
  double layout_objective = 0.0;
  bool layout_converged = false;
  int layout_iterations = 0;
};

struct PipelineResult {
  std::vector<std::filesystem::path> artifacts;  // relative to config.out
  std::vector<NetworkSummary> networks;
  std::optional<ComparisonReport> comparison;
  nlohmann::ordered_json manifest;
};

/// ingest -> units -> lexicon -> network -> relevance cut -> cluster -> layout
/// -> exports, plus `manifest.json` with parameters, input digests and output
/// digests. Failures raise StageError; files written by the failed run are
/// removed.
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace kwmap
