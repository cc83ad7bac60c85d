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

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "kwmap/corpus.hpp"
#include "kwmap/execution.hpp"
#include "kwmap/text.hpp"

namespace kwmap {

enum class UnitSource { title_abstract, citation_context };

struct ContextKey {
  std::string citing_id;
  std::string cited_id;
  int ordinal = 1;

  bool operator==(const ContextKey&) const = default;
};

/// The scope within which co-occurrence is defined: one title+abstract or
/// one citation context.
struct TextUnit {
  std::string unit_id;
  UnitSource source = UnitSource::title_abstract;
  std::string text;
  std::variant<std::string, ContextKey> origin;

  bool operator==(const TextUnit&) const = default;
};

/// One unit per document: title, plus " " + abstract when present.
std::vector<TextUnit> make_units(const DocumentSet& docs);
/// One unit per context; unit id `<citing>><cited>#<ordinal>`.
std::vector<TextUnit> make_units(const std::vector<CitationContext>& contexts);

struct TermStats {
  std::size_t occurrence_count = 0;  // == unit_ids.size()
  std::set<std::string> unit_ids;

  bool operator==(const TermStats&) const = default;
};

struct Lexicon {
  std::map<std::string, TermStats> terms;
  int min_occurrences = 1;
  std::size_t applied_exclusions = 0;
  std::size_t applied_merges = 0;
  std::size_t n_extracted = 0;   // distinct terms before thresholding
  std::size_t n_thresholded = 0; // terms meeting min_occurrences, before exclusions

  /// Extraction settings the counts were produced with; network building
  /// re-reads the units through the same extractor.
  std::shared_ptr<const TermExtractor> extractor;

  bool same_counts(const Lexicon& other) const {
    return terms == other.terms && min_occurrences == other.min_occurrences &&
           applied_exclusions == other.applied_exclusions && applied_merges == other.applied_merges &&
           n_extracted == other.n_extracted && n_thresholded == other.n_thresholded;
  }
};

/// Binary per-unit counting of normalized candidates. The thesaurus is
/// applied before counting, exclusions after thresholding.
Lexicon build_lexicon(const std::vector<TextUnit>& units, int min_occurrences, const WordSet& exclusions,
                      const Thesaurus& thesaurus, const WordSet& stoplist,
                      Execution exec = Execution::parallel);

/// Term -> times for every unit, in unit order, as produced by `extractor`.
std::vector<std::map<std::string, int>> unit_term_counts(const std::vector<TextUnit>& units,
                                                         const TermExtractor& extractor,
                                                         Execution exec = Execution::parallel);

}  // namespace kwmap
