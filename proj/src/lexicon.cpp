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

#include "kwmap/lexicon.hpp"

#include <set>

#include "kwmap/error.hpp"

namespace kwmap {

std::vector<TextUnit> make_units(const DocumentSet& docs) {
  std::vector<TextUnit> units;
  units.reserve(docs.size());
  for (const auto& d : docs) {
    TextUnit u;
    u.unit_id = d.id;
    u.source = UnitSource::title_abstract;
    u.text = d.title;
    if (d.abstract) u.text += " " + *d.abstract;
    u.origin = d.id;
    units.push_back(std::move(u));
  }
  return units;
}

std::vector<TextUnit> make_units(const std::vector<CitationContext>& contexts) {
  std::vector<TextUnit> units;
  units.reserve(contexts.size());
  std::set<std::string> ids;
  for (const auto& c : contexts) {
    TextUnit u;
    u.unit_id = c.citing_id + ">" + c.cited_id + "#" + std::to_string(c.ordinal);
    if (!ids.insert(u.unit_id).second) throw InputError("duplicate citation context unit '" + u.unit_id + "'");
    u.source = UnitSource::citation_context;
    u.text = c.text;
    u.origin = ContextKey{c.citing_id, c.cited_id, c.ordinal};
    units.push_back(std::move(u));
  }
  return units;
}

std::vector<std::map<std::string, int>> unit_term_counts(const std::vector<TextUnit>& units,
                                                         const TermExtractor& extractor, Execution exec) {
  std::vector<std::map<std::string, int>> out(units.size());
  const auto n = static_cast<std::ptrdiff_t>(units.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = extractor.unit_terms(units[i].text);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = extractor.unit_terms(units[i].text);
  }
  return out;
}

Lexicon build_lexicon(const std::vector<TextUnit>& units, int min_occurrences, const WordSet& exclusions,
                      const Thesaurus& thesaurus, const WordSet& stoplist, Execution exec) {
  if (min_occurrences < 1) throw ConfigError("min_occurrences must be >= 1");
  {
    std::set<std::string> ids;
    for (const auto& u : units)
      if (!ids.insert(u.unit_id).second) throw InputError("duplicate unit id '" + u.unit_id + "'");
  }

  auto extractor = std::make_shared<TermExtractor>(stoplist, thesaurus);
  for (const auto& u : units) extractor->learn(u.text);

  std::vector<std::set<std::string>> merged_per_unit(units.size());
  std::vector<std::map<std::string, int>> per_unit(units.size());
  const auto n = static_cast<std::ptrdiff_t>(units.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) per_unit[i] = extractor->unit_terms(units[i].text, &merged_per_unit[i]);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) per_unit[i] = extractor->unit_terms(units[i].text, &merged_per_unit[i]);
  }

  Lexicon lex;
  lex.min_occurrences = min_occurrences;
  std::map<std::string, TermStats> all;
  std::set<std::string> merged;
  for (std::size_t i = 0; i < units.size(); ++i) {
    for (const auto& [term, times] : per_unit[i]) all[term].unit_ids.insert(units[i].unit_id);
    merged.insert(merged_per_unit[i].begin(), merged_per_unit[i].end());
  }
  lex.n_extracted = all.size();
  lex.applied_merges = merged.size();
  for (auto& [term, stats] : all) {
    stats.occurrence_count = stats.unit_ids.size();
    if (stats.occurrence_count < static_cast<std::size_t>(min_occurrences)) continue;
    ++lex.n_thresholded;
    if (exclusions.contains(term)) {
      ++lex.applied_exclusions;
      continue;
    }
    lex.terms.emplace(term, std::move(stats));
  }
  lex.extractor = std::move(extractor);
  return lex;
}

}  // namespace kwmap
