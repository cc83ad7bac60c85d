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
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace kwmap {

using WordSet = std::unordered_set<std::string>;
using Sentence = std::vector<std::string>;

/// Reads a word list: one entry per line, `#` starts a comment, entries are
/// lowercased and inner whitespace is collapsed (multi-word entries allowed).
WordSet load_word_list(const std::filesystem::path& path);
WordSet parse_word_list(std::string_view text);

/// Lowercase ASCII, collapse whitespace runs to one space, trim.
std::string normalize_phrase(std::string_view s);

/// Variant -> canonical term mapping, resolved transitively. Construction
/// throws ConfigError on a cycle; self-mappings are ignored.
class Thesaurus {
 public:
  Thesaurus() = default;
  explicit Thesaurus(const std::vector<std::pair<std::string, std::string>>& pairs);

  /// Canonical form of `term`, or `term` itself when unmapped.
  const std::string& resolve(const std::string& term) const;
  bool maps(const std::string& term) const { return map_.contains(term); }
  std::size_t size() const noexcept { return map_.size(); }
  bool empty() const noexcept { return map_.empty(); }
  const std::map<std::string, std::string>& entries() const noexcept { return map_; }

 private:
  std::map<std::string, std::string> map_;
};

/// Two-column TSV `variant<TAB>canonical`. Blank lines and `#` lines skipped.
Thesaurus load_thesaurus(const std::filesystem::path& path);
Thesaurus parse_thesaurus(std::string_view text);

/// Sentences of lowercased tokens. Sentences end at `.?!;` followed by
/// whitespace or end of text, except after guarded abbreviations ("et al.",
/// "e.g.", "i.e.", single-letter initials). Hyphens inside tokens are kept.
std::vector<Sentence> segment(std::string_view text);

/// Same as segment() but tokens keep their original case.
std::vector<Sentence> segment_surface(std::string_view text);

struct TermCandidate {
  Sentence surface;
  std::string normalized;
  std::size_t token_count = 0;

  bool operator==(const TermCandidate&) const = default;
};

/// True for tokens made of digits and number punctuation ("2010", "1,500", "3.5%").
bool is_numeric_token(std::string_view token);

/// Maximal runs of non-stoplist, non-numeric tokens and every suffix of each
/// run. A capitalized token directly followed by "et al" is a cited author
/// name and breaks the run. A trailing `s` is stripped from tokens longer than
/// three characters when the singular is in `vocabulary`; without a vocabulary
/// the sentence's own tokens are used.
std::vector<TermCandidate> extract_candidates(const Sentence& sentence, const WordSet& stoplist);
std::vector<TermCandidate> extract_candidates(const Sentence& sentence, const WordSet& stoplist,
                                              const WordSet& vocabulary);

/// Stateful front end used by lexicon and network building: a stoplist, a
/// thesaurus and the corpus vocabulary that drives plural merging.
class TermExtractor {
 public:
  TermExtractor(WordSet stoplist, Thesaurus thesaurus);

  /// Adds the lowercased tokens of `text` to the plural-merge vocabulary.
  void learn(std::string_view text);

  /// Term -> number of times it was produced as a candidate in `text`, after
  /// thesaurus mapping. Terms equal to a stoplist word are dropped. Variants
  /// that were rewritten are added to `merged` when given.
  std::map<std::string, int> unit_terms(std::string_view text, std::set<std::string>* merged = nullptr) const;

  const WordSet& stoplist() const noexcept { return stoplist_; }
  const Thesaurus& thesaurus() const noexcept { return thesaurus_; }
  const WordSet& vocabulary() const noexcept { return vocabulary_; }

 private:
  WordSet stoplist_;
  Thesaurus thesaurus_;
  WordSet vocabulary_;
};

}  // namespace kwmap
