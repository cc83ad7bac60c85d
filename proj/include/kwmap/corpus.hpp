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
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kwmap {

enum class SetTag { cited, citing };

std::string_view to_string(SetTag tag);
SetTag set_tag_from_string(std::string_view s);  // throws InputError

/// One scholarly record.
struct Document {
  std::string id;
  std::optional<std::string> doi;  // normalized: lowercase, no resolver prefix
  std::string title;
  std::optional<std::string> abstract;
  std::optional<int> year;
  SetTag set_tag = SetTag::cited;

  bool operator==(const Document&) const = default;
};

/// One text snippet around one citation of `cited_id` inside `citing_id`.
/// Several snippets per pair are legal and are told apart by `ordinal` (>= 1).
struct CitationContext {
  std::string citing_id;
  std::string cited_id;
  std::string text;
  int ordinal = 1;

  bool operator==(const CitationContext&) const = default;
};

/// Lowercases, trims, strips `doi:` and resolver URL prefixes. Returns nullopt
/// when the result does not start with "10.".
std::optional<std::string> normalize_doi(std::string_view raw);

/// Insertion-ordered collection of documents with unique ids.
class DocumentSet {
 public:
  DocumentSet() = default;
  explicit DocumentSet(std::string label) : label_(std::move(label)) {}

  /// Appends `doc` unless its id is already present. Returns false on a duplicate.
  bool add(Document doc);

  const Document* find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  const std::vector<Document>& documents() const noexcept { return docs_; }
  std::size_t size() const noexcept { return docs_.size(); }
  bool empty() const noexcept { return docs_.empty(); }
  auto begin() const noexcept { return docs_.begin(); }
  auto end() const noexcept { return docs_.end(); }

  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// Documents carrying `tag`, in insertion order.
  DocumentSet subset(SetTag tag) const;

  bool operator==(const DocumentSet& other) const {
    return label_ == other.label_ && docs_ == other.docs_;
  }

 private:
  std::string label_;
  std::vector<Document> docs_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct CorpusWarnings {
  std::size_t duplicate_ids = 0;
  std::size_t dangling_references = 0;  // contexts naming an unknown citing or cited id

  bool operator==(const CorpusWarnings&) const = default;
};

struct Corpus {
  DocumentSet documents;
  std::vector<CitationContext> contexts;
  CorpusWarnings warnings;

  bool operator==(const Corpus&) const = default;
};

/// Reads a JSONL corpus dump. Each non-blank line is a `document` or a
/// `context` record. Throws InputError naming the line on malformed input.
Corpus load_corpus(const std::filesystem::path& path);
Corpus parse_corpus(std::string_view jsonl, std::string_view source_name = "<memory>");

/// Writes documents first, then contexts, one record per line with a fixed key order.
void write_corpus(const std::filesystem::path& path, const DocumentSet& documents,
                  const std::vector<CitationContext>& contexts);
std::string format_corpus(const DocumentSet& documents, const std::vector<CitationContext>& contexts);

struct CorpusStats {
  std::size_t n_cited = 0;
  std::size_t n_citing = 0;
  std::size_t n_contexts = 0;
  std::size_t n_overlap = 0;
  std::map<std::string, std::size_t> contexts_per_cited;  // cited id -> number of contexts

  bool operator==(const CorpusStats&) const = default;
};

/// Two documents are the same paper when they share a DOI or, when either
/// lacks one, share an id. `n_overlap` is the size of a maximum one-to-one
/// matching between the sets under that relation.
CorpusStats dataset_stats(const DocumentSet& cited, const DocumentSet& citing,
                          const std::vector<CitationContext>& contexts);

bool same_paper(const Document& a, const Document& b);

}  // namespace kwmap
