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

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kwmap/corpus.hpp"

namespace kwmap {

/// A document citing some paper, with the snippets around each citation of it.
struct CitingRecord {
  Document document;
  std::vector<std::string> contexts;
};

/// Source of scholarly records. Each call fetches one page; pagination,
/// deduplication and retries live in the free fetch_* functions.
class GraphProvider {
 public:
  virtual ~GraphProvider() = default;

  /// Publications matching a provider-specific query expression.
  virtual std::vector<Document> publications(const std::string& query, std::size_t count,
                                             std::size_t offset) = 0;

  /// Documents citing `cited_id`, each carrying its snippets for that paper.
  virtual std::vector<CitingRecord> citing(const std::string& cited_id, std::size_t count,
                                           std::size_t offset) = 0;

  /// Exact lookup of a record by normalized DOI, for title/abstract enrichment.
  virtual std::optional<Document> lookup_doi(const std::string& doi) = 0;
};

/// Retries only TransportError. Delay before retry k (k >= 1) is
/// initial_backoff * 2^(k-1).
struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
  std::function<void(std::chrono::milliseconds)> sleep;  // empty -> std::this_thread::sleep_for
};

DocumentSet fetch_publications(GraphProvider& provider, const std::string& query, std::size_t page_size,
                               const RetryPolicy& retry = {});

struct CitingHarvest {
  DocumentSet citing;
  std::vector<CitationContext> contexts;
  std::size_t blank_contexts_dropped = 0;
};

CitingHarvest fetch_citing_with_contexts(GraphProvider& provider, const std::vector<std::string>& cited_ids,
                                         std::size_t page_size = 100, const RetryPolicy& retry = {});

/// Fills missing title/abstract/year of documents with a DOI from the
/// provider's DOI lookup. Returns the number of documents changed.
std::size_t enrich_by_doi(GraphProvider& provider, DocumentSet& docs, const RetryPolicy& retry = {});

/// Serves queries from an in-memory corpus. Query syntax: `*` (all
/// documents), `set:cited`, `set:citing`, or `id:<id>`.
class FileProvider : public GraphProvider {
 public:
  explicit FileProvider(Corpus corpus);
  static FileProvider from_file(const std::filesystem::path& path);

  std::vector<Document> publications(const std::string& query, std::size_t count, std::size_t offset) override;
  std::vector<CitingRecord> citing(const std::string& cited_id, std::size_t count, std::size_t offset) override;
  std::optional<Document> lookup_doi(const std::string& doi) override;

 private:
  Corpus corpus_;
};

/// Field mapping and endpoint settings for an HTTP academic-graph service
/// exposing `GET {base}/evaluate?expr=&attributes=&count=&offset=`.
/// Field paths are dot-separated keys into each entity object.
struct HttpProviderConfig {
  std::string base_url;
  std::string endpoint = "evaluate";
  std::string api_key_env;                  // name of the env var holding the key; empty -> no key
  std::string api_key_header = "Ocp-Apim-Subscription-Key";
  std::string param_expr = "expr";
  std::string param_attributes = "attributes";
  std::string param_count = "count";
  std::string param_offset = "offset";
  std::string attributes = "Id,DOI,Ti,AB,Y,CitCon";
  std::string publications_expr = "{query}";
  std::string citing_expr = "RId={id}";
  std::string doi_expr = "DOI='{doi}'";
  std::string entities_path = "entities";
  std::string id_field = "Id";
  std::string doi_field = "DOI";
  std::string title_field = "Ti";
  std::string abstract_field = "AB";
  std::string year_field = "Y";
  std::string contexts_field = "CitCon";    // object: cited id -> [snippet, ...]
  int timeout_seconds = 30;

  bool operator==(const HttpProviderConfig&) const = default;
};

class HttpProvider : public GraphProvider {
 public:
  explicit HttpProvider(HttpProviderConfig config);

  std::vector<Document> publications(const std::string& query, std::size_t count, std::size_t offset) override;
  std::vector<CitingRecord> citing(const std::string& cited_id, std::size_t count, std::size_t offset) override;
  std::optional<Document> lookup_doi(const std::string& doi) override;

  const HttpProviderConfig& config() const noexcept { return config_; }

 private:
  std::string fetch_body(const std::string& expr, std::size_t count, std::size_t offset);

  HttpProviderConfig config_;
  std::string scheme_host_;
  std::string path_prefix_;
};

}  // namespace kwmap
