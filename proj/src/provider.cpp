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

#include "kwmap/provider.hpp"

#include <cctype>
#include <set>
#include <thread>
#include <unordered_map>
#include <utility>

#include "kwmap/error.hpp"

namespace kwmap {

namespace {

template <class Fn>
auto with_retry(const RetryPolicy& policy, Fn&& fn) -> decltype(fn()) {
  const int attempts = policy.attempts < 1 ? 1 : policy.attempts;
  auto delay = policy.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return fn();
    } catch (const TransportError& e) {
      if (attempt >= attempts)
        throw TransportError(std::string(e.what()) + " (gave up after " + std::to_string(attempts) + " attempts)");
    }
    if (policy.sleep)
      policy.sleep(delay);
    else
      std::this_thread::sleep_for(delay);
    delay *= 2;
  }
}

bool blank(const std::string& s) {
  for (unsigned char c : s)
    if (!std::isspace(c)) return false;
  return true;
}

}  // namespace

DocumentSet fetch_publications(GraphProvider& provider, const std::string& query, std::size_t page_size,
                               const RetryPolicy& retry) {
  if (page_size < 1) throw ConfigError("page_size must be >= 1");
  DocumentSet out("cited");
  for (std::size_t offset = 0;;) {
    auto page = with_retry(retry, [&] { return provider.publications(query, page_size, offset); });
    for (auto& doc : page) {
      doc.set_tag = SetTag::cited;
      out.add(std::move(doc));
    }
    if (page.size() < page_size) break;
    offset += page.size();
  }
  return out;
}

CitingHarvest fetch_citing_with_contexts(GraphProvider& provider, const std::vector<std::string>& cited_ids,
                                         std::size_t page_size, const RetryPolicy& retry) {
  if (cited_ids.empty()) throw ConfigError("fetch_citing_with_contexts needs at least one cited id");
  if (page_size < 1) throw ConfigError("page_size must be >= 1");

  CitingHarvest harvest;
  harvest.citing.set_label("citing");
  std::map<std::pair<std::string, std::string>, int> ordinals;
  std::set<std::string> done;
  for (const auto& cited : cited_ids) {
    if (!done.insert(cited).second) continue;
    for (std::size_t offset = 0;;) {
      auto page = with_retry(retry, [&] { return provider.citing(cited, page_size, offset); });
      for (auto& rec : page) {
        rec.document.set_tag = SetTag::citing;
        const std::string citing_id = rec.document.id;
        harvest.citing.add(std::move(rec.document));
        for (auto& text : rec.contexts) {
          if (blank(text)) {
            ++harvest.blank_contexts_dropped;
            continue;
          }
          int ordinal = ++ordinals[{citing_id, cited}];
          harvest.contexts.push_back({citing_id, cited, std::move(text), ordinal});
        }
      }
      if (page.size() < page_size) break;
      offset += page.size();
    }
  }
  return harvest;
}

std::size_t enrich_by_doi(GraphProvider& provider, DocumentSet& docs, const RetryPolicy& retry) {
  DocumentSet updated(docs.label());
  std::size_t changed = 0;
  for (Document doc : docs) {
    if (doc.doi && (doc.title.empty() || !doc.abstract || !doc.year)) {
      auto found = with_retry(retry, [&] { return provider.lookup_doi(*doc.doi); });
      if (found) {
        bool touched = false;
        if (doc.title.empty() && !found->title.empty()) doc.title = found->title, touched = true;
        if (!doc.abstract && found->abstract) doc.abstract = found->abstract, touched = true;
        if (!doc.year && found->year) doc.year = found->year, touched = true;
        if (touched) ++changed;
      }
    }
    updated.add(std::move(doc));
  }
  docs = std::move(updated);
  return changed;
}

FileProvider::FileProvider(Corpus corpus) : corpus_(std::move(corpus)) {}

FileProvider FileProvider::from_file(const std::filesystem::path& path) { return FileProvider(load_corpus(path)); }

std::vector<Document> FileProvider::publications(const std::string& query, std::size_t count,
                                                 std::size_t offset) {
  std::vector<Document> matches;
  if (query == "*") {
    matches = corpus_.documents.documents();
  } else if (query.starts_with("set:")) {
    const SetTag tag = set_tag_from_string(query.substr(4));
    for (const auto& d : corpus_.documents)
      if (d.set_tag == tag) matches.push_back(d);
  } else if (query.starts_with("id:")) {
    if (const Document* d = corpus_.documents.find(query.substr(3))) matches.push_back(*d);
  } else {
    throw ConfigError("file provider query must be '*', 'set:<tag>' or 'id:<id>', got '" + query + "'");
  }
  if (offset >= matches.size()) return {};
  const std::size_t end = std::min(matches.size(), offset + count);
  return {matches.begin() + static_cast<std::ptrdiff_t>(offset), matches.begin() + static_cast<std::ptrdiff_t>(end)};
}

std::vector<CitingRecord> FileProvider::citing(const std::string& cited_id, std::size_t count, std::size_t offset) {
  // Citing documents in order of their first context for `cited_id`.
  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<const CitationContext*>> snippets;
  for (const auto& c : corpus_.contexts) {
    if (c.cited_id != cited_id || !corpus_.documents.contains(c.citing_id)) continue;
    auto& list = snippets[c.citing_id];
    if (list.empty()) order.push_back(c.citing_id);
    list.push_back(&c);
  }
  std::vector<CitingRecord> out;
  for (std::size_t k = offset; k < order.size() && out.size() < count; ++k) {
    auto list = snippets[order[k]];
    std::stable_sort(list.begin(), list.end(),
                     [](const CitationContext* a, const CitationContext* b) { return a->ordinal < b->ordinal; });
    CitingRecord rec{*corpus_.documents.find(order[k]), {}};
    for (const auto* c : list) rec.contexts.push_back(c->text);
    out.push_back(std::move(rec));
  }
  return out;
}

std::optional<Document> FileProvider::lookup_doi(const std::string& doi) {
  for (const auto& d : corpus_.documents)
    if (d.doi && *d.doi == doi) return d;
  return std::nullopt;
}

}  // namespace kwmap
