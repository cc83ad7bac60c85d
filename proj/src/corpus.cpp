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

#include "kwmap/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "kwmap/error.hpp"

namespace kwmap {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(SetTag tag) { return tag == SetTag::cited ? "cited" : "citing"; }

SetTag set_tag_from_string(std::string_view s) {
  if (s == "cited") return SetTag::cited;
  if (s == "citing") return SetTag::citing;
  throw InputError("unknown set_tag '" + std::string(s) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::optional<std::string> normalize_doi(std::string_view raw) {
  std::string doi = lower(trim(raw));
  static constexpr std::string_view prefixes[] = {
      "https://doi.org/", "http://doi.org/", "https://dx.doi.org/", "http://dx.doi.org/", "doi.org/", "doi:",
  };
  for (auto p : prefixes) {
    if (doi.starts_with(p)) {
      doi.erase(0, p.size());
      doi = std::string(trim(doi));
      break;
    }
  }
  if (!doi.starts_with("10.") || doi.size() < 4) return std::nullopt;
  return doi;
}

bool DocumentSet::add(Document doc) {
  if (index_.contains(doc.id)) return false;
  index_.emplace(doc.id, docs_.size());
  docs_.push_back(std::move(doc));
  return true;
}

const Document* DocumentSet::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &docs_[it->second];
}

DocumentSet DocumentSet::subset(SetTag tag) const {
  DocumentSet out(std::string(to_string(tag)));
  for (const auto& d : docs_)
    if (d.set_tag == tag) out.add(d);
  return out;
}

namespace {

[[noreturn]] void bad_line(std::string_view source, std::size_t line, const std::string& why) {
  throw InputError(std::string(source) + ":" + std::to_string(line) + ": " + why);
}

std::string required_string(const json& obj, const char* key, std::string_view source, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) bad_line(source, line, std::string("missing or non-string '") + key + "'");
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* key, std::string_view source,
                                           std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) bad_line(source, line, std::string("non-string '") + key + "'");
  return it->get<std::string>();
}

}  // namespace

Corpus parse_corpus(std::string_view jsonl, std::string_view source_name) {
  Corpus corpus;
  std::set<std::tuple<std::string, std::string, int>> seen_contexts;
  std::map<std::pair<std::string, std::string>, int> next_ordinal;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    std::size_t eol = jsonl.find('\n', pos);
    if (eol == std::string_view::npos) eol = jsonl.size();
    std::string_view line = jsonl.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (trim(line).empty()) continue;

    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error& e) {
      bad_line(source_name, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!rec.is_object()) bad_line(source_name, line_no, "record is not an object");
    const std::string kind = required_string(rec, "kind", source_name, line_no);

    if (kind == "document") {
      Document doc;
      doc.id = required_string(rec, "id", source_name, line_no);
      if (trim(doc.id).empty()) bad_line(source_name, line_no, "empty document id");
      if (auto raw = optional_string(rec, "doi", source_name, line_no); raw && !trim(*raw).empty()) {
        doc.doi = normalize_doi(*raw);
        if (!doc.doi) bad_line(source_name, line_no, "invalid doi '" + *raw + "'");
      }
      doc.title = required_string(rec, "title", source_name, line_no);
      doc.abstract = optional_string(rec, "abstract", source_name, line_no);
      if (auto it = rec.find("year"); it != rec.end() && !it->is_null()) {
        if (!it->is_number_integer()) bad_line(source_name, line_no, "non-integer 'year'");
        doc.year = it->get<int>();
      }
      try {
        doc.set_tag = set_tag_from_string(required_string(rec, "set_tag", source_name, line_no));
      } catch (const InputError& e) {
        bad_line(source_name, line_no, e.what());
      }
      if (!corpus.documents.add(std::move(doc))) ++corpus.warnings.duplicate_ids;
    } else if (kind == "context") {
      CitationContext ctx;
      ctx.citing_id = required_string(rec, "citing_id", source_name, line_no);
      ctx.cited_id = required_string(rec, "cited_id", source_name, line_no);
      ctx.text = required_string(rec, "text", source_name, line_no);
      if (trim(ctx.text).empty()) bad_line(source_name, line_no, "blank context text");
      auto key = std::make_pair(ctx.citing_id, ctx.cited_id);
      if (auto it = rec.find("ordinal"); it != rec.end() && !it->is_null()) {
        if (!it->is_number_integer() || it->get<long long>() < 1)
          bad_line(source_name, line_no, "ordinal must be an integer >= 1");
        ctx.ordinal = it->get<int>();
      } else {
        ctx.ordinal = next_ordinal[key] + 1;
      }
      next_ordinal[key] = std::max(next_ordinal[key], ctx.ordinal);
      if (!seen_contexts.emplace(ctx.citing_id, ctx.cited_id, ctx.ordinal).second)
        bad_line(source_name, line_no, "duplicate context (citing_id, cited_id, ordinal)");
      corpus.contexts.push_back(std::move(ctx));
    } else {
      bad_line(source_name, line_no, "unknown kind '" + kind + "'");
    }
  }

  for (const auto& ctx : corpus.contexts)
    if (!corpus.documents.contains(ctx.citing_id) || !corpus.documents.contains(ctx.cited_id))
      ++corpus.warnings.dangling_references;
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open corpus '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str(), path.string());
}

std::string format_corpus(const DocumentSet& documents, const std::vector<CitationContext>& contexts) {
  std::string out;
  for (const auto& d : documents) {
    ordered_json rec;
    rec["kind"] = "document";
    rec["id"] = d.id;
    rec["doi"] = d.doi ? ordered_json(*d.doi) : ordered_json(nullptr);
    rec["title"] = d.title;
    rec["abstract"] = d.abstract ? ordered_json(*d.abstract) : ordered_json(nullptr);
    rec["year"] = d.year ? ordered_json(*d.year) : ordered_json(nullptr);
    rec["set_tag"] = std::string(to_string(d.set_tag));
    out += rec.dump();
    out += '\n';
  }
  for (const auto& c : contexts) {
    ordered_json rec;
    rec["kind"] = "context";
    rec["citing_id"] = c.citing_id;
    rec["cited_id"] = c.cited_id;
    rec["text"] = c.text;
    rec["ordinal"] = c.ordinal;
    out += rec.dump();
    out += '\n';
  }
  return out;
}

void write_corpus(const std::filesystem::path& path, const DocumentSet& documents,
                  const std::vector<CitationContext>& contexts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write corpus '" + path.string() + "'");
  out << format_corpus(documents, contexts);
}

bool same_paper(const Document& a, const Document& b) {
  if (a.doi && b.doi) return *a.doi == *b.doi;
  return a.id == b.id;
}

CorpusStats dataset_stats(const DocumentSet& cited, const DocumentSet& citing,
                          const std::vector<CitationContext>& contexts) {
  CorpusStats stats;
  stats.n_cited = cited.size();
  stats.n_citing = citing.size();
  stats.n_contexts = contexts.size();
  for (const auto& c : contexts) ++stats.contexts_per_cited[c.cited_id];

  // Candidate lists for each cited document, then Kuhn's augmenting paths.
  std::unordered_map<std::string, std::vector<std::size_t>> by_doi;
  std::unordered_map<std::string, std::size_t> by_id;
  const auto& right = citing.documents();
  for (std::size_t j = 0; j < right.size(); ++j) {
    if (right[j].doi) by_doi[*right[j].doi].push_back(j);
    by_id.emplace(right[j].id, j);
  }
  std::vector<std::vector<std::size_t>> adj(cited.size());
  for (std::size_t i = 0; i < cited.size(); ++i) {
    const Document& a = cited.documents()[i];
    if (a.doi) {
      if (auto it = by_doi.find(*a.doi); it != by_doi.end()) adj[i] = it->second;
      if (auto it = by_id.find(a.id); it != by_id.end() && !right[it->second].doi) adj[i].push_back(it->second);
    } else if (auto it = by_id.find(a.id); it != by_id.end()) {
      adj[i].push_back(it->second);
    }
  }

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> match_right(right.size(), none);
  std::vector<char> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t j : adj[i]) {
      if (visited[j]) continue;
      visited[j] = 1;
      if (match_right[j] == none || augment(match_right[j])) {
        match_right[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < cited.size(); ++i) {
    if (adj[i].empty()) continue;
    visited.assign(right.size(), 0);
    if (augment(i)) ++stats.n_overlap;
  }
  return stats;
}

}  // namespace kwmap
