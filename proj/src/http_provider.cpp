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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"
#include "json.hpp"
#include "kwmap/error.hpp"
#include "kwmap/provider.hpp"

#include <cstdlib>

namespace kwmap {

using nlohmann::json;

namespace {

std::string excerpt(const std::string& body) {
  constexpr std::size_t max_len = 200;
  return body.size() <= max_len ? body : body.substr(0, max_len) + "...";
}

std::string substitute(std::string tmpl, const std::string& key, const std::string& value) {
  const std::string needle = "{" + key + "}";
  for (auto pos = tmpl.find(needle); pos != std::string::npos; pos = tmpl.find(needle, pos + value.size()))
    tmpl.replace(pos, needle.size(), value);
  return tmpl;
}

const json* at_path(const json& root, const std::string& path) {
  const json* cur = &root;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t dot = path.find('.', start);
    if (dot == std::string::npos) dot = path.size();
    const std::string key = path.substr(start, dot - start);
    if (!key.empty()) {
      if (!cur->is_object()) return nullptr;
      auto it = cur->find(key);
      if (it == cur->end()) return nullptr;
      cur = &*it;
    }
    start = dot + 1;
  }
  return cur;
}

std::optional<std::string> scalar_string(const json* v) {
  if (v == nullptr || v->is_null()) return std::nullopt;
  if (v->is_string()) return v->get<std::string>();
  if (v->is_number_integer()) return std::to_string(v->get<long long>());
  if (v->is_number_unsigned()) return std::to_string(v->get<unsigned long long>());
  return std::nullopt;
}

}  // namespace

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
  const std::string& url = config_.base_url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("provider base_url needs a scheme: '" + url + "'");
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_ = url.substr(0, path_start);
  path_prefix_ = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

std::string HttpProvider::fetch_body(const std::string& expr, std::size_t count, std::size_t offset) {
  httplib::Client client(scheme_host_);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);

  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str())) headers.emplace(config_.api_key_header, key);
  }
  httplib::Params params{
      {config_.param_expr, expr},
      {config_.param_attributes, config_.attributes},
      {config_.param_count, std::to_string(count)},
      {config_.param_offset, std::to_string(offset)},
  };
  const std::string path = path_prefix_ + "/" + config_.endpoint;
  auto res = client.Get(path, params, headers);
  if (!res) throw TransportError("GET " + scheme_host_ + path + ": " + httplib::to_string(res.error()));
  if (res->status >= 500 || res->status == 429)
    throw TransportError("GET " + scheme_host_ + path + ": HTTP " + std::to_string(res->status));
  if (res->status < 200 || res->status >= 300)
    throw ProviderError("GET " + scheme_host_ + path + ": HTTP " + std::to_string(res->status) + ": " +
                        excerpt(res->body));
  return res->body;
}

namespace {

struct ParsedEntity {
  Document doc;
  std::map<std::string, std::vector<std::string>> contexts;
};

std::vector<ParsedEntity> parse_entities(const HttpProviderConfig& cfg, const std::string& body) {
  json root;
  try {
    root = json::parse(body);
  } catch (const json::parse_error&) {
    throw ProviderError("response is not JSON: " + excerpt(body));
  }
  const json* entities = at_path(root, cfg.entities_path);
  if (entities == nullptr || !entities->is_array())
    throw ProviderError("response has no '" + cfg.entities_path + "' array: " + excerpt(body));

  std::vector<ParsedEntity> out;
  for (const auto& e : *entities) {
    if (!e.is_object()) throw ProviderError("entity is not an object: " + excerpt(e.dump()));
    ParsedEntity p;
    auto id = scalar_string(at_path(e, cfg.id_field));
    if (!id || id->empty()) throw ProviderError("entity without '" + cfg.id_field + "': " + excerpt(e.dump()));
    p.doc.id = *id;
    if (auto doi = scalar_string(at_path(e, cfg.doi_field))) p.doc.doi = normalize_doi(*doi);
    p.doc.title = scalar_string(at_path(e, cfg.title_field)).value_or("");
    p.doc.abstract = scalar_string(at_path(e, cfg.abstract_field));
    if (const json* y = at_path(e, cfg.year_field); y != nullptr && y->is_number_integer()) p.doc.year = y->get<int>();
    if (const json* cc = at_path(e, cfg.contexts_field); cc != nullptr && cc->is_object()) {
      for (const auto& [cited, snippets] : cc->items()) {
        auto& list = p.contexts[cited];
        if (snippets.is_array()) {
          for (const auto& s : snippets)
            if (s.is_string()) list.push_back(s.get<std::string>());
        } else if (snippets.is_string()) {
          list.push_back(snippets.get<std::string>());
        }
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::vector<Document> HttpProvider::publications(const std::string& query, std::size_t count, std::size_t offset) {
  const std::string expr = substitute(config_.publications_expr, "query", query);
  std::vector<Document> out;
  for (auto& p : parse_entities(config_, fetch_body(expr, count, offset))) out.push_back(std::move(p.doc));
  return out;
}

std::vector<CitingRecord> HttpProvider::citing(const std::string& cited_id, std::size_t count, std::size_t offset) {
  const std::string expr = substitute(config_.citing_expr, "id", cited_id);
  std::vector<CitingRecord> out;
  for (auto& p : parse_entities(config_, fetch_body(expr, count, offset))) {
    CitingRecord rec{std::move(p.doc), {}};
    if (auto it = p.contexts.find(cited_id); it != p.contexts.end()) rec.contexts = std::move(it->second);
    out.push_back(std::move(rec));
  }
  return out;
}

std::optional<Document> HttpProvider::lookup_doi(const std::string& doi) {
  const std::string expr = substitute(config_.doi_expr, "doi", doi);
  auto entities = parse_entities(config_, fetch_body(expr, 1, 0));
  if (entities.empty()) return std::nullopt;
  return std::move(entities.front().doc);
}

}  // namespace kwmap
