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

#include "kwmap/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "kwmap/error.hpp"

namespace kwmap {

namespace {

std::string read_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(std::string("cannot open ") + what + " '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(++line_no, line);
    pos = eol + 1;
  }
}

char ascii_lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
  return out;
}

}  // namespace

std::string normalize_phrase(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += ascii_lower(c);
  }
  return out;
}

WordSet parse_word_list(std::string_view text) {
  WordSet words;
  for_each_line(text, [&](std::size_t, std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::string w = normalize_phrase(line);
    if (!w.empty()) words.insert(std::move(w));
  });
  return words;
}

WordSet load_word_list(const std::filesystem::path& path) { return parse_word_list(read_file(path, "word list")); }

Thesaurus::Thesaurus(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::map<std::string, std::string> direct;
  for (const auto& [variant, canonical] : pairs) {
    std::string v = normalize_phrase(variant);
    std::string c = normalize_phrase(canonical);
    if (v.empty() || c.empty()) throw ConfigError("thesaurus entry with empty term");
    if (v == c) continue;
    auto [it, inserted] = direct.emplace(v, c);
    if (!inserted && it->second != c)
      throw ConfigError("thesaurus maps '" + v + "' to both '" + it->second + "' and '" + c + "'");
  }
  for (const auto& [variant, first] : direct) {
    std::set<std::string> chain{variant};
    std::string cur = first;
    for (auto it = direct.find(cur); it != direct.end(); it = direct.find(cur)) {
      if (!chain.insert(cur).second) throw ConfigError("thesaurus cycle through '" + cur + "'");
      cur = it->second;
    }
    if (chain.contains(cur)) throw ConfigError("thesaurus cycle through '" + cur + "'");
    map_.emplace(variant, cur);
  }
}

const std::string& Thesaurus::resolve(const std::string& term) const {
  auto it = map_.find(term);
  return it == map_.end() ? term : it->second;
}

Thesaurus parse_thesaurus(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (normalize_phrase(line).empty() || line.front() == '#') return;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos)
      throw InputError("thesaurus line " + std::to_string(line_no) + ": expected 'variant<TAB>canonical'");
    pairs.emplace_back(std::string(line.substr(0, tab)), std::string(line.substr(tab + 1)));
  });
  return Thesaurus(pairs);
}

Thesaurus load_thesaurus(const std::filesystem::path& path) { return parse_thesaurus(read_file(path, "thesaurus")); }

namespace {

// Length of a multi-byte UTF-8 punctuation or space sequence at `i`, else 0.
std::size_t utf8_separator(std::string_view t, std::size_t i) {
  auto at = [&](std::size_t k) { return k < t.size() ? static_cast<unsigned char>(t[k]) : 0u; };
  if (at(i) == 0xC2 && (at(i + 1) == 0xA0 || at(i + 1) == 0xAB || at(i + 1) == 0xBB)) return 2;
  if (at(i) == 0xE2 && at(i + 1) == 0x80) {
    const unsigned c = at(i + 2);
    if ((c >= 0x90 && c <= 0x9F) || c == 0xA2 || c == 0xA6 || c == 0xAF) return 3;
  }
  return 0;
}

bool is_apostrophe(std::string_view t, std::size_t i, std::size_t& len) {
  if (t[i] == '\'') return len = 1, true;
  if (t.substr(i, 3) == "\xE2\x80\x99") return len = 3, true;
  return false;
}

bool is_space_at(std::string_view t, std::size_t i) {
  if (i >= t.size()) return true;
  if (std::isspace(static_cast<unsigned char>(t[i]))) return true;
  return t.substr(i, 2) == "\xC2\xA0";
}

bool is_word_at(std::string_view t, std::size_t i) {
  if (i >= t.size()) return false;
  const auto c = static_cast<unsigned char>(t[i]);
  if (std::isalnum(c)) return true;
  return c >= 0x80 && utf8_separator(t, i) == 0;
}

bool is_digit_at(std::string_view t, std::size_t i) {
  return i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]));
}

const WordSet& abbreviation_guard() {
  static const WordSet guard = {"al.",  "e.g.",  "i.e.", "cf.", "vs.", "fig.", "figs.", "eq.",  "eqs.",
                                "ref.", "refs.", "no.",  "vol.", "pp.", "dr.",  "prof.", "approx.", "resp."};
  return guard;
}

std::vector<Sentence> segment_impl(std::string_view text, bool lower) {
  std::vector<Sentence> sentences;
  Sentence current;
  std::string token;
  auto flush_token = [&] {
    if (!token.empty()) current.push_back(lower ? lowercase(token) : token);
    token.clear();
  };
  auto flush_sentence = [&] {
    flush_token();
    if (!current.empty()) sentences.push_back(std::move(current));
    current.clear();
  };

  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    std::size_t apo = 0;
    if (is_word_at(text, i)) {
      token += c;
      ++i;
    } else if (!token.empty() && is_apostrophe(text, i, apo)) {
      const std::size_t next = i + apo;
      if (next < text.size() && (text[next] == 's' || text[next] == 'S') && !is_word_at(text, next + 1)) {
        i = next + 1;  // possessive 's
      } else if (is_word_at(text, next)) {
        token += '\'';
        i = next;
      } else {
        flush_token();
        i = next;
      }
    } else if (c == '-' && !token.empty() && is_word_at(text, i + 1)) {
      token += c;
      ++i;
    } else if (c == '.' && !token.empty() && std::isalnum(static_cast<unsigned char>(i + 1 < text.size() ? text[i + 1] : ' '))) {
      token += c;
      ++i;
    } else if (c == ',' && !token.empty() && is_digit_at(text, i - 1) && is_digit_at(text, i + 1)) {
      token += c;
      ++i;
    } else if ((c == '.' || c == '?' || c == '!' || c == ';') && is_space_at(text, i + 1)) {
      bool guarded = false;
      if (c == '.' && !token.empty()) {
        const std::string word = lowercase(token) + ".";
        guarded = abbreviation_guard().contains(word) ||
                  (token.size() == 1 && std::isalpha(static_cast<unsigned char>(token[0])));
      }
      if (guarded)
        flush_token();
      else
        flush_sentence();
      ++i;
    } else if (std::size_t n = utf8_separator(text, i); n > 0) {
      flush_token();
      i += n;
    } else {
      flush_token();
      ++i;
    }
  }
  flush_sentence();
  return sentences;
}

}  // namespace

std::vector<Sentence> segment(std::string_view text) { return segment_impl(text, true); }

std::vector<Sentence> segment_surface(std::string_view text) { return segment_impl(text, false); }

bool is_numeric_token(std::string_view token) {
  bool digit = false;
  for (char c : token) {
    if (std::isdigit(static_cast<unsigned char>(c)))
      digit = true;
    else if (c != '.' && c != ',' && c != '-' && c != '/' && c != '%' && c != ':')
      return false;
  }
  return digit;
}

namespace {

std::string normalize_token(const std::string& token, const WordSet& vocabulary) {
  std::string t = lowercase(token);
  if (t.size() > 3 && t.back() == 's') {
    std::string singular = t.substr(0, t.size() - 1);
    if (vocabulary.contains(singular)) return singular;
  }
  return t;
}

bool is_capitalized(const std::string& token) {
  return !token.empty() && std::isupper(static_cast<unsigned char>(token[0]));
}

}  // namespace

std::vector<TermCandidate> extract_candidates(const Sentence& sentence, const WordSet& stoplist,
                                              const WordSet& vocabulary) {
  const std::size_t n = sentence.size();
  std::vector<char> breaks(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::string low = lowercase(sentence[k]);
    if (stoplist.contains(low) || is_numeric_token(low)) breaks[k] = 1;
    if (k + 2 < n && is_capitalized(sentence[k]) && lowercase(sentence[k + 1]) == "et" &&
        lowercase(sentence[k + 2]) == "al")
      breaks[k] = 1;
  }

  std::vector<TermCandidate> out;
  for (std::size_t start = 0; start < n;) {
    if (breaks[start]) {
      ++start;
      continue;
    }
    std::size_t end = start;
    while (end < n && !breaks[end]) ++end;
    std::vector<std::string> normalized;
    normalized.reserve(end - start);
    for (std::size_t k = start; k < end; ++k) normalized.push_back(normalize_token(sentence[k], vocabulary));
    for (std::size_t s = start; s < end; ++s) {
      TermCandidate cand;
      cand.surface.assign(sentence.begin() + static_cast<std::ptrdiff_t>(s),
                          sentence.begin() + static_cast<std::ptrdiff_t>(end));
      for (std::size_t k = s; k < end; ++k) {
        if (!cand.normalized.empty()) cand.normalized += ' ';
        cand.normalized += normalized[k - start];
      }
      cand.token_count = end - s;
      out.push_back(std::move(cand));
    }
    start = end;
  }
  return out;
}

std::vector<TermCandidate> extract_candidates(const Sentence& sentence, const WordSet& stoplist) {
  WordSet vocabulary;
  for (const auto& t : sentence) vocabulary.insert(lowercase(t));
  return extract_candidates(sentence, stoplist, vocabulary);
}

TermExtractor::TermExtractor(WordSet stoplist, Thesaurus thesaurus)
    : stoplist_(std::move(stoplist)), thesaurus_(std::move(thesaurus)) {}

void TermExtractor::learn(std::string_view text) {
  for (const auto& sentence : segment(text))
    for (const auto& t : sentence) vocabulary_.insert(t);
}

std::map<std::string, int> TermExtractor::unit_terms(std::string_view text, std::set<std::string>* merged) const {
  std::map<std::string, int> counts;
  for (const auto& sentence : segment_surface(text)) {
    for (auto& cand : extract_candidates(sentence, stoplist_, vocabulary_)) {
      const std::string& term = thesaurus_.resolve(cand.normalized);
      if (merged != nullptr && &term != &cand.normalized) merged->insert(cand.normalized);
      if (stoplist_.contains(term)) continue;
      ++counts[term];
    }
  }
  return counts;
}

}  // namespace kwmap
