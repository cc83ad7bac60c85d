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

#include "doctest.h"
#include "kwmap/error.hpp"
#include "kwmap/text.hpp"
#include "support.hpp"

using namespace kwmap;

namespace {
using Pairs = std::vector<std::pair<std::string, std::string>>;

std::vector<std::string> normalized(const std::vector<TermCandidate>& cands) {
  std::vector<std::string> out;
  for (const auto& c : cands) out.push_back(c.normalized);
  return out;
}

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("segment: empty input") { CHECK(segment("").empty()); }

TEST_CASE("segment splits sentences and lowercases") {
  const auto s = segment("Impact factor. It works.");
  REQUIRE(s.size() == 2);
  CHECK(s[0] == Sentence{"impact", "factor"});
  CHECK(s[1] == Sentence{"it", "works"});
}

TEST_CASE("segment does not split after guarded abbreviations") {
  const auto s = segment("see Moed et al. 2010 for details");
  REQUIRE(s.size() == 1);
  CHECK(s[0].size() == 7);
  CHECK(segment("Counts, e.g. citations, vary. Next one.").size() == 2);
  CHECK(segment("Indexes, i.e. lists; then more").size() == 2);
  CHECK(segment("As E. Smith wrote. Done").size() == 2);
}

TEST_CASE("segment keeps hyphens, inner apostrophes and decimals") {
  const auto s = segment("Co-citation isn't the journal's h-index of 3.5 or 1,500 items!");
  REQUIRE(s.size() == 1);
  CHECK(s[0] == Sentence{"co-citation", "isn't", "the", "journal", "h-index", "of", "3.5", "or", "1,500", "items"});
}

TEST_CASE("segment: ?, ! and ; end sentences only before whitespace") {
  CHECK(segment("Why? Because! Yes; no").size() == 4);
  CHECK(segment("a?b").size() == 1);
  CHECK(segment("  ...  ").empty());
}

TEST_CASE("segment_surface keeps case") {
  const auto s = segment_surface("Impact Factor");
  REQUIRE(s.size() == 1);
  CHECK(s[0] == Sentence{"Impact", "Factor"});
}

TEST_CASE("is_numeric_token") {
  CHECK(is_numeric_token("2010"));
  CHECK(is_numeric_token("1,500"));
  CHECK(is_numeric_token("3.5%"));
  CHECK_FALSE(is_numeric_token("h-index"));
  CHECK_FALSE(is_numeric_token("-"));
  CHECK_FALSE(is_numeric_token("2nd"));
}

TEST_CASE("extract_candidates yields maximal runs and their suffixes") {
  const WordSet stop{"the", "is"};
  const auto c = normalized(extract_candidates({"the", "journal", "impact", "factor", "is", "useful"}, stop));
  CHECK(c == std::vector<std::string>{"journal impact factor", "impact factor", "factor", "useful"});
  const auto full = extract_candidates({"the", "journal", "impact", "factor"}, stop);
  CHECK(full[0].token_count == 3);
  CHECK(full[0].surface == Sentence{"journal", "impact", "factor"});
}

TEST_CASE("extract_candidates: all-stoplist sentence") {
  CHECK(extract_candidates({"the", "is", "the"}, WordSet{"the", "is"}).empty());
  CHECK(extract_candidates({}, WordSet{}).empty());
}

TEST_CASE("extract_candidates: numeric tokens break runs") {
  const auto c = normalized(extract_candidates({"cited", "1,500", "papers"}, WordSet{}));
  CHECK(c == std::vector<std::string>{"cited", "papers"});
}

TEST_CASE("extract_candidates: conservative plural merge") {
  const WordSet vocab{"citation", "paper", "bus"};
  const auto c = normalized(extract_candidates({"citations", "and", "papers", "and", "bus", "buss", "analysis"},
                                               WordSet{"and"}, vocab));
  CHECK(has(c, "citation"));
  CHECK(has(c, "paper"));
  CHECK(has(c, "bus bus analysis"));  // "analysi" is not in the vocabulary
  const auto d = normalized(extract_candidates({"its"}, WordSet{}, WordSet{"it"}));
  CHECK(d == std::vector<std::string>{"its"});  // too short to strip
}

TEST_CASE("extract_candidates: an author name before et al. is not a term") {
  const WordSet stop{"see", "et", "al", "for"};
  const auto c = normalized(extract_candidates(segment_surface("see Moed et al. 2010 for details")[0], stop));
  CHECK(c == std::vector<std::string>{"details"});
}

TEST_CASE("word lists: comments, case and whitespace") {
  const auto w = parse_word_list("# header\nThe\n  Impact   Factor \n\nof # trailing\n");
  CHECK(w == WordSet{"the", "impact factor", "of"});
  CHECK(normalize_phrase("  A\tB  c ") == "a b c");
  CHECK_THROWS_AS(load_word_list("/nonexistent/list.txt"), InputError);
}

TEST_CASE("thesaurus resolves chains and rejects cycles and conflicts") {
  const Thesaurus t({{"citation indexes", "citation index"}, {"citation index", "index of citations"}});
  CHECK(t.resolve("citation indexes") == "index of citations");
  CHECK(t.resolve("citation index") == "index of citations");
  CHECK(t.resolve("other") == "other");
  CHECK_THROWS_AS(Thesaurus({{"a", "b"}, {"b", "a"}}), ConfigError);
  CHECK_THROWS_AS(Thesaurus({{"a", "b"}, {"a", "c"}}), ConfigError);
  CHECK(Thesaurus(Pairs{{"a", "a"}}).empty());
  const auto parsed = parse_thesaurus("# variants\nJIF\tjournal impact factor\n\n");
  CHECK(parsed.resolve("jif") == "journal impact factor");
  CHECK_THROWS_AS(parse_thesaurus("no tab here\n"), InputError);
}

TEST_CASE("TermExtractor counts candidates per unit and applies the thesaurus") {
  TermExtractor ex(WordSet{"the", "of", "and"}, Thesaurus(Pairs{{"factor", "impact factor"}}));
  ex.learn("The impact factor of journals and the journal.");
  std::set<std::string> merged;
  const auto terms = ex.unit_terms("The impact factor of journals and the journal.", &merged);
  CHECK(terms.at("impact factor") == 2);  // once directly, once via the "factor" suffix
  CHECK(terms.at("journal") == 2);        // "journals" merged with "journal"
  CHECK_FALSE(terms.contains("factor"));
  CHECK(merged.contains("factor"));
}
