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

#include <random>

#include "doctest.h"
#include "kwmap/comparison.hpp"
#include "kwmap/error.hpp"
#include "support.hpp"

using namespace kwmap;
using testing::make_network;

namespace {

CoocNetwork terms_only(const std::vector<std::pair<std::string, std::int64_t>>& t) { return make_network(t, {}); }

Clustering one_cluster(std::size_t n) {
  Clustering c;
  c.assignment.assign(n, 1);
  return c;
}

}  // namespace

TEST_CASE("frequency table orders by count, then label") {
  const auto net = terms_only({{"impact", 11}, {"journal impact factor", 6}, {"journal", 17}, {"impact factor", 8}});
  const auto t = frequency_table(net, one_cluster(4), 1, 4);
  const std::vector<std::pair<std::string, std::int64_t>> expected{
      {"journal", 17}, {"impact", 11}, {"impact factor", 8}, {"journal impact factor", 6}};
  CHECK(t.rows == expected);
  CHECK(t.cluster_id == 1);
  CHECK(frequency_table(net, one_cluster(4), 1, 0).rows.empty());
  CHECK(frequency_table(net, one_cluster(4), 1, 2).rows.size() == 2);
}

TEST_CASE("frequency table ties are lexicographic") {
  const auto net = terms_only({{"zeta", 7}, {"alpha", 7}, {"mu", 9}});
  const auto t = frequency_table(net, one_cluster(3), 1, 10);
  CHECK(t.rows[1].first == "alpha");
  CHECK(t.rows[2].first == "zeta");
}

TEST_CASE("frequency table only lists its cluster and checks its inputs") {
  const auto net = terms_only({{"a", 1}, {"b", 2}, {"c", 3}});
  Clustering c;
  c.assignment = {1, 2, 1};
  CHECK(frequency_table(net, c, 2, 5).rows == std::vector<std::pair<std::string, std::int64_t>>{{"b", 2}});
  CHECK_THROWS_AS(frequency_table(net, c, 3, 5), ConfigError);
  CHECK_THROWS_AS(frequency_table(net, one_cluster(2), 1, 5), ConfigError);
  // Permuting the input terms does not change the table.
  const auto perm = terms_only({{"c", 3}, {"a", 1}, {"b", 2}});
  Clustering pc;
  pc.assignment = {1, 1, 2};
  CHECK(frequency_table(perm, pc, 1, 5).rows == frequency_table(net, c, 1, 5).rows);
}

TEST_CASE("Jaccard similarity of term sets") {
  const auto abc = terms_only({{"a", 1}, {"b", 1}, {"c", 1}});
  const auto bcd = terms_only({{"b", 1}, {"c", 1}, {"d", 1}});
  const auto xyz = terms_only({{"x", 1}, {"y", 1}, {"z", 1}});
  CHECK(term_set_similarity(abc, abc) == 1.0);
  CHECK(term_set_similarity(abc, bcd) == 0.5);
  CHECK(term_set_similarity(abc, xyz) == 0.0);
  CHECK(term_set_similarity(abc, CoocNetwork()) == 0.0);
  CHECK_THROWS_AS(term_set_similarity(CoocNetwork(), CoocNetwork()), ConfigError);
}

TEST_CASE("cosine similarity of occurrence profiles") {
  const auto a = terms_only({{"x", 3}, {"y", 4}});
  const auto b = terms_only({{"x", 4}, {"y", 3}});
  CHECK(weighted_profile_similarity(a, b) == doctest::Approx(24.0 / 25.0).epsilon(1e-15));
  CHECK(weighted_profile_similarity(a, a) == 1.0);
  CHECK(weighted_profile_similarity(a, terms_only({{"q", 2}})) == 0.0);
  CHECK_THROWS_AS(weighted_profile_similarity(a, CoocNetwork()), ConfigError);
}

TEST_CASE("both metrics are symmetric and bounded") {
  std::mt19937_64 rng(61);
  const std::vector<std::string> vocab{"a", "b", "c", "d", "e", "f", "g", "h"};
  auto random_net = [&] {
    std::vector<std::pair<std::string, std::int64_t>> t;
    for (const auto& w : vocab)
      if (rng() % 2 == 0) t.emplace_back(w, 1 + static_cast<std::int64_t>(rng() % 20));
    if (t.empty()) t.emplace_back("a", 1);
    return terms_only(t);
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_net(), y = random_net();
    const double j = term_set_similarity(x, y), c = weighted_profile_similarity(x, y);
    CHECK(j == term_set_similarity(y, x));
    CHECK(c == weighted_profile_similarity(y, x));
    CHECK(j >= 0.0);
    CHECK(j <= 1.0);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
  }
}

TEST_CASE("triplet report on identical networks: all ones, ordering does not hold") {
  const auto n = terms_only({{"a", 2}, {"b", 3}});
  const auto r = triplet_report(n, n, n);
  for (const auto& row : r.jaccard)
    for (double v : row) CHECK(v == 1.0);
  for (const auto& row : r.cosine)
    for (double v : row) CHECK(v == 1.0);
  CHECK_FALSE(r.jaccard_ordering_holds);
  CHECK_FALSE(r.cosine_ordering_holds);
}

TEST_CASE("triplet report with disjoint cited and context networks") {
  const auto cited = terms_only({{"a", 2}});
  const auto citing = terms_only({{"a", 1}, {"z", 2}});
  const auto context = terms_only({{"z", 5}});
  const auto r = triplet_report(cited, citing, context);
  CHECK(r.jaccard[0][2] == 0.0);
  CHECK_FALSE(r.jaccard_ordering_holds);
  CHECK_FALSE(r.cosine_ordering_holds);
  CHECK(r.shared_terms[0] == std::vector<std::string>{"a"});
  CHECK(r.shared_terms[1].empty());
  CHECK(r.shared_terms[2] == std::vector<std::string>{"z"});
}

TEST_CASE("triplet report: matrices are symmetric and follow the inputs") {
  const auto cited = terms_only({{"a", 5}, {"b", 3}, {"c", 1}});
  const auto citing = terms_only({{"c", 4}, {"d", 4}});
  const auto context = terms_only({{"a", 4}, {"b", 2}, {"d", 1}});
  const auto r = triplet_report(cited, citing, context);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(r.jaccard[i][j] == r.jaccard[j][i]);
      CHECK(r.cosine[i][j] == r.cosine[j][i]);
    }
  CHECK(r.jaccard[0][2] == term_set_similarity(cited, context));
  CHECK(r.cosine[1][2] == weighted_profile_similarity(citing, context));
  CHECK(r.jaccard_ordering_holds);
  CHECK(r.cosine_ordering_holds);
  // Swapping cited and citing swaps rows and columns 0 and 1.
  const auto s = triplet_report(citing, cited, context);
  CHECK(s.jaccard[0][2] == r.jaccard[1][2]);
  CHECK(s.cosine[1][2] == r.cosine[0][2]);
  CHECK_FALSE(s.jaccard_ordering_holds);
  CHECK_THROWS_AS(triplet_report(cited, CoocNetwork(), context), ConfigError);
}

TEST_CASE("comparison report JSON layout") {
  const auto r = triplet_report(terms_only({{"a", 1}}), terms_only({{"a", 1}, {"b", 1}}), terms_only({{"a", 1}}));
  const auto j = to_json(r);
  CHECK(j.at("jaccard").at("cited/citing") == 0.5);
  CHECK(j.at("cosine").at("context/context") == 1.0);
  CHECK(j.at("ordering_holds").at("jaccard") == true);
  CHECK(j.at("shared_terms").at("citing/context") == nlohmann::json::array({"a"}));
}
