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

// Shared fixtures and brute-force oracles. Nothing here calls into the code
// under test except to build inputs.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "kwmap/kernels.hpp"
#include "kwmap/lexicon.hpp"
#include "kwmap/network.hpp"

namespace kwmap::testing {

inline std::filesystem::path source_dir() { return KWMAP_SOURCE_DIR; }
inline std::filesystem::path data_dir() { return source_dir() / "data"; }
inline std::filesystem::path golden_dir() { return source_dir() / "tests" / "golden"; }

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("kwmap-test-" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

using Dense = std::vector<std::vector<double>>;

inline Dense dense(const SimilarityMatrix& sim) {
  Dense d(sim.size(), std::vector<double>(sim.size(), 0.0));
  for (const auto& e : sim.edges()) d[e.i][e.j] = d[e.j][e.i] = e.s;
  return d;
}

inline SimilarityMatrix from_dense(const Dense& d) {
  std::vector<SimilarityEdge> edges;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j)
      if (d[i][j] > 0) edges.push_back({i, j, d[i][j]});
  return SimilarityMatrix(d.size(), std::move(edges));
}

// Q computed straight from the definition, pair by pair.
inline double brute_quality(const Dense& s, const std::vector<int>& labels, double gamma) {
  double q = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (labels[i] == labels[j]) q += s[i][j] - gamma;
  return q;
}

// Visits every set partition of n items as a restricted growth string.
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> a(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int max_label) {
    if (k == n) {
      visit(a);
      return;
    }
    for (int l = 0; l <= max_label + 1; ++l) {
      a[k] = l;
      rec(k + 1, std::max(max_label, l));
    }
  };
  if (n == 0) visit(a);
  else rec(0, -1);
}

inline double exhaustive_optimum(const Dense& s, double gamma) {
  double best = -std::numeric_limits<double>::infinity();
  for_each_partition(s.size(), [&](const std::vector<int>& p) { best = std::max(best, brute_quality(s, p, gamma)); });
  return best;
}

// Weights on a 1/16 grid: every partial sum is exact in binary floating point,
// so optimal qualities compare exactly regardless of summation order.
inline Dense random_dyadic_graph(std::mt19937_64& rng, std::size_t n, double density) {
  Dense d(n, std::vector<double>(n, 0.0));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> w(1, 48);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng) < density) d[i][j] = d[j][i] = w(rng) / 16.0;
  return d;
}

// Network with the given labels/occurrences and (i, j, count) edges.
inline CoocNetwork make_network(const std::vector<std::pair<std::string, std::int64_t>>& terms,
                                const std::vector<Edge>& edges) {
  std::vector<NetworkTerm> t;
  for (const auto& [label, occ] : terms) t.push_back({label, occ, {}});
  return CoocNetwork(std::move(t), edges, Counting::binary, {"test", {}});
}

// Random units over single-word terms joined by a stop word, with the true
// per-unit term multiplicities kept alongside.
struct RandomCorpus {
  std::vector<TextUnit> units;
  std::vector<std::map<std::string, int>> truth;
};

inline const std::vector<std::string>& oracle_words() {
  static const std::vector<std::string> w{"alpha", "bravo", "charlie", "delta", "echo",  "foxtrot", "golf",    "hotel",
                                          "india", "juliet", "kilo",   "lima",  "mike", "november", "oscar"};
  return w;
}

inline RandomCorpus random_corpus(std::mt19937_64& rng, std::size_t max_units = 10, std::size_t max_terms = 15) {
  RandomCorpus c;
  const std::size_t n_units = 1 + rng() % max_units;
  const std::size_t n_terms = 1 + rng() % max_terms;
  for (std::size_t u = 0; u < n_units; ++u) {
    std::map<std::string, int> times;
    std::vector<std::string> tokens;
    for (std::size_t t = 0; t < n_terms; ++t) {
      if (rng() % 2 != 0) continue;
      const int k = 1 + static_cast<int>(rng() % 3);
      times[oracle_words()[t]] = k;
      for (int r = 0; r < k; ++r) tokens.push_back(oracle_words()[t]);
    }
    std::shuffle(tokens.begin(), tokens.end(), rng);
    std::string text;
    for (const auto& tok : tokens) text += (text.empty() ? "" : " and ") + tok;
    c.units.push_back({"u" + std::to_string(u), UnitSource::title_abstract, text, "u" + std::to_string(u)});
    c.truth.push_back(std::move(times));
  }
  return c;
}

// Pair counts by enumerating every unordered term pair in every unit.
inline std::map<std::pair<std::string, std::string>, std::int64_t> brute_pair_counts(const RandomCorpus& c,
                                                                                     Counting counting) {
  std::map<std::pair<std::string, std::string>, std::int64_t> out;
  for (const auto& unit : c.truth)
    for (const auto& [a, ta] : unit)
      for (const auto& [b, tb] : unit)
        if (a < b) out[{a, b}] += counting == Counting::binary ? 1 : std::min(ta, tb);
  return out;
}

inline double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace kwmap::testing
