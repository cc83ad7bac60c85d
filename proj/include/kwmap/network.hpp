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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kwmap/execution.hpp"
#include "kwmap/lexicon.hpp"

namespace kwmap {

enum class Counting { binary, full };

std::string_view to_string(Counting c);
Counting counting_from_string(std::string_view s);  // throws ConfigError

struct NetworkTerm {
  std::string label;
  std::int64_t occurrences = 0;
  std::vector<std::string> unit_ids;  // sorted; empty for networks read back from files

  bool operator==(const NetworkTerm&) const = default;
};

/// Undirected co-occurrence edge, stored once with i < j.
struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  std::int64_t count = 0;

  bool operator==(const Edge&) const = default;
};

/// Where a network came from; params are kept sorted by key.
struct Provenance {
  std::string source;
  std::map<std::string, std::string> params;

  bool operator==(const Provenance&) const = default;
};

/// Terms as nodes, symmetric integer co-occurrence counts as edges.
class CoocNetwork {
 public:
  CoocNetwork() = default;
  /// Validates and sorts `edges`; throws ConsistencyError on self-edges,
  /// out-of-range indices, duplicate pairs or non-positive counts.
  CoocNetwork(std::vector<NetworkTerm> terms, std::vector<Edge> edges, Counting counting, Provenance provenance);

  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const std::vector<NetworkTerm>& terms() const noexcept { return terms_; }
  const NetworkTerm& term(std::size_t i) const { return terms_.at(i); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  Counting counting() const noexcept { return counting_; }
  const Provenance& provenance() const noexcept { return provenance_; }

  /// Co-occurrence count of (i, j) in either orientation; 0 when absent.
  std::int64_t weight(std::size_t i, std::size_t j) const;
  /// w_i: sum of counts over i's edges.
  std::int64_t strength(std::size_t i) const { return strengths_.at(i); }
  /// Index of `label`, or size() when absent.
  std::size_t find(const std::string& label) const;

  /// Subnetwork on `keep` (ascending indices), edges restricted to it.
  CoocNetwork restricted(const std::vector<std::size_t>& keep, Provenance provenance) const;

  bool operator==(const CoocNetwork& other) const {
    return terms_ == other.terms_ && edges_ == other.edges_ && counting_ == other.counting_ &&
           provenance_ == other.provenance_;
  }

 private:
  std::vector<NetworkTerm> terms_;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> strengths_;
  Counting counting_ = Counting::binary;
  Provenance provenance_;
};

/// Binary mode: c_ij = number of units containing both terms. Full mode:
/// each unit contributes min(times_i, times_j). Terms are ordered as in the
/// lexicon (ascending label).
CoocNetwork count_cooccurrences(const std::vector<TextUnit>& units, const Lexicon& lexicon, Counting counting,
                                Execution exec = Execution::parallel);

struct SimilarityEdge {
  std::size_t i = 0;  // matrix-local indices, i < j
  std::size_t j = 0;
  double s = 0.0;

  bool operator==(const SimilarityEdge&) const = default;
};

/// Sparse symmetric similarity over a set of nodes. `nodes[k]` is the index
/// of matrix node k in the network it was derived from.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  /// Builds from explicit edges over `n` nodes; throws ConfigError on
  /// invalid indices, duplicates, or non-finite/negative values.
  SimilarityMatrix(std::size_t n, std::vector<SimilarityEdge> edges);

  std::size_t size() const noexcept { return adjacency_.size(); }
  const std::vector<SimilarityEdge>& edges() const noexcept { return edges_; }
  /// (neighbor, s) pairs of node k, ascending neighbor.
  const std::vector<std::pair<std::size_t, double>>& neighbors(std::size_t k) const { return adjacency_.at(k); }
  double value(std::size_t i, std::size_t j) const;
  double max_value() const;

  std::vector<std::size_t> nodes;           // network index per matrix node
  std::vector<std::int64_t> strengths;      // w_i (empty for hand-built matrices)
  std::int64_t total = 0;                   // T = sum(w) / 2
  std::vector<std::size_t> isolated;        // network indices left out because w_i = 0

 private:
  std::vector<SimilarityEdge> edges_;
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency_;
};

/// s_ij = 2 T c_ij / (w_i w_j), computed from the reduced integer fraction so
/// that scaling every count by k gives bit-identical values. Isolated nodes
/// are left out and listed in `isolated`. Throws ConfigError without edges.
SimilarityMatrix association_strength(const CoocNetwork& net);

/// sum_j p_j ln(p_j / q_j) over entries with p_j > 0.
double profile_divergence(std::span<const double> p, std::span<const double> q);

/// r_i = KL divergence of term i's co-occurrence profile c_ij / w_i from the
/// background w_j / 2T. Isolated terms score 0. Throws ConfigError when fewer
/// than two terms have positive strength.
std::vector<double> relevance_scores(const CoocNetwork& net);

/// Keeps floor(fraction * n) highest-scoring terms (ties: higher occurrence
/// count, then ascending label), then removes exclusions. Provenance records
/// `selected_before_exclusions` and `selected_after_exclusions`.
CoocNetwork select_top_terms(const CoocNetwork& net, std::span<const double> scores, double fraction,
                             const WordSet& exclusions);

/// Ranked indices kept by the relevance cut alone (before exclusions).
std::vector<std::size_t> top_term_indices(const CoocNetwork& net, std::span<const double> scores, double fraction);

/// Drops terms without any edge; provenance records `isolated_dropped`.
CoocNetwork drop_isolated(const CoocNetwork& net);

}  // namespace kwmap
