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

#include <cstdint>
#include <span>
#include <vector>

#include "kwmap/execution.hpp"
#include "kwmap/network.hpp"

namespace kwmap {

/// Cluster id per matrix node, ids contiguous in 1..K, numbered by
/// decreasing cluster size (ties: smallest member index first).
struct Clustering {
  std::vector<int> assignment;
  double resolution = 1.0;
  std::uint64_t seed = 0;
  double quality = 0.0;

  int n_clusters() const;
  bool operator==(const Clustering&) const = default;
};

/// Q(gamma) = sum over same-cluster pairs i<j of (s_ij - gamma). Throws
/// ConfigError when the assignment does not cover every node.
double quality(const SimilarityMatrix& sim, std::span<const int> assignment, double resolution);
double quality(const SimilarityMatrix& sim, const Clustering& clustering, double resolution);

/// Maximizes Q(gamma) per connected component. Components of up to ten
/// nodes are solved exactly; larger ones use smart local moving (local
/// moving, per-cluster refinement, aggregation) from `restarts` seeded
/// starts. The winner is the best quality, then the lowest restart index,
/// so serial and parallel runs agree exactly.
Clustering cluster(const SimilarityMatrix& sim, double resolution, std::uint64_t seed, int restarts,
                   Execution exec = Execution::parallel);

/// Renumbers arbitrary labels into the canonical 1..K order described above.
std::vector<int> canonical_assignment(std::span<const int> labels);

}  // namespace kwmap
