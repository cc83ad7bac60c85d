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

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kwmap/cluster.hpp"
#include "kwmap/network.hpp"

namespace kwmap {

struct FrequencyTable {
  std::string source;
  int cluster_id = 0;
  std::vector<std::pair<std::string, std::int64_t>> rows;  // count desc, then label asc

  bool operator==(const FrequencyTable&) const = default;
};

/// Top-k terms of one cluster by occurrence count. `clustering` must assign
/// every network term; throws ConfigError for an unknown cluster id.
FrequencyTable frequency_table(const CoocNetwork& net, const Clustering& clustering, int cluster_id, std::size_t k);

/// Jaccard index of the two term sets. Throws ConfigError when both are empty.
double term_set_similarity(const CoocNetwork& a, const CoocNetwork& b);

/// Cosine of occurrence-count vectors over the union vocabulary. Throws
/// ConfigError on a zero vector.
double weighted_profile_similarity(const CoocNetwork& a, const CoocNetwork& b);

/// Three-way comparison of networks labelled cited, citing and context.
struct ComparisonReport {
  static constexpr std::array<const char*, 3> labels{"cited", "citing", "context"};
  using Matrix = std::array<std::array<double, 3>, 3>;

  Matrix jaccard{};
  Matrix cosine{};
  bool jaccard_ordering_holds = false;  // jaccard(cited, context) > jaccard(citing, context)
  bool cosine_ordering_holds = false;
  // Sorted shared terms for (cited, citing), (cited, context), (citing, context).
  std::array<std::vector<std::string>, 3> shared_terms;

  bool operator==(const ComparisonReport&) const = default;
};

ComparisonReport triplet_report(const CoocNetwork& cited, const CoocNetwork& citing, const CoocNetwork& context);

/// Keys `jaccard`, `cosine`, `ordering_holds`, `shared_terms`; matrix entries
/// keyed `"<a>/<b>"`.
nlohmann::ordered_json to_json(const ComparisonReport& report);

}  // namespace kwmap
