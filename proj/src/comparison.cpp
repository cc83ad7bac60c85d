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

#include "kwmap/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "kwmap/error.hpp"

namespace kwmap {

FrequencyTable frequency_table(const CoocNetwork& net, const Clustering& clustering, int cluster_id, std::size_t k) {
  if (clustering.assignment.size() != net.size()) throw ConfigError("clustering does not match the network");
  if (cluster_id < 1 || cluster_id > clustering.n_clusters())
    throw ConfigError("unknown cluster id " + std::to_string(cluster_id));
  FrequencyTable table;
  table.source = net.provenance().source;
  table.cluster_id = cluster_id;
  for (std::size_t i = 0; i < net.size(); ++i)
    if (clustering.assignment[i] == cluster_id) table.rows.emplace_back(net.term(i).label, net.term(i).occurrences);
  std::sort(table.rows.begin(), table.rows.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (table.rows.size() > k) table.rows.resize(k);
  return table;
}

namespace {

std::set<std::string> term_set(const CoocNetwork& net) {
  std::set<std::string> s;
  for (const auto& t : net.terms()) s.insert(t.label);
  return s;
}

std::vector<std::string> shared(const CoocNetwork& a, const CoocNetwork& b) {
  const auto sa = term_set(a), sb = term_set(b);
  std::vector<std::string> out;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
  return out;
}

}  // namespace

double term_set_similarity(const CoocNetwork& a, const CoocNetwork& b) {
  const auto sa = term_set(a), sb = term_set(b);
  if (sa.empty() && sb.empty()) throw ConfigError("term_set_similarity of two empty networks");
  std::size_t common = 0;
  for (const auto& t : sa) common += sb.count(t);
  const std::size_t uni = sa.size() + sb.size() - common;
  return static_cast<double>(common) / static_cast<double>(uni);
}

double weighted_profile_similarity(const CoocNetwork& a, const CoocNetwork& b) {
  std::map<std::string, std::pair<double, double>> vec;
  for (const auto& t : a.terms()) vec[t.label].first += static_cast<double>(t.occurrences);
  for (const auto& t : b.terms()) vec[t.label].second += static_cast<double>(t.occurrences);
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [label, v] : vec) {
    dot += v.first * v.second;
    na += v.first * v.first;
    nb += v.second * v.second;
  }
  if (na == 0.0 || nb == 0.0) throw ConfigError("weighted_profile_similarity of a zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

ComparisonReport triplet_report(const CoocNetwork& cited, const CoocNetwork& citing, const CoocNetwork& context) {
  const std::array<const CoocNetwork*, 3> nets{&cited, &citing, &context};
  for (std::size_t k = 0; k < 3; ++k)
    if (nets[k]->empty()) throw ConfigError(std::string("triplet_report: empty ") + ComparisonReport::labels[k] + " network");

  ComparisonReport r;
  for (std::size_t a = 0; a < 3; ++a) {
    r.jaccard[a][a] = 1.0;
    r.cosine[a][a] = 1.0;
    for (std::size_t b = a + 1; b < 3; ++b) {
      r.jaccard[a][b] = r.jaccard[b][a] = term_set_similarity(*nets[a], *nets[b]);
      r.cosine[a][b] = r.cosine[b][a] = weighted_profile_similarity(*nets[a], *nets[b]);
    }
  }
  r.jaccard_ordering_holds = r.jaccard[0][2] > r.jaccard[1][2];
  r.cosine_ordering_holds = r.cosine[0][2] > r.cosine[1][2];
  r.shared_terms = {shared(cited, citing), shared(cited, context), shared(citing, context)};
  return r;
}

nlohmann::ordered_json to_json(const ComparisonReport& report) {
  using nlohmann::ordered_json;
  auto matrix = [](const ComparisonReport::Matrix& m) {
    ordered_json obj = ordered_json::object();
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        obj[std::string(ComparisonReport::labels[a]) + "/" + ComparisonReport::labels[b]] = m[a][b];
    return obj;
  };
  ordered_json out;
  out["jaccard"] = matrix(report.jaccard);
  out["cosine"] = matrix(report.cosine);
  out["ordering_holds"] = {{"jaccard", report.jaccard_ordering_holds}, {"cosine", report.cosine_ordering_holds}};
  ordered_json shared = ordered_json::object();
  shared["cited/citing"] = report.shared_terms[0];
  shared["cited/context"] = report.shared_terms[1];
  shared["citing/context"] = report.shared_terms[2];
  out["shared_terms"] = shared;
  return out;
}

}  // namespace kwmap
