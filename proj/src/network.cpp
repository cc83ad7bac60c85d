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

#include "kwmap/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kwmap/error.hpp"
#include "kwmap/kernels.hpp"

namespace kwmap {

std::string_view to_string(Counting c) { return c == Counting::binary ? "binary" : "full"; }

Counting counting_from_string(std::string_view s) {
  if (s == "binary") return Counting::binary;
  if (s == "full") return Counting::full;
  throw ConfigError("counting must be 'binary' or 'full', got '" + std::string(s) + "'");
}

namespace {

bool edge_less(const Edge& a, const Edge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; }

}  // namespace

CoocNetwork::CoocNetwork(std::vector<NetworkTerm> terms, std::vector<Edge> edges, Counting counting,
                         Provenance provenance)
    : terms_(std::move(terms)), edges_(std::move(edges)), counting_(counting), provenance_(std::move(provenance)) {
  const std::size_t n = terms_.size();
  for (auto& e : edges_) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i == e.j) throw ConsistencyError("self-edge on term " + std::to_string(e.i));
    if (e.j >= n) throw ConsistencyError("edge index out of range");
    if (e.count <= 0) throw ConsistencyError("edge with non-positive count");
  }
  std::sort(edges_.begin(), edges_.end(), edge_less);
  for (std::size_t k = 1; k < edges_.size(); ++k)
    if (edges_[k - 1].i == edges_[k].i && edges_[k - 1].j == edges_[k].j)
      throw ConsistencyError("duplicate edge " + std::to_string(edges_[k].i) + "-" + std::to_string(edges_[k].j));
  strengths_.assign(n, 0);
  for (const auto& e : edges_) {
    strengths_[e.i] += e.count;
    strengths_[e.j] += e.count;
  }
}

std::int64_t CoocNetwork::weight(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  const Edge probe{i, j, 0};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), probe, edge_less);
  return it != edges_.end() && it->i == i && it->j == j ? it->count : 0;
}

std::size_t CoocNetwork::find(const std::string& label) const {
  for (std::size_t k = 0; k < terms_.size(); ++k)
    if (terms_[k].label == label) return k;
  return terms_.size();
}

CoocNetwork CoocNetwork::restricted(const std::vector<std::size_t>& keep, Provenance provenance) const {
  std::vector<std::size_t> remap(terms_.size(), terms_.size());
  std::vector<NetworkTerm> terms;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (k > 0 && keep[k] <= keep[k - 1]) throw ConsistencyError("restricted() needs ascending indices");
    remap.at(keep[k]) = k;
    terms.push_back(terms_[keep[k]]);
  }
  std::vector<Edge> edges;
  for (const auto& e : edges_)
    if (remap[e.i] < terms_.size() && remap[e.j] < terms_.size()) edges.push_back({remap[e.i], remap[e.j], e.count});
  return CoocNetwork(std::move(terms), std::move(edges), counting_, std::move(provenance));
}

CoocNetwork count_cooccurrences(const std::vector<TextUnit>& units, const Lexicon& lexicon, Counting counting,
                                Execution exec) {
  if (!lexicon.extractor) throw ConsistencyError("lexicon carries no extractor");
  std::map<std::string, std::uint32_t> index;
  std::vector<NetworkTerm> terms;
  for (const auto& [label, stats] : lexicon.terms) {
    index.emplace(label, static_cast<std::uint32_t>(terms.size()));
    terms.push_back({label, static_cast<std::int64_t>(stats.occurrence_count),
                     std::vector<std::string>(stats.unit_ids.begin(), stats.unit_ids.end())});
  }

  const auto per_unit = unit_term_counts(units, *lexicon.extractor, exec);
  std::vector<kernels::UnitTerms> unit_terms(units.size());
  std::vector<std::vector<std::string>> matched(terms.size());
  for (std::size_t u = 0; u < units.size(); ++u) {
    for (const auto& [label, times] : per_unit[u]) {
      auto it = index.find(label);
      if (it == index.end()) continue;
      unit_terms[u].emplace_back(it->second, times);
      matched[it->second].push_back(units[u].unit_id);
    }
    // map order of labels == index order, so unit_terms[u] is already ascending
  }
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (matched[t].empty())
      throw ConsistencyError("lexicon term '" + terms[t].label + "' does not occur in any unit");
    std::sort(matched[t].begin(), matched[t].end());
    if (matched[t] != terms[t].unit_ids)
      throw ConsistencyError("lexicon term '" + terms[t].label + "' was counted over different units");
  }

  auto edges = kernels::count_pairs(unit_terms, counting, exec);
  Provenance prov;
  prov.source = units.empty()                                     ? "empty"
                : units.front().source == UnitSource::title_abstract ? "title_abstract"
                                                                     : "citation_context";
  prov.params["counting"] = std::string(to_string(counting));
  prov.params["min_occurrences"] = std::to_string(lexicon.min_occurrences);
  prov.params["n_units"] = std::to_string(units.size());
  return CoocNetwork(std::move(terms), std::move(edges), counting, std::move(prov));
}

SimilarityMatrix::SimilarityMatrix(std::size_t n, std::vector<SimilarityEdge> edges)
    : edges_(std::move(edges)), adjacency_(n) {
  for (auto& e : edges_) {
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.i == e.j || e.j >= n) throw ConfigError("similarity edge with invalid indices");
    if (!std::isfinite(e.s) || e.s < 0.0) throw ConfigError("similarity values must be finite and >= 0");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const SimilarityEdge& a, const SimilarityEdge& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  for (std::size_t k = 1; k < edges_.size(); ++k)
    if (edges_[k - 1].i == edges_[k].i && edges_[k - 1].j == edges_[k].j)
      throw ConfigError("duplicate similarity edge");
  for (const auto& e : edges_) {
    adjacency_[e.i].emplace_back(e.j, e.s);
    adjacency_[e.j].emplace_back(e.i, e.s);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
  nodes.resize(n);
  std::iota(nodes.begin(), nodes.end(), std::size_t{0});
}

double SimilarityMatrix::value(std::size_t i, std::size_t j) const {
  for (const auto& [k, s] : adjacency_.at(i))
    if (k == j) return s;
  return 0.0;
}

double SimilarityMatrix::max_value() const {
  double m = 0.0;
  for (const auto& e : edges_) m = std::max(m, e.s);
  return m;
}

namespace {

__extension__ typedef unsigned __int128 u128;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

SimilarityMatrix association_strength(const CoocNetwork& net) {
  if (net.edges().empty()) throw ConfigError("association strength needs at least one edge");
  std::vector<std::size_t> local(net.size(), net.size());
  std::vector<std::size_t> nodes;
  std::vector<std::size_t> isolated;
  std::int64_t twice_total = 0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    twice_total += net.strength(i);
    if (net.strength(i) == 0) {
      isolated.push_back(i);
      continue;
    }
    local[i] = nodes.size();
    nodes.push_back(i);
  }
  const std::int64_t total = twice_total / 2;

  std::vector<SimilarityEdge> edges;
  edges.reserve(net.edges().size());
  for (const auto& e : net.edges()) {
    u128 num = u128(2) * u128(static_cast<std::uint64_t>(total)) * u128(static_cast<std::uint64_t>(e.count));
    u128 den = u128(static_cast<std::uint64_t>(net.strength(e.i))) * u128(static_cast<std::uint64_t>(net.strength(e.j)));
    const u128 g = gcd128(num, den);
    num /= g;
    den /= g;
    edges.push_back({local[e.i], local[e.j], static_cast<double>(num) / static_cast<double>(den)});
  }
  SimilarityMatrix sim(nodes.size(), std::move(edges));
  sim.nodes = std::move(nodes);
  for (std::size_t k : sim.nodes) sim.strengths.push_back(net.strength(k));
  sim.total = total;
  sim.isolated = std::move(isolated);
  return sim;
}

double profile_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw ConfigError("profile_divergence: size mismatch");
  double r = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] > 0.0) r += p[k] * std::log(p[k] / q[k]);
  return r;
}

std::vector<double> relevance_scores(const CoocNetwork& net) {
  std::size_t positive = 0;
  std::int64_t twice_total = 0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (net.strength(i) > 0) ++positive;
    twice_total += net.strength(i);
  }
  if (positive < 2) throw ConfigError("relevance scores need at least two terms with co-occurrences");

  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> adj(net.size());
  for (const auto& e : net.edges()) {
    adj[e.i].emplace_back(e.j, e.count);
    adj[e.j].emplace_back(e.i, e.count);
  }
  std::vector<double> scores(net.size(), 0.0);
  const double two_t = static_cast<double>(twice_total);
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (net.strength(i) == 0) continue;
    std::sort(adj[i].begin(), adj[i].end());
    std::vector<double> p, q;
    for (const auto& [j, c] : adj[i]) {
      p.push_back(static_cast<double>(c) / static_cast<double>(net.strength(i)));
      q.push_back(static_cast<double>(net.strength(j)) / two_t);
    }
    scores[i] = std::max(0.0, profile_divergence(p, q));
  }
  return scores;
}

std::vector<std::size_t> top_term_indices(const CoocNetwork& net, std::span<const double> scores, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigError("relevance fraction must be in (0, 1]");
  if (scores.size() != net.size()) throw ConsistencyError("one relevance score per term expected");
  const auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(net.size()) + 1e-9));
  if (k == 0) throw ConfigError("fraction too small for lexicon");

  std::vector<std::size_t> order(net.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    if (net.term(a).occurrences != net.term(b).occurrences) return net.term(a).occurrences > net.term(b).occurrences;
    return net.term(a).label < net.term(b).label;
  });
  order.resize(k);
  return order;
}

CoocNetwork select_top_terms(const CoocNetwork& net, std::span<const double> scores, double fraction,
                             const WordSet& exclusions) {
  auto ranked = top_term_indices(net, scores, fraction);
  const std::size_t before = ranked.size();
  std::erase_if(ranked, [&](std::size_t k) { return exclusions.contains(net.term(k).label); });
  std::sort(ranked.begin(), ranked.end());

  Provenance prov = net.provenance();
  prov.params["relevance_fraction"] = std::to_string(fraction);
  prov.params["selected_before_exclusions"] = std::to_string(before);
  prov.params["selected_after_exclusions"] = std::to_string(ranked.size());
  return net.restricted(ranked, std::move(prov));
}

CoocNetwork drop_isolated(const CoocNetwork& net) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < net.size(); ++i)
    if (net.strength(i) > 0) keep.push_back(i);
  Provenance prov = net.provenance();
  prov.params["isolated_dropped"] = std::to_string(net.size() - keep.size());
  return net.restricted(keep, std::move(prov));
}

}  // namespace kwmap
