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

#include "kwmap/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "kwmap/error.hpp"

namespace kwmap {

int Clustering::n_clusters() const {
  int k = 0;
  for (int c : assignment) k = std::max(k, c);
  return k;
}

std::vector<int> canonical_assignment(std::span<const int> labels) {
  std::map<int, std::pair<std::size_t, std::size_t>> info;  // label -> (size, first member)
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = info.try_emplace(labels[i], 0, i);
    ++it->second.first;
  }
  std::vector<std::pair<int, std::pair<std::size_t, std::size_t>>> order(info.begin(), info.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second.first != b.second.first) return a.second.first > b.second.first;
    return a.second.second < b.second.second;
  });
  std::map<int, int> rename;
  for (std::size_t k = 0; k < order.size(); ++k) rename[order[k].first] = static_cast<int>(k) + 1;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = rename[labels[i]];
  return out;
}

double quality(const SimilarityMatrix& sim, std::span<const int> assignment, double resolution) {
  if (assignment.size() != sim.size()) throw ConfigError("clustering does not cover every term");
  for (int c : assignment)
    if (c < 1) throw ConfigError("clustering leaves a term unassigned");
  double within = 0.0;
  for (const auto& e : sim.edges())
    if (assignment[e.i] == assignment[e.j]) within += e.s;
  std::map<int, double> sizes;
  for (int c : assignment) sizes[c] += 1.0;
  double pairs = 0.0;
  for (const auto& [c, n] : sizes) pairs += n * (n - 1.0) / 2.0;
  return within - resolution * pairs;
}

double quality(const SimilarityMatrix& sim, const Clustering& clustering, double resolution) {
  return quality(sim, clustering.assignment, resolution);
}

namespace {

// Weighted network used inside the optimizer; node sizes count original nodes.
struct WorkNet {
  std::vector<double> size;
  std::vector<std::vector<std::pair<int, double>>> adj;
  int n() const { return static_cast<int>(size.size()); }
};

WorkNet from_matrix(const SimilarityMatrix& sim) {
  WorkNet net;
  net.size.assign(sim.size(), 1.0);
  net.adj.resize(sim.size());
  for (std::size_t i = 0; i < sim.size(); ++i)
    for (const auto& [j, s] : sim.neighbors(i))
      if (s > 0.0) net.adj[i].emplace_back(static_cast<int>(j), s);
  return net;
}

int relabel(std::vector<int>& labels) {
  std::vector<int> map(labels.size(), -1);
  int next = 0;
  for (int& l : labels) {
    if (map[static_cast<std::size_t>(l)] < 0) map[static_cast<std::size_t>(l)] = next++;
    l = map[static_cast<std::size_t>(l)];
  }
  return next;
}

bool better(double gain, double best) {
  const double margin = 1e-12 * std::max({1.0, std::abs(gain), std::abs(best)});
  return gain > best + margin;
}

// Moves single nodes between clusters until no move improves the objective.
// Labels are in [0, n). Returns true when any node moved.
bool local_moving(const WorkNet& net, std::vector<int>& labels, double gamma, std::mt19937_64& rng) {
  const int n = net.n();
  if (n <= 1) return false;
  std::vector<double> cluster_size(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) cluster_size[static_cast<std::size_t>(labels[i])] += net.size[i];
  std::vector<int> empty;
  for (int c = n - 1; c >= 0; --c)
    if (cluster_size[static_cast<std::size_t>(c)] == 0.0) empty.push_back(c);

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int k = n - 1; k > 0; --k) std::swap(order[k], order[rng() % static_cast<std::uint64_t>(k + 1)]);

  std::vector<double> link(static_cast<std::size_t>(n), 0.0);
  std::vector<int> touched;
  bool any = false;
  for (bool moved = true; moved;) {
    moved = false;
    for (int i : order) {
      const int own = labels[i];
      const double si = net.size[i];
      cluster_size[own] -= si;
      touched.clear();
      for (const auto& [j, s] : net.adj[i]) {
        const int c = labels[j];
        if (link[c] == 0.0) touched.push_back(c);
        link[c] += s;
      }
      int best = own;
      double best_gain = link[own] - gamma * si * cluster_size[own];
      for (int c : touched) {
        if (c == own) continue;
        const double gain = link[c] - gamma * si * cluster_size[c];
        if (better(gain, best_gain)) best = c, best_gain = gain;
      }
      if (cluster_size[own] > 0.0 && better(0.0, best_gain)) {
        best = empty.back();
        empty.pop_back();
      }
      for (int c : touched) link[c] = 0.0;
      cluster_size[best] += si;
      if (cluster_size[own] == 0.0 && best != own) empty.push_back(own);
      if (best != own) {
        labels[i] = best;
        moved = any = true;
      }
    }
  }
  return any;
}

WorkNet aggregate(const WorkNet& net, const std::vector<int>& labels, int k) {
  WorkNet out;
  out.size.assign(static_cast<std::size_t>(k), 0.0);
  std::vector<std::map<int, double>> links(static_cast<std::size_t>(k));
  for (int i = 0; i < net.n(); ++i) {
    out.size[labels[i]] += net.size[i];
    for (const auto& [j, s] : net.adj[i])
      if (labels[i] != labels[j]) links[labels[i]][labels[j]] += s;
  }
  out.adj.resize(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c)
    for (const auto& [d, s] : links[c]) out.adj[c].emplace_back(d, s);
  return out;
}

// Smart local moving on `net`, starting from `labels` (in [0, n)).
void smart_local_moving(const WorkNet& net, std::vector<int>& labels, double gamma, std::mt19937_64& rng) {
  local_moving(net, labels, gamma, rng);
  const int k = relabel(labels);
  const int n = net.n();
  if (k == n) return;

  // Refine each cluster by local moving inside its induced subnetwork.
  std::vector<std::vector<int>> members(static_cast<std::size_t>(k));
  for (int i = 0; i < n; ++i) members[labels[i]].push_back(i);
  std::vector<int> sub(static_cast<std::size_t>(n), -1);
  std::vector<int> sub_parent;
  std::vector<int> local(static_cast<std::size_t>(n), -1);
  for (int c = 0; c < k; ++c) {
    const auto& m = members[c];
    WorkNet part;
    part.size.resize(m.size());
    part.adj.resize(m.size());
    for (std::size_t a = 0; a < m.size(); ++a) local[m[a]] = static_cast<int>(a);
    for (std::size_t a = 0; a < m.size(); ++a) {
      part.size[a] = net.size[m[a]];
      for (const auto& [j, s] : net.adj[m[a]])
        if (labels[j] == c) part.adj[a].emplace_back(local[j], s);
    }
    std::vector<int> part_labels(m.size());
    std::iota(part_labels.begin(), part_labels.end(), 0);
    local_moving(part, part_labels, gamma, rng);
    const int parts = relabel(part_labels);
    const int base = static_cast<int>(sub_parent.size());
    for (std::size_t a = 0; a < m.size(); ++a) sub[m[a]] = base + part_labels[a];
    for (int p = 0; p < parts; ++p) sub_parent.push_back(c);
  }

  const int n_sub = static_cast<int>(sub_parent.size());
  std::vector<int> coarse_of;       // node -> coarse node
  std::vector<int> coarse_labels;   // initial clustering of the coarse network
  int n_coarse = 0;
  if (n_sub < n) {
    coarse_of = sub;
    coarse_labels = sub_parent;
    n_coarse = n_sub;
  } else {
    // Refinement split everything back to singletons; aggregate whole clusters.
    coarse_of = labels;
    n_coarse = k;
    coarse_labels.resize(static_cast<std::size_t>(k));
    std::iota(coarse_labels.begin(), coarse_labels.end(), 0);
  }
  const WorkNet coarse = aggregate(net, coarse_of, n_coarse);
  smart_local_moving(coarse, coarse_labels, gamma, rng);
  for (int i = 0; i < n; ++i) labels[i] = coarse_labels[coarse_of[i]];
  relabel(labels);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct RestartResult {
  std::vector<int> assignment;
  double quality = 0.0;
};

constexpr int kIterations = 10;

RestartResult run_restart(const SimilarityMatrix& sim, const WorkNet& net, double gamma, std::uint64_t seed, int r) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(r))));
  std::vector<int> labels(static_cast<std::size_t>(net.n()));
  std::iota(labels.begin(), labels.end(), 0);
  RestartResult best{canonical_assignment(labels), 0.0};
  best.quality = quality(sim, best.assignment, gamma);
  if (r > 0) {
    // Later restarts begin from a random partition for diversity.
    const std::uint64_t bins = 1 + rng() % static_cast<std::uint64_t>(net.n());
    for (int& l : labels) l = static_cast<int>(rng() % bins);
  }
  for (int it = 0; it < kIterations; ++it) {
    smart_local_moving(net, labels, gamma, rng);
    auto assignment = canonical_assignment(labels);
    const double q = quality(sim, assignment, gamma);
    const bool same = assignment == best.assignment;
    if (q > best.quality) best = {std::move(assignment), q};
    if (same) break;
  }
  return best;
}

// Connected components over positive edges, each listed in ascending node
// order and ordered by smallest member. An optimal cluster never spans two
// components: merging unlinked groups only adds penalty.
std::vector<std::vector<int>> components(const WorkNet& net) {
  std::vector<int> comp(static_cast<std::size_t>(net.n()), -1);
  std::vector<std::vector<int>> out;
  for (int root = 0; root < net.n(); ++root) {
    if (comp[root] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<int> members{root};
    comp[root] = id;
    for (std::size_t k = 0; k < members.size(); ++k)
      for (const auto& [j, s] : net.adj[members[k]])
        if (comp[j] < 0) comp[j] = id, members.push_back(j);
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

// Components up to this size are solved exactly.
constexpr int kExactLimit = 10;

// Branch and bound over restricted growth strings. The bound adds every
// remaining link to earlier nodes, which no assignment can exceed.
std::vector<int> exact_partition(const WorkNet& net, double gamma) {
  const int m = net.n();
  std::vector<std::vector<double>> w(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(m), 0.0));
  for (int i = 0; i < m; ++i)
    for (const auto& [j, s] : net.adj[i]) w[i][j] = s;
  std::vector<double> rest(static_cast<std::size_t>(m) + 1, 0.0);
  for (int k = m - 1; k >= 0; --k) {
    double back = 0.0;
    for (int j = 0; j < k; ++j) back += w[k][j];
    rest[k] = rest[k + 1] + back;
  }
  std::vector<int> labels(static_cast<std::size_t>(m), 0), best(static_cast<std::size_t>(m));
  std::iota(best.begin(), best.end(), 0);
  std::vector<int> count(static_cast<std::size_t>(m), 0);
  double best_q = 0.0;
  auto search = [&](auto&& self, int k, int used, double q) -> void {
    if (k == m) {
      if (q > best_q) best_q = q, best = labels;
      return;
    }
    if (q + rest[k] <= best_q) return;
    for (int c = 0; c <= used && c < m; ++c) {
      double gain = -gamma * count[c];
      for (int j = 0; j < k; ++j)
        if (labels[j] == c) gain += w[k][j];
      labels[k] = c;
      ++count[c];
      self(self, k + 1, c == used ? used + 1 : used, q + gain);
      --count[c];
    }
  };
  labels[0] = 0;
  count[0] = 1;
  search(search, 1, 1, 0.0);
  return best;
}

struct Component {
  std::vector<int> members;
  WorkNet net;
  SimilarityMatrix sim;
};

Component induced(const WorkNet& net, std::vector<int> members) {
  std::vector<int> local(static_cast<std::size_t>(net.n()), -1);
  for (std::size_t a = 0; a < members.size(); ++a) local[members[a]] = static_cast<int>(a);
  Component c;
  c.net.size.resize(members.size());
  c.net.adj.resize(members.size());
  std::vector<SimilarityEdge> edges;
  for (std::size_t a = 0; a < members.size(); ++a) {
    c.net.size[a] = net.size[members[a]];
    for (const auto& [j, s] : net.adj[members[a]]) {
      c.net.adj[a].emplace_back(local[j], s);
      if (local[j] > static_cast<int>(a)) edges.push_back({a, static_cast<std::size_t>(local[j]), s});
    }
  }
  c.sim = SimilarityMatrix(members.size(), std::move(edges));
  c.members = std::move(members);
  return c;
}

}  // namespace

Clustering cluster(const SimilarityMatrix& sim, double resolution, std::uint64_t seed, int restarts, Execution exec) {
  if (sim.size() == 0) throw ConfigError("cannot cluster an empty similarity matrix");
  if (!(resolution > 0.0) || !std::isfinite(resolution)) throw ConfigError("resolution must be > 0");
  if (restarts < 1) throw ConfigError("restarts must be >= 1");

  const WorkNet net = from_matrix(sim);
  std::vector<int> labels(sim.size(), 0);
  int offset = 0;
  for (auto& members : components(net)) {
    const int m = static_cast<int>(members.size());
    std::vector<int> local;
    if (m == 1) {
      local = {0};
    } else {
      const Component comp = induced(net, std::move(members));
      members = comp.members;
      if (m <= kExactLimit) {
        local = exact_partition(comp.net, resolution);
      } else {
        std::vector<RestartResult> results(static_cast<std::size_t>(restarts));
        if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
          for (int r = 0; r < restarts; ++r)
            results[static_cast<std::size_t>(r)] = run_restart(comp.sim, comp.net, resolution, seed, r);
        } else {
          for (int r = 0; r < restarts; ++r)
            results[static_cast<std::size_t>(r)] = run_restart(comp.sim, comp.net, resolution, seed, r);
        }
        std::size_t winner = 0;
        for (std::size_t r = 1; r < results.size(); ++r)
          if (results[r].quality > results[winner].quality) winner = r;
        local = std::move(results[winner].assignment);
      }
    }
    int top = 0;
    for (std::size_t a = 0; a < members.size(); ++a) {
      labels[members[a]] = offset + local[a];
      top = std::max(top, local[a]);
    }
    offset += top + 1;
  }

  Clustering out;
  out.assignment = canonical_assignment(labels);
  out.resolution = resolution;
  out.seed = seed;
  out.quality = quality(sim, out.assignment, resolution);
  return out;
}

}  // namespace kwmap
