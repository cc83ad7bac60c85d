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

#include "kwmap/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kwmap {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace kernels {

namespace {

// Units containing each term, with the term's position inside the unit.
struct Postings {
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> of_term;
};

Postings index_units(std::span<const UnitTerms> units) {
  std::uint32_t n_terms = 0;
  for (const auto& unit : units)
    for (const auto& [t, c] : unit) n_terms = std::max(n_terms, t + 1);
  Postings p;
  p.of_term.resize(n_terms);
  for (std::size_t u = 0; u < units.size(); ++u)
    for (std::size_t a = 0; a < units[u].size(); ++a)
      p.of_term[units[u][a].first].emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(a));
  return p;
}

// Edges (i, j > i) of row i, ascending j. `acc` is zeroed scratch, one slot
// per term, and is left zeroed.
void count_row(std::span<const UnitTerms> units, const Postings& p, std::uint32_t i, Counting counting,
               std::vector<std::int64_t>& acc, std::vector<std::uint32_t>& touched, std::vector<Edge>& out) {
  touched.clear();
  for (const auto& [u, a] : p.of_term[i]) {
    const auto& unit = units[u];
    for (std::size_t b = a + 1; b < unit.size(); ++b) {
      const std::uint32_t j = unit[b].first;
      if (acc[j] == 0) touched.push_back(j);
      acc[j] += counting == Counting::binary ? 1 : std::min<std::int64_t>(unit[a].second, unit[b].second);
    }
  }
  std::sort(touched.begin(), touched.end());
  for (std::uint32_t j : touched) {
    out.push_back({i, j, acc[j]});
    acc[j] = 0;
  }
}

}  // namespace

std::vector<Edge> count_pairs_serial(std::span<const UnitTerms> units, Counting counting) {
  const Postings p = index_units(units);
  std::vector<std::int64_t> acc(p.of_term.size(), 0);
  std::vector<std::uint32_t> touched;
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i < p.of_term.size(); ++i) count_row(units, p, i, counting, acc, touched, edges);
  return edges;
}

std::vector<Edge> count_pairs_parallel(std::span<const UnitTerms> units, Counting counting) {
  const Postings p = index_units(units);
  const auto n = static_cast<std::ptrdiff_t>(p.of_term.size());
  std::vector<std::vector<Edge>> rows(p.of_term.size());
#pragma omp parallel
  {
    std::vector<std::int64_t> acc(p.of_term.size(), 0);
    std::vector<std::uint32_t> touched;
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      count_row(units, p, static_cast<std::uint32_t>(i), counting, acc, touched, rows[static_cast<std::size_t>(i)]);
  }
  // Rows are concatenated in index order, as the serial loop emits them.
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  std::vector<Edge> edges;
  edges.reserve(total);
  for (const auto& r : rows) edges.insert(edges.end(), r.begin(), r.end());
  return edges;
}

std::vector<Edge> count_pairs(std::span<const UnitTerms> units, Counting counting, Execution exec) {
  return exec == Execution::parallel ? count_pairs_parallel(units, counting) : count_pairs_serial(units, counting);
}

// The parallel layout kernels write one value per node and leave the final
// reduction serial and in index order, which keeps them bit-identical to the
// serial versions regardless of thread count.

namespace {

double node_objective(const Adjacency& adj, std::span<const Point> x, std::size_t i) {
  double sum = 0.0;
  for (const auto& [j, s] : adj[i]) {
    if (j <= i) continue;
    const double dx = x[i].x - x[j].x;
    const double dy = x[i].y - x[j].y;
    sum += s * (dx * dx + dy * dy);
  }
  return sum;
}

double node_distance_sum(std::span<const Point> x, std::size_t i) {
  double sum = 0.0;
  for (std::size_t j = i + 1; j < x.size(); ++j) {
    const double dx = x[i].x - x[j].x;
    const double dy = x[i].y - x[j].y;
    sum += std::sqrt(dx * dx + dy * dy);
  }
  return sum;
}

Point node_objective_gradient(const Adjacency& adj, std::span<const Point> x, std::size_t i) {
  Point g;
  for (const auto& [j, s] : adj[i]) {
    g.x += 2.0 * s * (x[i].x - x[j].x);
    g.y += 2.0 * s * (x[i].y - x[j].y);
  }
  return g;
}

Point node_distance_gradient(std::span<const Point> x, std::size_t i, double scale) {
  Point g;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j == i) continue;
    const double dx = x[i].x - x[j].x;
    const double dy = x[i].y - x[j].y;
    const double d = std::sqrt(dx * dx + dy * dy);
    if (d == 0.0) continue;
    g.x += dx / d;
    g.y += dy / d;
  }
  g.x *= scale;
  g.y *= scale;
  return g;
}

double pair_scale(std::size_t n) { return n < 2 ? 0.0 : 2.0 / (static_cast<double>(n) * static_cast<double>(n - 1)); }

double ordered_sum(const std::vector<double>& v) {
  double sum = 0.0;
  for (double a : v) sum += a;
  return sum;
}

}  // namespace

double objective_serial(const Adjacency& adj, std::span<const Point> x) {
  std::vector<double> per(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) per[i] = node_objective(adj, x, i);
  return ordered_sum(per);
}

double objective_parallel(const Adjacency& adj, std::span<const Point> x) {
  std::vector<double> per(x.size());
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) per[i] = node_objective(adj, x, static_cast<std::size_t>(i));
  return ordered_sum(per);
}

double mean_distance_serial(std::span<const Point> x) {
  std::vector<double> per(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) per[i] = node_distance_sum(x, i);
  return pair_scale(x.size()) * ordered_sum(per);
}

double mean_distance_parallel(std::span<const Point> x) {
  std::vector<double> per(x.size());
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) per[i] = node_distance_sum(x, static_cast<std::size_t>(i));
  return pair_scale(x.size()) * ordered_sum(per);
}

void objective_gradient_serial(const Adjacency& adj, std::span<const Point> x, std::span<Point> grad) {
  for (std::size_t i = 0; i < x.size(); ++i) grad[i] = node_objective_gradient(adj, x, i);
}

void objective_gradient_parallel(const Adjacency& adj, std::span<const Point> x, std::span<Point> grad) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) grad[i] = node_objective_gradient(adj, x, static_cast<std::size_t>(i));
}

void mean_distance_gradient_serial(std::span<const Point> x, std::span<Point> grad) {
  const double scale = pair_scale(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) grad[i] = node_distance_gradient(x, i, scale);
}

void mean_distance_gradient_parallel(std::span<const Point> x, std::span<Point> grad) {
  const double scale = pair_scale(x.size());
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) grad[i] = node_distance_gradient(x, static_cast<std::size_t>(i), scale);
}

}  // namespace kernels
}  // namespace kwmap
