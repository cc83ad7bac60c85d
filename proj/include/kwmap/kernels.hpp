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
#include <utility>
#include <vector>

#include "kwmap/execution.hpp"
#include "kwmap/network.hpp"

namespace kwmap {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

namespace kernels {

/// (term index, times in unit), ascending term index, no duplicates.
using UnitTerms = std::vector<std::pair<std::uint32_t, std::int32_t>>;

/// Neighbor lists (neighbor, weight), symmetric, no self loops.
using Adjacency = std::vector<std::vector<std::pair<std::size_t, double>>>;

// Pair counting over units. Edges come back sorted by (i, j).
std::vector<Edge> count_pairs_serial(std::span<const UnitTerms> units, Counting counting);
std::vector<Edge> count_pairs_parallel(std::span<const UnitTerms> units, Counting counting);
std::vector<Edge> count_pairs(std::span<const UnitTerms> units, Counting counting, Execution exec);

// V(x) = sum_{i<j} s_ij |x_i - x_j|^2
double objective_serial(const Adjacency& adj, std::span<const Point> x);
double objective_parallel(const Adjacency& adj, std::span<const Point> x);

// 2 / (n (n-1)) * sum_{i<j} |x_i - x_j|
double mean_distance_serial(std::span<const Point> x);
double mean_distance_parallel(std::span<const Point> x);

// dV/dx_i = 2 sum_j s_ij (x_i - x_j)
void objective_gradient_serial(const Adjacency& adj, std::span<const Point> x, std::span<Point> grad);
void objective_gradient_parallel(const Adjacency& adj, std::span<const Point> x, std::span<Point> grad);

// dD/dx_i = 2 / (n (n-1)) * sum_{j != i} (x_i - x_j) / |x_i - x_j|
void mean_distance_gradient_serial(std::span<const Point> x, std::span<Point> grad);
void mean_distance_gradient_parallel(std::span<const Point> x, std::span<Point> grad);

inline double objective(const Adjacency& adj, std::span<const Point> x, Execution e) {
  return e == Execution::parallel ? objective_parallel(adj, x) : objective_serial(adj, x);
}
inline double mean_distance(std::span<const Point> x, Execution e) {
  return e == Execution::parallel ? mean_distance_parallel(x) : mean_distance_serial(x);
}
inline void objective_gradient(const Adjacency& adj, std::span<const Point> x, std::span<Point> g, Execution e) {
  e == Execution::parallel ? objective_gradient_parallel(adj, x, g) : objective_gradient_serial(adj, x, g);
}
inline void mean_distance_gradient(std::span<const Point> x, std::span<Point> g, Execution e) {
  e == Execution::parallel ? mean_distance_gradient_parallel(x, g) : mean_distance_gradient_serial(x, g);
}

}  // namespace kernels
}  // namespace kwmap
