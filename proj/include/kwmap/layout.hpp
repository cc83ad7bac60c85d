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
#include "kwmap/kernels.hpp"
#include "kwmap/network.hpp"

namespace kwmap {

/// 2D map: mean pairwise distance 1, centroid at the origin.
struct MapLayout {
  std::vector<Point> positions;
  double objective = 0.0;
  bool converged = false;
  int iterations_used = 0;
  std::vector<double> objective_history;  // accepted iterates, first entry = initial feasible layout

  bool operator==(const MapLayout&) const = default;
};

/// V(x) = sum_{i<j} s_ij |x_i - x_j|^2. Throws ConfigError when positions
/// do not cover the matrix.
double layout_objective(const SimilarityMatrix& sim, std::span<const Point> positions);

/// Minimizes V subject to mean pairwise distance 1 by gradient steps on the
/// scale-free objective V / D^2, each step followed by rescaling onto the
/// constraint; steps are halved until V decreases. Stops when the relative
/// decrease drops below `tol` or after `max_iter` gradient evaluations.
/// Connected components are laid out separately and packed on a grid with
/// a gap of 2 before the final centering and rescaling.
MapLayout layout(const SimilarityMatrix& sim, std::uint64_t seed, int max_iter = 10000, double tol = 1e-8,
                 Execution exec = Execution::parallel);

double mean_pairwise_distance(std::span<const Point> positions);
Point centroid(std::span<const Point> positions);

}  // namespace kwmap
