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

#include "kwmap/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "kwmap/error.hpp"

namespace kwmap {

double mean_pairwise_distance(std::span<const Point> positions) { return kernels::mean_distance_serial(positions); }

Point centroid(std::span<const Point> positions) {
  Point c;
  if (positions.empty()) return c;
  for (const auto& p : positions) {
    c.x += p.x;
    c.y += p.y;
  }
  c.x /= static_cast<double>(positions.size());
  c.y /= static_cast<double>(positions.size());
  return c;
}

double layout_objective(const SimilarityMatrix& sim, std::span<const Point> positions) {
  if (positions.size() != sim.size()) throw ConfigError("layout positions do not cover every term");
  double v = 0.0;
  for (const auto& e : sim.edges()) {
    const double dx = positions[e.i].x - positions[e.j].x;
    const double dy = positions[e.i].y - positions[e.j].y;
    v += e.s * (dx * dx + dy * dy);
  }
  return v;
}

namespace {

struct ComponentResult {
  double objective = 0.0;
  bool converged = true;
  int iterations = 0;
  std::vector<double> history;
};

void center(std::vector<Point>& x) {
  const Point c = centroid(x);
  for (auto& p : x) {
    p.x -= c.x;
    p.y -= c.y;
  }
}

// Centers and rescales so that the mean pairwise distance is 1.
void project(std::vector<Point>& x, Execution exec) {
  center(x);
  if (x.size() < 2) return;
  const double d = kernels::mean_distance(x, exec);
  if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError("layout collapsed to a single point");
  for (auto& p : x) {
    p.x /= d;
    p.y /= d;
  }
}

// Accepted steps in a row with relative objective change below tol before
// stopping. A single small change can follow a poor trial step.
constexpr int kCalmSteps = 3;

ComponentResult optimize(const kernels::Adjacency& adj, std::vector<Point>& x, int max_iter, double tol,
                         Execution exec) {
  ComponentResult res;
  const std::size_t n = x.size();
  if (n == 1) {
    x[0] = {0.0, 0.0};
    return res;
  }
  project(x, exec);
  double v = kernels::objective(adj, x, exec);
  res.history.push_back(v);

  double max_strength = 0.0;
  for (const auto& list : adj) {
    double w = 0.0;
    for (const auto& [j, s] : list) w += s;
    max_strength = std::max(max_strength, w);
  }
  const double initial_step = 1.0 / (4.0 * max_strength);
  double step = initial_step;

  std::vector<Point> grad_v(n), grad_d(n), g(n), g_prev(n), x_prev(n), trial(n);
  res.converged = false;
  bool have_gradient = false, have_previous = false;
  int calm = 0;
  while (res.iterations < max_iter) {
    if (!have_gradient) {
      // Gradient of V / D^2 at D = 1.
      kernels::objective_gradient(adj, x, grad_v, exec);
      kernels::mean_distance_gradient(x, grad_d, exec);
      for (std::size_t i = 0; i < n; ++i) {
        g[i].x = grad_v[i].x - 2.0 * v * grad_d[i].x;
        g[i].y = grad_v[i].y - 2.0 * v * grad_d[i].y;
      }
      have_gradient = true;
      if (have_previous) {
        // Barzilai-Borwein proposal from the last accepted move.
        double ss = 0.0, sy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double sx = x[i].x - x_prev[i].x, sy_ = x[i].y - x_prev[i].y;
          ss += sx * sx + sy_ * sy_;
          sy += sx * (g[i].x - g_prev[i].x) + sy_ * (g[i].y - g_prev[i].y);
        }
        if (sy > 0.0 && std::isfinite(ss / sy)) step = std::clamp(ss / sy, initial_step * 1e-6, initial_step * 1e6);
      }
    }
    ++res.iterations;
    for (std::size_t i = 0; i < n; ++i) trial[i] = {x[i].x - step * g[i].x, x[i].y - step * g[i].y};
    bool feasible = true;
    try {
      project(trial, exec);
    } catch (const ConfigError&) {
      feasible = false;
    }
    const double v_trial = feasible ? kernels::objective(adj, trial, exec) : std::numeric_limits<double>::infinity();
    if (v_trial < v) {
      const double relative = (v - v_trial) / v;
      x_prev = x;
      g_prev = g;
      have_previous = true;
      x.swap(trial);
      v = v_trial;
      res.history.push_back(v);
      have_gradient = false;
      step *= 1.5;
      calm = relative < tol ? calm + 1 : 0;
      if (calm >= kCalmSteps) {
        res.converged = true;
        break;
      }
    } else {
      step *= 0.5;
      if (step < initial_step * 1e-20) {
        res.converged = true;  // no descent direction left at this precision
        break;
      }
    }
  }
  res.objective = v;
  return res;
}

}  // namespace

MapLayout layout(const SimilarityMatrix& sim, std::uint64_t seed, int max_iter, double tol, Execution exec) {
  const std::size_t n = sim.size();
  if (n == 0) throw ConfigError("layout needs at least one term");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  for (const auto& e : sim.edges())
    if (!std::isfinite(e.s)) throw ConfigError("non-finite similarity");

  MapLayout out;
  out.positions.resize(n);
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5; };
  for (auto& p : out.positions) {
    p.x = uniform();
    p.y = uniform();
  }
  if (n == 1) {
    out.positions[0] = {0.0, 0.0};
    out.converged = true;
    return out;
  }

  // Connected components, largest first, ties by smallest member.
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    std::vector<std::size_t> members{start};
    comp[start] = static_cast<int>(components.size());
    for (std::size_t k = 0; k < members.size(); ++k)
      for (const auto& [j, s] : sim.neighbors(members[k]))
        if (s > 0.0 && comp[j] < 0) {
          comp[j] = comp[start];
          members.push_back(j);
        }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  std::stable_sort(components.begin(), components.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });

  out.converged = true;
  std::vector<std::vector<Point>> placed;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& members = components[c];
    std::vector<std::size_t> local(n, n);
    for (std::size_t a = 0; a < members.size(); ++a) local[members[a]] = a;
    kernels::Adjacency adj(members.size());
    std::vector<Point> x(members.size());
    for (std::size_t a = 0; a < members.size(); ++a) {
      x[a] = out.positions[members[a]];
      for (const auto& [j, s] : sim.neighbors(members[a]))
        if (s > 0.0) adj[a].emplace_back(local[j], s);
    }
    ComponentResult r = optimize(adj, x, max_iter, tol, exec);
    out.iterations_used += r.iterations;
    out.converged = out.converged && r.converged;
    if (c == 0) out.objective_history = std::move(r.history);
    placed.push_back(std::move(x));
  }

  if (components.size() == 1) {
    out.positions = std::move(placed[0]);
  } else {
    const std::size_t cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(components.size()))));
    double cell_w = 0.0, cell_h = 0.0;
    std::vector<std::pair<Point, Point>> boxes;
    for (const auto& x : placed) {
      Point lo{x[0].x, x[0].y}, hi = lo;
      for (const auto& p : x) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
      }
      boxes.emplace_back(lo, hi);
      cell_w = std::max(cell_w, hi.x - lo.x);
      cell_h = std::max(cell_h, hi.y - lo.y);
    }
    cell_w += 2.0;
    cell_h += 2.0;
    for (std::size_t c = 0; c < components.size(); ++c) {
      const double ox = static_cast<double>(c % cols) * cell_w - boxes[c].first.x;
      const double oy = -static_cast<double>(c / cols) * cell_h - boxes[c].first.y;
      for (std::size_t a = 0; a < components[c].size(); ++a)
        out.positions[components[c][a]] = {placed[c][a].x + ox, placed[c][a].y + oy};
    }
    project(out.positions, exec);
  }
  out.objective = layout_objective(sim, out.positions);
  return out;
}

}  // namespace kwmap
