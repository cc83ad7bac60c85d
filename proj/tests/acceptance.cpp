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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"
#include "kwmap/cluster.hpp"
#include "kwmap/comparison.hpp"
#include "kwmap/export.hpp"
#include "kwmap/layout.hpp"
#include "kwmap/pipeline.hpp"
#include "support.hpp"

using namespace kwmap;
namespace fs = std::filesystem;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream why;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) files[fs::relative(e.path(), root).generic_string()] = read_text_file(e.path());
  return files;
}

PipelineConfig desk_config(const fs::path& out) {
  PipelineConfig c;
  c.corpus = (testing::data_dir() / "desk_corpus.jsonl").string();
  c.out = out.string();
  return c;
}

void protocol_defaults(Check& c) {
  const auto dir = testing::scratch_dir("acc-1");
  const std::string cmd = std::string("\"") + KWMAP_CLI_PATH + "\" pipeline --corpus \"" +
                          (testing::data_dir() / "desk_corpus.jsonl").string() + "\" --out \"" +
                          (dir / "o").string() + "\" > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  c.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, "pipeline exited with an error");
  if (!c.ok) return;
  const auto m = nlohmann::json::parse(read_text_file(dir / "o" / "manifest.json")).at("config");
  c.expect(m.at("min_occurrences") == 4, "min_occurrences != 4");
  c.expect(m.at("counting") == "binary", "counting != binary");
  c.expect(m.at("relevance_fraction") == 0.6, "relevance_fraction != 0.6");
}

void counting_oracle(Check& c) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200 && c.ok; ++trial) {
    const auto corpus = testing::random_corpus(rng, 10, 15);
    const Lexicon lex = build_lexicon(corpus.units, 1, {}, {}, WordSet{"and"});
    for (Counting mode : {Counting::binary, Counting::full}) {
      const auto net = count_cooccurrences(corpus.units, lex, mode);
      const auto oracle = testing::brute_pair_counts(corpus, mode);
      std::size_t nonzero = 0;
      for (std::size_t i = 0; i < net.size(); ++i)
        for (std::size_t j = i + 1; j < net.size(); ++j) {
          auto it = oracle.find({net.term(i).label, net.term(j).label});
          const std::int64_t want = it == oracle.end() ? 0 : it->second;
          nonzero += want > 0;
          c.expect(net.weight(i, j) == want, "count mismatch in trial " + std::to_string(trial));
        }
      c.expect(nonzero == net.edges().size(), "edge count mismatch in trial " + std::to_string(trial));
    }
  }
}

void selection_arithmetic(Check& c) {
  const std::array<std::size_t, 3> sizes{27, 184, 512};
  const std::array<std::size_t, 3> before{16, 110, 307};
  const std::array<std::size_t, 3> n_excluded{1, 13, 10};
  const std::array<std::size_t, 3> after{15, 97, 297};
  std::mt19937_64 rng(3);
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const std::size_t n = sizes[k];
    std::vector<std::pair<std::string, std::int64_t>> terms;
    std::vector<Edge> edges;
    for (std::size_t t = 0; t < n; ++t) {
      terms.emplace_back("term" + std::to_string(1000 + t), 4 + static_cast<std::int64_t>(rng() % 20));
      edges.push_back({t, (t + 1) % n, 1});
      if (edges.back().i > edges.back().j) std::swap(edges.back().i, edges.back().j);
    }
    const auto net = testing::make_network(terms, edges);
    std::vector<double> scores(n);
    for (auto& s : scores) s = static_cast<double>(rng() % 1000) / 100.0;
    const auto ranked = top_term_indices(net, scores, 0.6);
    c.expect(ranked.size() == before[k], "n=" + std::to_string(n) + ": kept " + std::to_string(ranked.size()));
    WordSet excl;
    for (std::size_t e = 0; e < n_excluded[k]; ++e) excl.insert(net.term(ranked[e * 3 % ranked.size()]).label);
    c.expect(excl.size() == n_excluded[k], "exclusion list has repeats");
    const auto sel = select_top_terms(net, scores, 0.6, excl);
    c.expect(sel.size() == after[k], "n=" + std::to_string(n) + ": final " + std::to_string(sel.size()));
    c.expect(sel.provenance().params.at("selected_before_exclusions") == std::to_string(before[k]),
             "provenance before-count");
  }
}

void clustering_optimality(Check& c) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const auto d = testing::random_dyadic_graph(rng, n, 0.3 + 0.1 * static_cast<double>(rng() % 6));
    const double gamma = 0.25 * static_cast<double>(1 + rng() % 6);
    bool has_edge = false;
    for (const auto& row : d)
      for (double v : row) has_edge = has_edge || v > 0;
    if (!has_edge) {
      --trial;
      continue;
    }
    const auto cl = cluster(testing::from_dense(d), gamma, static_cast<std::uint64_t>(trial), 10);
    const double best = testing::exhaustive_optimum(d, gamma);
    c.expect(testing::brute_quality(d, cl.assignment, gamma) == best && cl.quality == best,
             "graph " + std::to_string(trial) + " (n=" + std::to_string(n) + ") below the optimum");
  }
}

void clustering_degenerate(Check& c) {
  testing::Dense d(6, std::vector<double>(6, 0.0));
  for (std::size_t base : {0u, 3u})
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) d[base + i][base + j] = d[base + j][base + i] = 1.0;
  d[2][3] = d[3][2] = 0.1;
  const auto sim = testing::from_dense(d);
  const auto two = cluster(sim, 0.5, 42, 10);
  c.expect(two.assignment == std::vector<int>{1, 1, 1, 2, 2, 2}, "planted cliques not recovered");
  const auto single = cluster(sim, sim.max_value() * 1.0001, 42, 10);
  c.expect(single.n_clusters() == 6, "gamma above max s did not give singletons");
}

void layout_contracts(Check& c) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 3 + rng() % 30;
    std::vector<SimilarityEdge> edges;
    for (std::size_t i = 1; i < n; ++i) edges.push_back({rng() % i, i, 0.1 + static_cast<double>(rng() % 100) / 20.0});
    std::sort(edges.begin(), edges.end(), [](auto& a, auto& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); });
    const SimilarityMatrix sim(n, edges);
    const auto l = layout(sim, static_cast<std::uint64_t>(trial));
    c.expect(std::abs(mean_pairwise_distance(l.positions) - 1.0) < 1e-9, "constraint residual");
    for (std::size_t k = 1; k < l.objective_history.size(); ++k)
      c.expect(l.objective_history[k] <= l.objective_history[k - 1], "objective increased");
    const double th = 0.3 + trial;
    std::vector<Point> moved;
    for (const auto& p : l.positions)
      moved.push_back({std::cos(th) * p.x - std::sin(th) * p.y - 4.0, std::sin(th) * p.x + std::cos(th) * p.y + 2.5});
    c.expect(std::abs(layout_objective(sim, moved) - l.objective) < 1e-9, "objective not rigid-motion invariant");
  }
  const auto pair = layout(SimilarityMatrix(2, {{0, 1, 1.0}}), 42);
  c.expect(std::abs(testing::dist(pair.positions[0], pair.positions[1]) - 1.0) < 1e-9, "n = 2 distance");
  const auto tri = layout(SimilarityMatrix(3, {{0, 1, 2.0}, {0, 2, 2.0}, {1, 2, 2.0}}), 42);
  const double a = testing::dist(tri.positions[0], tri.positions[1]);
  const double b = testing::dist(tri.positions[1], tri.positions[2]);
  const double e = testing::dist(tri.positions[0], tri.positions[2]);
  c.expect(std::abs(a - b) < 1e-6 && std::abs(b - e) < 1e-6 && std::abs(a - e) < 1e-6, "triangle not equilateral");
}

void scale_invariance(Check& c) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 5 + rng() % 25;
    std::vector<std::pair<std::string, std::int64_t>> terms;
    for (std::size_t t = 0; t < n; ++t) terms.emplace_back("t" + std::to_string(t), 1);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng() % 3 == 0) edges.push_back({i, j, 1 + static_cast<std::int64_t>(rng() % 9)});
    if (edges.empty()) edges.push_back({0, 1, 1});
    const auto base = association_strength(testing::make_network(terms, edges));
    const auto base_cl = cluster(base, 1.0, 5, 10);
    for (std::int64_t k : {2, 7}) {
      auto scaled = edges;
      for (auto& e : scaled) e.count *= k;
      const auto sim = association_strength(testing::make_network(terms, scaled));
      c.expect(sim.edges() == base.edges(), "strengths changed under scaling by " + std::to_string(k));
      c.expect(cluster(sim, 1.0, 5, 10).assignment == base_cl.assignment, "partition changed");
    }
    // Scaling s and gamma together scales Q and keeps the argmax.
    std::vector<SimilarityEdge> doubled = base.edges();
    for (auto& e : doubled) e.s *= 2.0;
    const SimilarityMatrix sim2(base.size(), doubled);
    c.expect(quality(sim2, base_cl.assignment, 2.0) == 2.0 * quality(base, base_cl.assignment, 1.0), "Q not scaled");
    c.expect(cluster(sim2, 2.0, 5, 10).assignment == base_cl.assignment, "argmax moved under joint scaling");
  }
}

void triplet_ordering(Check& c) {
  PipelineConfig cfg;
  cfg.corpus = (testing::data_dir() / "planted_corpus.jsonl").string();
  const Corpus corpus = acquire_corpus(cfg);
  const WordLists lists = load_word_lists(cfg);
  const auto cited = build_network(units_for(corpus, UnitSource::title_abstract, SetTag::cited), cfg, lists);
  const auto citing = build_network(units_for(corpus, UnitSource::title_abstract, SetTag::citing), cfg, lists);
  const auto context = build_network(units_for(corpus, UnitSource::citation_context, SetTag::cited), cfg, lists);
  const auto r = triplet_report(cited.selected, citing.selected, context.selected);
  c.expect(r.jaccard[0][2] == term_set_similarity(cited.selected, context.selected), "report disagrees with metric");
  c.expect(r.jaccard_ordering_holds, "Jaccard ordering does not hold");
  c.expect(r.cosine_ordering_holds, "cosine ordering does not hold");
}

void determinism_round_trips(Check& c) {
  const auto a = testing::scratch_dir("acc-9a"), b = testing::scratch_dir("acc-9b");
  run_pipeline(desk_config(a));
  run_pipeline(desk_config(b));
  c.expect(tree(a) == tree(b), "outputs differ between identical runs");
  for (const char* label : {"cited", "citing", "context"}) {
    const auto dir = a / label;
    const auto net = import_network(dir / "network.txt", dir / "terms.txt");
    std::ostringstream n1, t1, m1;
    write_network(n1, net);
    write_terms(t1, net);
    c.expect(n1.str() == read_text_file(dir / "network.txt") && t1.str() == read_text_file(dir / "terms.txt"),
             "network re-export differs");
    const auto map = import_map(dir / "map.txt");
    write_map(m1, map);
    c.expect(m1.str() == read_text_file(dir / "map.txt"), "map re-export differs");
    c.expect(map.size() == net.size(), "map and network disagree");
  }
}

void frequency_table_format(Check& c) {
  const auto net = testing::make_network(
      {{"impact factor", 8}, {"journal", 17}, {"citation", 5}, {"impact", 11}, {"journal impact factor", 6}}, {});
  Clustering cl;
  cl.assignment = {1, 1, 2, 1, 1};
  const auto t = frequency_table(net, cl, 1, 3);
  const std::vector<std::pair<std::string, std::int64_t>> expected{{"journal", 17}, {"impact", 11}, {"impact factor", 8}};
  c.expect(t.rows == expected, "rows out of order");
}

struct Criterion {
  int number;
  const char* name;
  double limit_seconds;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "protocol defaults recorded in the manifest", 1.0, protocol_defaults},
      {2, "co-occurrence counts equal exhaustive pair enumeration", 5.0, counting_oracle},
      {3, "top-fraction and exclusion arithmetic", 1.0, selection_arithmetic},
      {4, "clustering reaches the exhaustive optimum", 30.0, clustering_optimality},
      {5, "clustering degenerate cases", 1.0, clustering_degenerate},
      {6, "layout contracts", 5.0, layout_contracts},
      {7, "scale invariance of strengths and partitions", 2.0, scale_invariance},
      {8, "triplet ordering on the planted corpus", 2.0, triplet_ordering},
      {9, "determinism and export round-trips", 2.0, determinism_round_trips},
      {10, "frequency table order", 1.0, frequency_table_format},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.limit_seconds)
      check.expect(false, "took " + std::to_string(secs) + " s, limit " + std::to_string(cr.limit_seconds) + " s");
    std::cout << (check.ok ? "PASS" : "FAIL") << "  criterion " << cr.number << ": " << cr.name << " ("
              << static_cast<int>(secs * 1000.0) << " ms)";
    if (!check.ok) std::cout << " -- " << check.why.str();
    std::cout << std::endl;
    failures += check.ok ? 0 : 1;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
