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

// Writes the bundled fixture corpora. Output depends only on the preset and
// seed, so the files under data/ can be regenerated byte for byte.

#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kwmap/corpus.hpp"
#include "kwmap/error.hpp"

using namespace kwmap;

namespace {

using Vocab = std::vector<std::string>;

class Writer {
 public:
  explicit Writer(std::uint64_t seed) : rng_(seed) {}

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  // Skewed pick: low indices are frequent, the tail is rare.
  const std::string& skewed(const Vocab& v) {
    const std::size_t a = pick(v.size()), b = pick(v.size());
    return v[std::min(a, b)];
  }

  std::string sentence(const Vocab& terms, std::size_t n_terms) {
    static const Vocab glue = {"and", "of", "in", "for", "with", "on", "to", "from", "by", "as"};
    std::string s;
    for (std::size_t k = 0; k < n_terms; ++k) {
      if (k > 0) s += ' ' + glue[pick(glue.size())] + " the ";
      s += skewed(terms);
    }
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s + '.';
  }

  std::string paragraph(const Vocab& terms, std::size_t sentences, std::size_t per_sentence) {
    std::string p;
    for (std::size_t k = 0; k < sentences; ++k) {
      if (k > 0) p += ' ';
      p += sentence(terms, per_sentence);
    }
    return p;
  }

  // Mixes two vocabularies, drawing from `b` with probability share_b.
  Vocab blend(const Vocab& a, const Vocab& b, double share_b) {
    Vocab out;
    for (std::size_t k = 0; k < 12; ++k) {
      const bool from_b = static_cast<double>(pick(1000)) < share_b * 1000.0;
      out.push_back(from_b ? skewed(b) : skewed(a));
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

struct Preset {
  Vocab cited;
  Vocab citing;
  std::size_t n_cited;
  std::size_t n_citing;
  double citing_disjoint_share;
};

Preset desk() {
  return {{"journal impact factor", "impact factor", "citation index", "citation analysis", "science citation index",
           "journal", "citation", "bibliometrics", "scientific literature", "information retrieval",
           "citation frequency", "journal ranking", "research evaluation", "historiography", "indexing"},
          {"h index", "altmetrics", "research assessment", "peer review", "university ranking", "social media",
           "open access", "scholarly communication", "citation", "journal impact factor", "evaluation metric",
           "research policy", "funding agency", "bibliometrics"},
          24, 48, 0.7};
}

Preset planted() {
  return {{"alpha lattice", "beta manifold", "gamma kernel", "delta spectrum", "epsilon operator", "zeta sequence",
           "eta boundary", "theta flux", "iota tensor", "kappa field", "lambda orbit", "mu invariant"},
          // Seven of ten citing terms never appear in the cited vocabulary.
          {"ocean current", "forest canopy", "river delta", "desert dune", "glacier melt", "coral reef",
           "volcanic ash", "alpha lattice", "beta manifold", "gamma kernel"},
          30, 60, 1.0};
}

std::string doi(const std::string& id) { return *normalize_doi("10.5555/" + id); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Write a bundled fixture corpus as JSONL to stdout"};
  std::string preset_name = "desk";
  std::uint64_t seed = 7;
  app.add_option("--preset", preset_name, "desk | planted")->check(CLI::IsMember({"desk", "planted"}));
  app.add_option("--seed", seed, "random seed");
  CLI11_PARSE(app, argc, argv);

  const Preset p = preset_name == "desk" ? desk() : planted();
  Writer w(seed);
  DocumentSet docs;
  std::vector<CitationContext> contexts;
  std::vector<std::string> cited_ids;

  for (std::size_t k = 0; k < p.n_cited; ++k) {
    Document d;
    d.id = "P" + std::to_string(k + 1);
    d.doi = doi(d.id);
    d.title = w.sentence(p.cited, 2);
    d.abstract = w.paragraph(p.cited, 3, 3);
    d.year = 1960 + static_cast<int>(k);
    d.set_tag = SetTag::cited;
    cited_ids.push_back(d.id);
    docs.add(std::move(d));
  }
  for (std::size_t k = 0; k < p.n_citing; ++k) {
    Document d;
    d.id = "C" + std::to_string(k + 1);
    // Two citing records are the same papers as cited records (shared DOI).
    d.doi = k < 2 ? doi(cited_ids[k]) : doi(d.id);
    const Vocab mix = w.blend(p.cited, p.citing, p.citing_disjoint_share);
    d.title = w.sentence(mix, 2);
    if (k % 5 != 4) d.abstract = w.paragraph(mix, 3, 3);
    d.year = 2000 + static_cast<int>(k % 20);
    d.set_tag = SetTag::citing;
    // One to three cited papers per citer, some cited more than once.
    const std::size_t n_refs = 1 + w.pick(3);
    for (std::size_t r = 0; r < n_refs; ++r) {
      const std::string& cited = cited_ids[w.pick(cited_ids.size())];
      const int times = w.pick(4) == 0 ? 2 : 1;
      for (int t = 0; t < times; ++t) {
        int ordinal = 1;
        for (const auto& c : contexts)
          if (c.citing_id == d.id && c.cited_id == cited) ++ordinal;
        contexts.push_back({d.id, cited, w.paragraph(p.cited, 1 + w.pick(2), 3), ordinal});
      }
    }
    docs.add(std::move(d));
  }
  std::cout << format_corpus(docs, contexts);
  return 0;
}
