// Acceptance run: one PASS/FAIL line per criterion with its tolerance and time limit.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "ramsey0/colorers.hpp"
#include "ramsey0/coloring.hpp"
#include "ramsey0/copies.hpp"
#include "ramsey0/corpus.hpp"
#include "ramsey0/decide.hpp"
#include "ramsey0/density.hpp"
#include "ramsey0/experiments.hpp"
#include "ramsey0/growseq.hpp"
#include "ramsey0/hypergraph.hpp"

using namespace ramsey0;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string rat(const Rational& q) {
  return q.denominator() == 1 ? std::to_string(q.numerator()) : to_string(q);
}

// Copies of F in G as sets of host edge ids, by trying every injective vertex map.
std::size_t brute_copy_count(const Hypergraph& g, const Hypergraph& f) {
  const Vertex n = g.num_vertices(), k = f.num_vertices();
  if (k > n) return 0;
  std::set<std::vector<EdgeId>> found;
  std::vector<Vertex> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + k, true);
  do {
    std::vector<Vertex> chosen;
    for (Vertex v = 0; v < n; ++v) {
      if (mask[v]) chosen.push_back(v);
    }
    do {
      std::vector<EdgeId> ids;
      bool ok = true;
      for (EdgeId e = 0; e < f.num_edges() && ok; ++e) {
        std::vector<Vertex> image;
        for (auto v : f.edge(e)) image.push_back(chosen[v]);
        std::sort(image.begin(), image.end());
        auto id = g.find_edge(image);
        ok = id.has_value();
        if (ok) ids.push_back(*id);
      }
      if (ok) {
        std::sort(ids.begin(), ids.end());
        found.insert(ids);
      }
    } while (std::next_permutation(chosen.begin(), chosen.end()));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return found.size();
}

Hypergraph random_graph(std::mt19937_64& rng, Vertex n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::vector<Vertex>> edges;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (coin(rng)) edges.push_back({a, b});
    }
  }
  return Hypergraph::from_edges(2, n, edges);
}

// Coloring of the listed edges (1-indexed tuples), one color per group.
Coloring from_groups(const Hypergraph& host, const std::vector<std::vector<std::vector<Vertex>>>& groups) {
  Coloring c;
  c.variant = Variant::bounded;
  c.r = 2;
  c.color.assign(host.num_edges(), kUncolored);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (auto e : groups[i]) {
      for (auto& v : e) --v;
      std::sort(e.begin(), e.end());
      c.color[*host.find_edge(e)] = static_cast<Color>(i);
    }
  }
  return c;
}

// No rainbow K_k^(l) inside a complete l-graph, checked over every k-subset of vertices.
bool no_rainbow_clique(const Hypergraph& host, const Coloring& c, Vertex k) {
  const int ell = host.uniformity();
  const Vertex n = host.num_vertices();
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + k, true);
  do {
    std::vector<Color> seen;
    for (EdgeId e = 0; e < host.num_edges(); ++e) {
      auto t = host.edge(e);
      if (std::all_of(t.begin(), t.end(), [&](Vertex v) { return mask[v]; })) seen.push_back(c.color[e]);
    }
    (void)ell;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) == seen.end()) return false;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return true;
}

bool contains(const Hypergraph& g, const Hypergraph& f) { return enumerate_copies(g, f).num_copies() > 0; }

bool witness_ok(const Hypergraph& g, const Hypergraph& f, const Decision& d, bool mono) {
  if (!d.witness) return false;
  const auto idx = enumerate_copies(g, f);
  if (!verify(g, *d.witness)) return false;
  return mono ? !find_monochromatic_copy(*d.witness, idx) : !find_rainbow_copy(*d.witness, idx);
}

Outcome criterion1() {
  std::vector<std::pair<Hypergraph, Rational>> cases{
      {complete_hypergraph(2, 4), Rational(5, 2)},
      {cycle_graph(4), Rational(3, 2)},
      {complete_hypergraph(3, 4), Rational(3)},
  };
  for (int ell = 2; ell <= 5; ++ell) cases.emplace_back(complete_hypergraph(ell, ell + 1), Rational(ell));
  for (auto [ell, r] : {std::pair{2, 5}, {3, 5}, {4, 6}}) {
    const auto edges = static_cast<std::int64_t>(*binomial(r, ell));
    cases.emplace_back(complete_hypergraph(ell, r), Rational(edges - 1, r - ell));
  }
  std::size_t ok = 0;
  std::string bad;
  for (const auto& [g, want] : cases) {
    const auto got = max_ell_density(g).value;
    if (got == want) {
      ++ok;
    } else {
      bad += " got " + rat(got) + " want " + rat(want);
    }
  }
  return {ok == cases.size(), std::to_string(ok) + "/" + std::to_string(cases.size()) + " exact" + bad};
}

Outcome criterion2() {
  using G = std::vector<std::vector<std::vector<Vertex>>>;
  const auto k6 = complete_hypergraph(2, 6);
  const G fig2{{{1, 2}, {1, 3}}, {{1, 4}, {1, 5}}, {{1, 6}, {5, 6}}, {{2, 4}, {2, 6}}, {{3, 4}, {3, 6}},
               {{3, 5}, {2, 5}}, {{4, 5}, {4, 6}}, {{2, 3}}};
  auto c6 = from_groups(k6, fig2);
  const auto k5 = complete_hypergraph(3, 5);
  const G pairs3{{{1, 2, 5}, {1, 3, 5}}, {{1, 4, 5}, {3, 4, 5}}, {{2, 4, 5}, {1, 2, 4}}, {{2, 3, 4}, {2, 3, 5}},
                 {{1, 2, 3}, {1, 3, 4}}};
  auto c5 = from_groups(k5, pairs3);
  const bool k6_ok = c6.total() && verify(k6, c6) && no_rainbow_clique(k6, c6, 4) &&
                     !find_rainbow_copy(c6, enumerate_copies(k6, complete_hypergraph(2, 4)));
  const bool k5_ok = c5.total() && verify(k5, c5) && no_rainbow_clique(k5, c5, 4) &&
                     !find_rainbow_copy(c5, enumerate_copies(k5, complete_hypergraph(3, 4)));
  // The built-in colorings are the same partitions.
  auto same = [](Coloring a, Coloring b) {
    normalize_colors(a);
    normalize_colors(b);
    return a.color == b.color;
  };
  const bool corpus_ok = same(c6, explicit_coloring("k6-fig2-coloring")->coloring) &&
                         same(c5, explicit_coloring("k5-3-no-rainbow-k4-3")->coloring);
  return {k6_ok && k5_ok && corpus_ok, std::string("K6 ") + (k6_ok ? "ok" : "FAILED") + ", K5^(3) " +
                                           (k5_ok ? "ok" : "FAILED") + ", corpus " + (corpus_ok ? "matches" : "differs")};
}

Outcome criterion3() {
  SearchLimits serial;
  serial.parallel = false;
  const auto a = decide_anti_ramsey_bounded(complete_hypergraph(2, 4), complete_hypergraph(2, 3), 2, serial);
  SearchLimits plain = serial;
  plain.counting_bound = false;
  const auto b = decide_anti_ramsey_bounded(c6_3plus(), cycle_graph(4), 2, plain);
  const auto c = decide_anti_ramsey_bounded(k5_3_doubled(), complete_hypergraph(3, 4), 2, plain);
  const auto c_bound = decide_anti_ramsey_bounded(k5_3_doubled(), complete_hypergraph(3, 4), 2, serial);
  const bool pass = a.holds() && b.holds() && b.stats.leaves <= 945 && c.holds() && c.stats.leaves <= 2'027'025 &&
                    c_bound.holds();
  std::ostringstream d;
  d << "K4/K3 " << to_string(a.arrow) << "; C6^3+/C4 " << to_string(b.arrow) << " (" << b.stats.leaves
    << " pairings <= 945, " << b.stats.nodes << " nodes); doubled K5^(3) " << to_string(c.arrow) << " ("
    << c.stats.leaves << " pairings <= 2027025, " << c.stats.nodes << " nodes, " << c.stats.seconds
    << " s single-threaded; " << c_bound.stats.nodes << " nodes with the counting bound)";
  return {pass, d.str()};
}

Outcome criterion4() {
  GenerateOptions o;
  o.max_vertices = 6;
  o.density_cap = Rational(5, 2);
  const auto graphs = generate_connected(o);
  const auto k4 = complete_hypergraph(2, 4);
  std::size_t ok = 0;
  for (const auto& g : graphs) {
    const auto d = decide_anti_ramsey_bounded(g, k4, 2);
    if (d.arrow == Arrow::fails && witness_ok(g, k4, d, false)) ++ok;
  }
  return {ok == graphs.size() && !graphs.empty(),
          std::to_string(ok) + "/" + std::to_string(graphs.size()) + " classes not arrowing, witnesses verified"};
}

Outcome criterion5() {
  GenerateOptions o;
  o.max_vertices = 9;
  o.max_edges = 8;
  const auto graphs = generate_connected(o);
  const auto k3 = complete_hypergraph(2, 3);
  const auto k4 = complete_hypergraph(2, 4);
  std::size_t agree = 0, arrows = 0;
  for (const auto& g : graphs) {
    const auto d = decide_anti_ramsey_bounded(g, k3, 2);
    arrows += d.holds();
    if (d.arrow != Arrow::undecided && d.holds() == contains(g, k4)) ++agree;
  }
  return {agree == graphs.size(), std::to_string(agree) + "/" + std::to_string(graphs.size()) +
                                      " classes agree (" + std::to_string(arrows) + " arrow, all containing K4)"};
}

Outcome criterion6() {
  GenerateOptions o;
  o.max_vertices = 6;
  o.density_cap = Rational(3, 2);
  const auto c4 = cycle_graph(4);
  std::size_t total = 0, ok = 0;
  for (const auto& g : generate_connected(o)) {
    if (max_density(g).value >= Rational(3, 2)) continue;
    ++total;
    const auto d = decide_anti_ramsey_bounded(g, c4, 2);
    if (d.arrow == Arrow::fails && witness_ok(g, c4, d, false)) ++ok;
  }
  const bool top = decide_anti_ramsey_bounded(c6_3plus(), c4, 2).holds() &&
                   max_density(c6_3plus()).value == Rational(3, 2);
  return {ok == total && total > 0 && top, std::to_string(ok) + "/" + std::to_string(total) +
                                               " classes with m < 3/2 not arrowing; C6^3+ (m = 3/2) " +
                                               (top ? "arrows" : "does NOT arrow")};
}

Outcome criterion7() {
  const auto k3 = complete_hypergraph(2, 3);
  const auto k6 = decide_ramsey(complete_hypergraph(2, 6), k3, 2);
  const auto k5 = decide_ramsey(complete_hypergraph(2, 5), k3, 2);
  const bool k5_ok = k5.arrow == Arrow::fails && witness_ok(complete_hypergraph(2, 5), k3, k5, true);
  std::mt19937_64 rng(20240915);
  std::size_t ok = 0, max_edges = 0;
  const std::size_t samples = 100;
  for (std::size_t i = 0; i < samples; ++i) {
    // 14 random edges of K_n, n in 6..8; K6 minus an edge is among the candidates.
    const Vertex n = 6 + static_cast<Vertex>(i % 3);
    auto all = complete_hypergraph(2, n).edge_list();
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(14 - (i % 5 == 4 ? i % 4 : 0));
    const auto g = Hypergraph::from_edges(2, n, all);
    max_edges = std::max(max_edges, g.num_edges());
    const auto d = decide_ramsey(g, k3, 2);
    if (d.arrow == Arrow::fails && witness_ok(g, k3, d, true)) ++ok;
  }
  return {k6.holds() && k5_ok && ok == samples,
          std::string("K6 ") + to_string(k6.arrow) + ", K5 " + to_string(k5.arrow) + (k5_ok ? " (witness ok)" : "") +
              ", " + std::to_string(ok) + "/" + std::to_string(samples) + " sampled graphs with <= " +
              std::to_string(max_edges) + " edges not Ramsey"};
}

struct PipelineRuns {
  std::vector<ExperimentReport> reports;
};

Outcome criterion8(PipelineRuns& runs) {
  PipelineOptions bounded;
  bounded.check_claims = true;
  bool pass = true;
  std::ostringstream d;
  for (Vertex n : {Vertex{5000}, Vertex{20000}}) {
    SampleSpec spec{2, n, ProbabilitySpec::parse("1/10*n^(-2/5)"), 1000 + n};
    auto r = run_pipeline(spec, complete_hypergraph(2, 4), bounded, 20, "K4");
    std::size_t blocks = 0;
    bool verified = true;
    for (const auto& s : r.samples) {
      blocks += s.blocks;
      verified = verified && s.verified && s.replay_error.empty();
    }
    const bool ok = r.successes() == 20 && verified && r.max_block_density() <= Rational(5, 2) &&
                    r.max_block_vertices() <= 30;
    pass = pass && ok;
    d << "K4 n=" << n << ": " << r.successes() << "/20, " << blocks << " blocks, max v " << r.max_block_vertices()
      << ", max m " << rat(r.max_block_density()) << "; ";
    runs.reports.push_back(std::move(r));
  }
  PipelineOptions ramsey;
  ramsey.variant = PipelineVariant::ramsey;
  ramsey.check_claims = true;
  SampleSpec spec{3, 3000, ProbabilitySpec::parse("1/10*n^(-1/3)"), 3000};
  auto r = run_pipeline(spec, complete_hypergraph(3, 4), ramsey, 10, "K4-3");
  std::size_t blocks = 0;
  bool verified = true;
  for (const auto& s : r.samples) {
    blocks += s.blocks;
    verified = verified && s.verified && s.replay_error.empty();
  }
  pass = pass && r.successes() == 10 && verified;
  d << "K4^(3) n=3000: " << r.successes() << "/10 verified, " << blocks << " blocks";
  runs.reports.push_back(std::move(r));
  return {pass, d.str()};
}

Outcome criterion9(const PipelineRuns& runs) {
  std::size_t blocks = 0, skipped = 0, violations = 0;
  for (const auto& r : runs.reports) {
    for (const auto& s : r.samples) {
      blocks += s.claim_blocks;
      skipped += s.claim_skipped;
      violations += s.claim_violations.size();
    }
  }
  std::size_t corpus = 0;
  for (const auto& [b, f] : {std::pair{complete_hypergraph(2, 4), complete_hypergraph(2, 3)},
                             std::pair{c6_3plus(), cycle_graph(4)}}) {
    violations += check_claims(build_grow_sequence(b, f)).violations.size();
    ++corpus;
  }
  // Blocks from a run at c = 1, where blocks actually form (beyond the criterion's set).
  PipelineOptions o;
  o.check_claims = true;
  const auto extra = run_pipeline({2, 1000, ProbabilitySpec::parse("n^(-2/5)"), 99}, complete_hypergraph(2, 4), o, 5);
  std::size_t extra_blocks = 0;
  for (const auto& s : extra.samples) {
    extra_blocks += s.claim_blocks;
    skipped += s.claim_skipped;
    violations += s.claim_violations.size();
  }
  return {violations == 0 && skipped == 0,
          std::to_string(blocks) + " pipeline blocks + " + std::to_string(corpus) + " corpus blocks + " +
              std::to_string(extra_blocks) + " blocks at c = 1 (n = 1000): " + std::to_string(violations) +
              " violations, " + std::to_string(skipped) + " skipped"};
}

Outcome criterion10() {
  std::mt19937_64 rng(777);
  std::size_t density_ok = 0;
  const std::size_t density_total = 500;
  for (std::size_t i = 0; i < density_total; ++i) {
    const Vertex n = 2 + static_cast<Vertex>(i % 7);
    const auto g = random_graph(rng, n, 0.2 + 0.6 * static_cast<double>(i % 10) / 10.0);
    if (g.num_edges() == 0 || max_density(g).value == max_density_exhaustive(g).value) ++density_ok;
  }
  const std::vector<Hypergraph> patterns{complete_hypergraph(2, 3), cycle_graph(4),  path_graph(4),
                                         complete_hypergraph(2, 4), cycle_graph(5),  path_graph(3),
                                         Hypergraph::from_edges(2, 4, {{0, 1}, {0, 2}, {0, 3}}),
                                         Hypergraph::from_edges(2, 4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}})};
  std::size_t copies_ok = 0;
  const std::size_t copies_total = 200;
  for (std::size_t i = 0; i < copies_total; ++i) {
    const auto& f = patterns[i % patterns.size()];
    const auto g = random_graph(rng, 4 + static_cast<Vertex>(i % 5), 0.55);
    if (enumerate_copies(g, f).num_copies() == brute_copy_count(g, f)) ++copies_ok;
  }
  return {density_ok == density_total && copies_ok == copies_total,
          "max_density " + std::to_string(density_ok) + "/" + std::to_string(density_total) + ", copy counts " +
              std::to_string(copies_ok) + "/" + std::to_string(copies_total)};
}

}  // namespace

int main() {
  PipelineRuns runs;
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "density closed forms (exact)", 1, criterion1},
      {2, "Figure 2 and K5^(3) colorings (exact)", 1, criterion2},
      {3, "obstruction decisions (exact)", 600, criterion3},
      {4, "connected graphs, v <= 6, m <= 5/2 do not arrow K4 (2-bounded)", 900, criterion4},
      {5, "graphs with <= 8 edges: arrow K3 iff K4 inside", 900, criterion5},
      {6, "C4: m < 3/2 never arrows, C6^3+ arrows", 600, criterion6},
      {7, "Ramsey sanity for K3", 300, criterion7},
      {8, "pipeline below the threshold", 1800, [&] { return criterion8(runs); }},
      {9, "grow-sequence claims", 300, [&] { return criterion9(runs); }},
      {10, "oracle equivalence", 600, criterion10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("criterion %2d %s  %s: %s [%.2f s, limit %.0f s%s]\n", c.id, pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : ", EXCEEDED");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
