#include <algorithm>
#include <random>

#include "doctest.h"
#include "ramsey0/corpus.hpp"
#include "ramsey0/errors.hpp"
#include "ramsey0/growseq.hpp"

using namespace ramsey0;

namespace {

Hypergraph random_graph(std::mt19937_64& rng, int ell, Vertex n, double p) {
  auto full = complete_hypergraph(ell, n);
  std::bernoulli_distribution coin(p);
  std::vector<Vertex> flat;
  for (EdgeId e = 0; e < full.num_edges(); ++e) {
    if (coin(rng)) flat.insert(flat.end(), full.edge(e).begin(), full.edge(e).end());
  }
  return Hypergraph::from_sorted_flat(ell, n, flat);
}

void check_union(const GrowSequence& seq) {
  std::vector<bool> covered(seq.block().num_edges(), false);
  for (const auto& st : seq.steps) {
    for (auto e : st.edges) covered[e] = true;
  }
  CHECK(std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }));
}

}  // namespace

TEST_CASE("K4 with triangles") {
  auto seq = build_grow_sequence(complete_hypergraph(2, 4), complete_hypergraph(2, 3));
  // F1 attaches along one edge (regular); F2 then shares two edges (degenerate).
  REQUIRE(seq.length() == 2);
  CHECK(seq.steps[0].kind == StepKind::first);
  CHECK(seq.steps[0].inner.size() == 3);
  CHECK(is_regular(seq.steps[1].kind));
  CHECK(seq.steps[1].delta == 1);
  CHECK(seq.steps[2].kind == StepKind::degenerate);
  CHECK(seq.steps[2].delta <= 4 - 2 + 1);
  check_union(seq);
  auto report = check_claims(seq);
  CHECK(report.ok());
  CHECK(report.attachment_claim_checked);
}

TEST_CASE("C6^3+ with four-cycles") {
  auto seq = build_grow_sequence(c6_3plus(), cycle_graph(4));
  check_union(seq);
  CHECK(seq.steps.front().kind == StepKind::first);
  auto report = check_claims(seq);
  for (const auto& v : report.violations) MESSAGE(v);
  CHECK(report.ok());
}

TEST_CASE("non-blocks are rejected") {
  auto two = Hypergraph::from_edges(2, 8, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                                           {4, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}});
  CHECK_THROWS_AS(build_grow_sequence(two, complete_hypergraph(2, 3)), ContractError);
  CHECK_THROWS_AS(build_grow_sequence(complete_hypergraph(2, 3), complete_hypergraph(2, 3)), ContractError);
}

TEST_CASE("hypothesis check is soft unless requested") {
  auto tri_pendant = Hypergraph::from_edges(2, 4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
  CHECK_FALSE(satisfies_growth_hypotheses(tri_pendant));
  CHECK(satisfies_growth_hypotheses(complete_hypergraph(2, 3)));
  CHECK(satisfies_growth_hypotheses(cycle_graph(4)));
  CHECK(satisfies_growth_hypotheses(complete_hypergraph(3, 4)));
  GrowOptions strict;
  strict.require_hypotheses = true;
  CHECK_NOTHROW(build_grow_sequence(complete_hypergraph(2, 4), complete_hypergraph(2, 3), strict));
}

TEST_CASE("forged counters are detected") {
  auto seq = build_grow_sequence(complete_hypergraph(2, 5), complete_hypergraph(2, 3));
  REQUIRE(check_claims(seq).ok());
  auto forged = seq;
  forged.steps.back().fo += 1;
  CHECK_FALSE(check_claims(forged).ok());
  auto forged_delta = seq;
  forged_delta.steps[1].delta = 0;
  CHECK_FALSE(check_claims(forged_delta).ok());
  auto forged_kind = seq;
  forged_kind.steps[1].kind = StepKind::degenerate;
  CHECK_FALSE(check_claims(forged_kind).ok());
}

TEST_CASE("classification agrees with construction") {
  auto seq = build_grow_sequence(k5_3_doubled(), complete_hypergraph(3, 4));
  auto cls = classify_steps(seq);
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    CHECK(cls.kinds[i] == seq.steps[i].kind);
    CHECK(cls.delta[i] == seq.steps[i].delta);
    CHECK(cls.fo[i] == seq.steps[i].fo);
  }
  CHECK(cls.fully_open[0] == std::vector<std::size_t>{0});
  CHECK(check_claims(seq).ok());
}

TEST_CASE("blocks of random graphs satisfy every claim") {
  std::mt19937_64 rng(77);
  std::vector<Hypergraph> patterns{complete_hypergraph(2, 3), cycle_graph(4), complete_hypergraph(2, 4)};
  int blocks_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto& f = patterns[static_cast<std::size_t>(trial) % patterns.size()];
    auto g = random_graph(rng, 2, 10, 0.5);
    auto idx = enumerate_copies(g, f);
    for (const auto& b : block_decomposition(idx).blocks) {
      auto block = edge_induced_subgraph(g, b).graph;
      if (!is_block(block, f)) continue;
      ++blocks_seen;
      auto seq = build_grow_sequence(block, f);
      check_union(seq);
      auto report = check_claims(seq);
      for (const auto& v : report.violations) MESSAGE(v);
      CHECK(report.ok());
    }
  }
  CHECK(blocks_seen > 10);
}
