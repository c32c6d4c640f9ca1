#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "ramsey0/canon.hpp"
#include "ramsey0/copies.hpp"
#include "ramsey0/corpus.hpp"
#include "ramsey0/errors.hpp"

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

// Reference: every e(F)-subset of edges whose edge-induced graph is isomorphic to F.
std::vector<std::vector<EdgeId>> brute_copies(const Hypergraph& g, const Hypergraph& f) {
  std::vector<std::vector<EdgeId>> out;
  const std::size_t m = g.num_edges(), k = f.num_edges();
  if (k > m) return out;
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<EdgeId> chosen;
    for (EdgeId e = 0; e < m; ++e) {
      if (pick[e]) chosen.push_back(e);
    }
    auto sub = edge_induced_subgraph(g, chosen).graph;
    if (sub.num_vertices() == f.num_vertices() && are_isomorphic(sub, f)) out.push_back(chosen);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<EdgeId>> listed(const CopyIndex& idx) {
  std::vector<std::vector<EdgeId>> out;
  for (CopyId c = 0; c < idx.num_copies(); ++c) out.emplace_back(idx.copy(c).begin(), idx.copy(c).end());
  return out;
}

Hypergraph disjoint_k4s() {
  return Hypergraph::from_edges(2, 8, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                                       {4, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}});
}

}  // namespace

TEST_CASE("copy counts on known hosts") {
  auto k3 = complete_hypergraph(2, 3);
  CHECK(enumerate_copies(complete_hypergraph(2, 4), k3).num_copies() == 4);
  CHECK(enumerate_copies(c6_3plus(), cycle_graph(4)).num_copies() == 9);
  CHECK(enumerate_copies(k5_3_doubled(), complete_hypergraph(3, 4)).num_copies() == 9);
  CHECK_THROWS_AS(enumerate_copies(complete_hypergraph(3, 4), k3), InputError);
}

TEST_CASE("copy enumeration matches brute force") {
  std::mt19937_64 rng(17);
  std::vector<Hypergraph> patterns{complete_hypergraph(2, 3), cycle_graph(4), path_graph(4),
                                   Hypergraph::from_edges(2, 4, {{0, 1}, {0, 2}, {0, 3}}),
                                   Hypergraph::from_edges(2, 4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}),
                                   Hypergraph::from_edges(2, 4, {{0, 1}, {2, 3}})};
  for (int trial = 0; trial < 120; ++trial) {
    const auto& f = patterns[static_cast<std::size_t>(trial) % patterns.size()];
    auto g = random_graph(rng, 2, 4 + static_cast<Vertex>(trial % 5), 0.55);
    auto idx = enumerate_copies(g, f);
    CHECK(listed(idx) == brute_copies(g, f));
  }
  std::vector<Hypergraph> hyper{complete_hypergraph(3, 4), Hypergraph::from_edges(3, 5, {{0, 1, 2}, {2, 3, 4}}),
                                Hypergraph::from_edges(3, 5, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}),
                                Hypergraph::from_edges(3, 4, {{0, 1, 2}, {0, 1, 3}})};
  for (int trial = 0; trial < 40; ++trial) {
    const auto& f = hyper[static_cast<std::size_t>(trial) % hyper.size()];
    auto g = random_graph(rng, 3, 5 + static_cast<Vertex>(trial % 2), 0.35);
    CHECK(listed(enumerate_copies(g, f)) == brute_copies(g, f));
  }
}

TEST_CASE("serial and parallel enumeration agree") {
  std::mt19937_64 rng(23);
  auto host = std::make_shared<const Hypergraph>(random_graph(rng, 2, 60, 0.3));
  auto a = enumerate_copies(host, complete_hypergraph(2, 4));
  auto b = enumerate_copies_serial(host, complete_hypergraph(2, 4));
  CHECK(a.num_copies() > 0);
  CHECK(listed(a) == listed(b));
}

TEST_CASE("incidence is the exact inverse") {
  auto idx = enumerate_copies(c6_3plus(), cycle_graph(4));
  std::size_t total = 0;
  for (auto e : idx.covered_edges()) {
    for (auto c : idx.copies_of(e)) {
      auto copy = idx.copy(c);
      CHECK(std::find(copy.begin(), copy.end(), e) != copy.end());
      ++total;
    }
  }
  CHECK(total == idx.num_copies() * 4);
}

TEST_CASE("f-equivalence") {
  auto tri = complete_hypergraph(2, 3);
  auto one = enumerate_copies(tri, tri);
  CHECK(f_equivalent(one, 0, 2));
  auto k4 = enumerate_copies(complete_hypergraph(2, 4), tri);
  auto& g = k4.host();
  const Vertex a[2] = {0, 1}, b[2] = {2, 3};
  CHECK_FALSE(f_equivalent(k4, *g.find_edge(a), *g.find_edge(b)));
  auto path = Hypergraph::from_edges(2, 4, {{0, 1}, {2, 3}});
  auto none = enumerate_copies(path, tri);
  CHECK(f_equivalent(none, 0, 1));
}

TEST_CASE("closedness") {
  auto k3 = complete_hypergraph(2, 3);
  auto r = closedness(enumerate_copies(complete_hypergraph(2, 4), k3));
  CHECK(r.closed_edges.size() == 6);
  CHECK(r.closed_copies.size() == 4);
  CHECK(r.graph_closed);

  auto single = closedness(enumerate_copies(k3, k3));
  CHECK(single.closed_edges.empty());
  CHECK_FALSE(single.graph_closed);

  auto d = closedness(enumerate_copies(k5_3_doubled(), complete_hypergraph(3, 4)));
  CHECK(d.graph_closed);
  CHECK(d.closed_edges.size() == 16);

  // gamma(C4) = 1 = l - 1 on graphs, so equivalence is not an extra condition.
  CHECK(closedness(enumerate_copies(c6_3plus(), cycle_graph(4))).graph_closed);
  // A matching pattern has gamma = 0 < l - 1: equivalent edges are never closed.
  auto matching = Hypergraph::from_edges(2, 4, {{0, 1}, {2, 3}});
  auto c4 = closedness(enumerate_copies(cycle_graph(4), matching));
  CHECK(c4.closed_edges.empty());
}

TEST_CASE("block decomposition") {
  auto k3 = complete_hypergraph(2, 3);
  auto two = block_decomposition(enumerate_copies(disjoint_k4s(), k3));
  CHECK(two.blocks.size() == 2);
  CHECK(two.blocks[0].size() == 6);
  CHECK(two.blocks[1].size() == 6);

  auto shared = Hypergraph::from_edges(2, 7, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3},
                                              {3, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}});
  auto idx = enumerate_copies(shared, k3);
  auto bd = block_decomposition(idx);
  CHECK(bd.blocks.size() == 2);
  for (std::size_t b = 0; b < bd.blocks.size(); ++b) {
    CHECK(copy_structure_connected(idx, bd.blocks[b]));
    for (auto c : bd.block_copies[b]) {
      for (auto e : idx.copy(c)) CHECK(std::binary_search(bd.blocks[b].begin(), bd.blocks[b].end(), e));
    }
  }
  CHECK(block_decomposition(enumerate_copies(complete_hypergraph(2, 4), k3)).blocks.size() == 1);

  auto with_tail = Hypergraph::from_edges(2, 5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}});
  auto tail = block_decomposition(enumerate_copies(with_tail, k3));
  CHECK(tail.blocks.size() == 1);
  CHECK(tail.uncovered_edges.size() == 2);
}

TEST_CASE("is_block") {
  auto k3 = complete_hypergraph(2, 3);
  CHECK(is_block(complete_hypergraph(2, 4), k3));
  CHECK_FALSE(is_block(disjoint_k4s(), k3));
  CHECK(is_block(c6_3plus(), cycle_graph(4)));
  CHECK(is_block(k5_3_doubled(), complete_hypergraph(3, 4)));
}

TEST_CASE("blocks of random graphs pass the block checks") {
  std::mt19937_64 rng(31);
  auto k3 = complete_hypergraph(2, 3);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = random_graph(rng, 2, 9, 0.45);
    auto idx = enumerate_copies(g, k3);
    auto bd = block_decomposition(idx);
    std::size_t total = 0;
    for (const auto& b : bd.blocks) {
      total += b.size();
      CHECK(copy_structure_connected(idx, b));
    }
    CHECK(total + bd.uncovered_edges.size() == g.num_edges());
    if (closedness(idx).graph_closed) {
      for (const auto& b : bd.blocks) CHECK(is_block(edge_induced_subgraph(g, b).graph, k3));
    }
  }
}
