#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"
#include "ramsey0/canon.hpp"
#include "ramsey0/corpus.hpp"
#include "ramsey0/errors.hpp"
#include "ramsey0/hypergraph.hpp"

using namespace ramsey0;

namespace {

Hypergraph relabel(const Hypergraph& g, const std::vector<Vertex>& perm) {
  std::vector<std::vector<Vertex>> edges;
  for (const auto& e : g.edge_list()) {
    std::vector<Vertex> f;
    for (auto v : e) f.push_back(perm[v]);
    edges.push_back(f);
  }
  return Hypergraph::from_edges(g.uniformity(), g.num_vertices(), edges);
}

// Reference isomorphism test: try every bijection.
bool brute_isomorphic(const Hypergraph& a, const Hypergraph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges() ||
      a.uniformity() != b.uniformity()) {
    return false;
  }
  std::vector<Vertex> perm(a.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (relabel(a, perm) == b) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

std::vector<std::vector<Vertex>> brute_automorphisms(const Hypergraph& g) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> perm(g.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (relabel(g, perm) == g) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Hypergraph random_graph(std::mt19937_64& rng, int ell, Vertex n, double p) {
  auto full = complete_hypergraph(ell, n);
  std::bernoulli_distribution coin(p);
  std::vector<Vertex> flat;
  for (EdgeId e = 0; e < full.num_edges(); ++e) {
    if (coin(rng)) flat.insert(flat.end(), full.edge(e).begin(), full.edge(e).end());
  }
  return Hypergraph::from_sorted_flat(ell, n, flat);
}

}  // namespace

TEST_CASE("construction validates and canonicalizes") {
  auto g = Hypergraph::from_edges(2, 4, {{3, 1}, {0, 2}, {1, 0}});
  CHECK(g.edge_list() == std::vector<std::vector<Vertex>>{{0, 1}, {0, 2}, {1, 3}});
  CHECK_THROWS_AS(Hypergraph::from_edges(2, 3, {{0, 3}}), InputError);
  CHECK_THROWS_AS(Hypergraph::from_edges(2, 3, {{1, 1}}), InputError);
  CHECK_THROWS_AS(Hypergraph::from_edges(2, 3, {{0, 1}, {1, 0}}), InputError);
  CHECK_THROWS_AS(Hypergraph::from_edges(3, 4, {{0, 1}}), InputError);
  CHECK_THROWS_AS(Hypergraph::from_sorted_flat(2, 3, {1, 2, 0, 1}), InputError);
}

TEST_CASE("induced and edge-induced subgraphs") {
  auto k4 = complete_hypergraph(2, 4);
  std::vector<Vertex> s{0, 1, 2};
  CHECK(are_isomorphic(induced_subgraph(k4, s).graph, complete_hypergraph(2, 3)));
  std::vector<Vertex> one{0};
  auto single = induced_subgraph(k4, one).graph;
  CHECK(single.num_vertices() == 1);
  CHECK(single.num_edges() == 0);
  std::vector<Vertex> bad{7};
  CHECK_THROWS_AS(induced_subgraph(k4, bad), InputError);

  // One bipartition class of C6^3+ is independent.
  auto c6 = c6_3plus();
  std::vector<Vertex> side{0, 3, 5};
  auto part = induced_subgraph(c6, side);
  CHECK(part.graph.num_vertices() == 3);
  CHECK(part.graph.num_edges() == 0);
  CHECK(part.to_original == side);

  std::vector<EdgeId> all(k4.num_edges());
  std::iota(all.begin(), all.end(), 0);
  CHECK(edge_induced_subgraph(k4, all).graph == k4);
  CHECK(edge_induced_subgraph(k4, {}).graph.num_vertices() == 0);
  std::vector<EdgeId> tri{0, 1, 3};  // 01 02 12
  auto t = edge_induced_subgraph(k4, tri).graph;
  CHECK(t == complete_hypergraph(2, 3));
  std::vector<EdgeId> invalid{6};
  CHECK_THROWS_AS(edge_induced_subgraph(k4, invalid), InputError);
}

TEST_CASE("c6-3plus is 3-regular and bipartite") {
  auto g = c6_3plus();
  CHECK(g.num_edges() == 9);
  for (Vertex v = 0; v < 6; ++v) CHECK(degree(g, v) == 3);
  // 2-coloring oracle by BFS.
  std::vector<int> side(6, -1);
  side[0] = 0;
  bool ok = true;
  for (int round = 0; round < 6; ++round) {
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      auto t = g.edge(e);
      if (side[t[0]] >= 0 && side[t[1]] < 0) side[t[1]] = 1 - side[t[0]];
      if (side[t[1]] >= 0 && side[t[0]] < 0) side[t[0]] = 1 - side[t[1]];
    }
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) ok = ok && side[g.edge(e)[0]] != side[g.edge(e)[1]];
  CHECK(ok);
  std::vector<std::vector<Vertex>> k33;
  for (Vertex a = 0; a < 3; ++a)
    for (Vertex b = 3; b < 6; ++b) k33.push_back({a, b});
  auto bip = Hypergraph::from_edges(2, 6, k33);
  CHECK(brute_isomorphic(g, bip));
  CHECK(are_isomorphic(g, bip));
}

TEST_CASE("degrees") {
  CHECK(degree(complete_hypergraph(2, 4), 2) == 3);
  CHECK(degree(complete_hypergraph(3, 5), 4) == 6);
  auto p = path_graph(3);
  CHECK(min_degree(p) == std::pair<Vertex, std::size_t>{0, 1});
  CHECK_THROWS_AS(min_degree(Hypergraph(2, 0)), InputError);
}

TEST_CASE("links") {
  auto k53 = complete_hypergraph(3, 5);
  auto l = link(k53, 2);
  CHECK(l.uniformity() == 2);
  std::vector<Vertex> rest{0, 1, 3, 4};
  CHECK(are_isomorphic(induced_subgraph(l, rest).graph, complete_hypergraph(2, 4)));
  CHECK(degree(l, 2) == 0);

  auto single = Hypergraph::from_edges(3, 3, {{0, 1, 2}});
  CHECK(link(single, 0).edge_list() == std::vector<std::vector<Vertex>>{{1, 2}});

  auto d = k5_3_doubled();
  CHECK(d.num_edges() == 16);
  for (Vertex v = 0; v < d.num_vertices(); ++v) CHECK(link(d, v).num_edges() == degree(d, v));

  CHECK_THROWS_AS(link(complete_hypergraph(2, 4), 0), UnsupportedError);
  CHECK_THROWS_AS(link(k53, 9), InputError);

  auto k54 = complete_hypergraph(4, 5);
  auto l2 = link2(k54, 0, 1);
  CHECK(l2.uniformity() == 2);
  CHECK(l2.num_edges() == 3);
  auto k64 = complete_hypergraph(4, 6);
  CHECK(link2(k64, 1, 4).num_edges() == 6);
  auto sparse = Hypergraph::from_edges(4, 6, {{0, 1, 2, 3}});
  CHECK(link2(sparse, 0, 5).num_edges() == 0);
  CHECK_THROWS_AS(link2(k54, 1, 1), InputError);
  auto l3 = link2(k53, 0, 1);
  CHECK(l3.uniformity() == 1);
  CHECK(l3.num_edges() == 3);
}

TEST_CASE("text round trip") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_graph(rng, 2 + trial % 3, 7, 0.4);
    CHECK(parse_hypergraph(serialize(g)) == g);
  }
  CHECK(parse_hypergraph("# comment\n2 3 2\n0 1 # trailing\n1 2\n").num_edges() == 2);
  CHECK_THROWS_AS(parse_hypergraph("2 3 2\n0 1\n"), InputError);
  CHECK_THROWS_AS(parse_hypergraph("2 3 1\n1 0\n"), InputError);
  CHECK_THROWS_AS(parse_hypergraph("2 3 1\n0 x\n"), InputError);
}

TEST_CASE("isomorphism basics") {
  CHECK(are_isomorphic(complete_hypergraph(2, 4), complete_hypergraph(2, 4)));
  CHECK_FALSE(are_isomorphic(complete_hypergraph(2, 4), cycle_graph(4)));
  CHECK(are_isomorphic(cycle_graph(6), relabel(cycle_graph(6), {3, 5, 0, 2, 4, 1})));
  // Same degree sequence, not isomorphic: C6 vs two triangles.
  auto two_triangles = Hypergraph::from_edges(2, 6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  CHECK_FALSE(are_isomorphic(cycle_graph(6), two_triangles));
}

TEST_CASE("canonical form agrees with brute-force isomorphism") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const int ell = trial % 3 == 2 ? 3 : 2;
    const Vertex n = 4 + static_cast<Vertex>(trial % 3);
    auto a = random_graph(rng, ell, n, 0.5);
    auto b = random_graph(rng, ell, n, 0.5);
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto a2 = relabel(a, perm);
    CHECK(canonical_form(a).form == canonical_form(a2).form);
    CHECK(are_isomorphic(a, a2));
    const bool iso = brute_isomorphic(a, b);
    CHECK(iso == (canonical_form(a).form == canonical_form(b).form));
    CHECK(iso == are_isomorphic(a, b));
    // The labeling reproduces the form.
    auto c = canonical_form(a);
    CHECK(relabel(a, c.labeling) == c.form.to_hypergraph());
  }
}

TEST_CASE("canonical form on highly symmetric graphs") {
  for (auto g : {complete_hypergraph(2, 8), cycle_graph(9), complete_hypergraph(3, 7), c6_3plus(),
                 k5_3_doubled()}) {
    std::vector<Vertex> perm(g.num_vertices());
    std::iota(perm.rbegin(), perm.rend(), 0);
    CHECK(canonical_form(g).form == canonical_form(relabel(g, perm)).form);
  }
}

TEST_CASE("automorphism counts and symmetry-breaking constraints") {
  CHECK(automorphism_count(complete_hypergraph(2, 5)) == doctest::Approx(120));
  CHECK(automorphism_count(cycle_graph(7)) == doctest::Approx(14));
  CHECK(automorphism_count(c6_3plus()) == doctest::Approx(72));
  CHECK(automorphism_count(path_graph(4)) == doctest::Approx(2));

  std::mt19937_64 rng(5);
  std::vector<Hypergraph> patterns{complete_hypergraph(2, 4), cycle_graph(5), c6_3plus(), path_graph(5),
                                   complete_hypergraph(3, 4)};
  for (int i = 0; i < 10; ++i) patterns.push_back(random_graph(rng, 2, 6, 0.5));
  for (const auto& f : patterns) {
    auto autos = brute_automorphisms(f);
    CHECK(automorphism_count(f) == doctest::Approx(static_cast<double>(autos.size())));
    auto cons = symmetry_breaking_constraints(f);
    // For every labeling pi exactly one automorphism sigma makes pi o sigma satisfy the constraints.
    std::vector<Vertex> pi(f.num_vertices());
    std::iota(pi.begin(), pi.end(), 0);
    int checked = 0;
    do {
      int hits = 0;
      for (const auto& sigma : autos) {
        bool ok = std::all_of(cons.begin(), cons.end(),
                              [&](auto c) { return pi[sigma[c.first]] < pi[sigma[c.second]]; });
        hits += ok;
      }
      CHECK(hits == 1);
      ++checked;
    } while (std::next_permutation(pi.begin(), pi.end()) && checked < 200);
  }
}

TEST_CASE("corpus names") {
  CHECK(named_graph("K6").num_edges() == 15);
  CHECK(named_graph("C7").num_edges() == 7);
  CHECK(named_graph("P3").num_edges() == 2);
  CHECK(named_graph("K5-3").num_edges() == 10);
  CHECK(named_graph("c6-3plus") == c6_3plus());
  CHECK_THROWS_AS(named_graph("Q5"), InputError);
  CHECK_THROWS_AS(named_graph("C2"), InputError);
}
