#include <algorithm>
#include <functional>
#include <random>

#include "doctest.h"
#include "ramsey0/canon.hpp"
#include "ramsey0/corpus.hpp"
#include "ramsey0/decide.hpp"
#include "ramsey0/density.hpp"
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
  return out;
}

bool rainbow_free(const std::vector<std::vector<EdgeId>>& copies, const std::vector<Color>& c) {
  for (auto& cp : copies) {
    std::vector<Color> cs;
    for (auto e : cp) cs.push_back(c[e]);
    std::sort(cs.begin(), cs.end());
    if (std::adjacent_find(cs.begin(), cs.end()) == cs.end()) return false;
  }
  return true;
}

bool mono_free(const std::vector<std::vector<EdgeId>>& copies, const std::vector<Color>& c) {
  return std::all_of(copies.begin(), copies.end(), [&](const std::vector<EdgeId>& cp) {
    return std::any_of(cp.begin(), cp.end(), [&](EdgeId e) { return c[e] != c[cp[0]]; });
  });
}

// No pruning: walks every set partition (restricted growth string) of the edges.
bool brute_arrow_partitions(const Hypergraph& g, const Hypergraph& f, bool proper, int r) {
  const auto copies = brute_copies(g, f);
  const std::size_t m = g.num_edges();
  std::vector<Color> c(m, 0);
  std::function<bool(std::size_t, Color)> avoid = [&](std::size_t i, Color used) -> bool {
    if (i == m) return rainbow_free(copies, c);
    for (Color k = 0; k <= used; ++k) {
      c[i] = k;
      bool ok = true;
      std::size_t size = 1;
      for (std::size_t j = 0; j < i && ok; ++j) {
        if (c[j] != k) continue;
        ++size;
        if (proper) {
          for (auto v : g.edge(static_cast<EdgeId>(i))) {
            auto ej = g.edge(static_cast<EdgeId>(j));
            if (std::find(ej.begin(), ej.end(), v) != ej.end()) ok = false;
          }
        }
      }
      if (!proper && size > static_cast<std::size_t>(r)) ok = false;
      if (ok && avoid(i + 1, std::max<Color>(used, k + 1))) return true;
    }
    return false;
  };
  return !avoid(0, 0);
}

bool brute_arrow_ramsey(const Hypergraph& g, const Hypergraph& f, int r) {
  const auto copies = brute_copies(g, f);
  const std::size_t m = g.num_edges();
  std::vector<Color> c(m, 0);
  for (;;) {
    if (mono_free(copies, c)) return false;
    std::size_t i = 0;
    while (i < m && c[i] == static_cast<Color>(r - 1)) c[i++] = 0;
    if (i == m) return true;
    ++c[i];
  }
}

void check_witness(const Hypergraph& g, const Hypergraph& f, const Decision& d) {
  REQUIRE(d.witness.has_value());
  CHECK(verify(g, *d.witness));
  const auto copies = brute_copies(g, f);
  if (d.variant == Variant::color) {
    CHECK(mono_free(copies, d.witness->color));
  } else {
    CHECK(rainbow_free(copies, d.witness->color));
  }
}

const Hypergraph k3 = complete_hypergraph(2, 3);
const Hypergraph k4 = complete_hypergraph(2, 4);

}  // namespace

TEST_CASE("bounded decisions on the corpus graphs") {
  CHECK(decide_anti_ramsey_bounded(k4, k3, 2).arrow == Arrow::holds);
  const auto c4 = cycle_graph(4);
  const auto c6 = c6_3plus();
  const auto d = decide_anti_ramsey_bounded(c6, c4, 2);
  CHECK(d.arrow == Arrow::holds);
  CHECK(d.stats.leaves <= 945);
  // Below m2(C4) = 3/2 the arrow fails.
  const auto k23 = Hypergraph::from_edges(2, 5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
  REQUIRE(max_density(k23).value < Rational(3, 2));
  const auto d2 = decide_anti_ramsey_bounded(k23, c4, 2);
  CHECK(d2.arrow == Arrow::fails);
  check_witness(k23, c4, d2);
}

TEST_CASE("proper decisions") {
  CHECK(decide_anti_ramsey_proper(k3, k3).arrow == Arrow::holds);
  CHECK(decide_anti_ramsey_proper(k4, k3).arrow == Arrow::holds);
  const auto c7 = cycle_graph(7);
  const auto d = decide_anti_ramsey_proper(c7, c7);
  CHECK(d.arrow == Arrow::fails);
  check_witness(c7, c7, d);
}

TEST_CASE("ramsey decisions") {
  CHECK(decide_ramsey(complete_hypergraph(2, 6), k3, 2).arrow == Arrow::holds);
  const auto k5 = complete_hypergraph(2, 5);
  const auto d = decide_ramsey(k5, k3, 2);
  CHECK(d.arrow == Arrow::fails);
  check_witness(k5, k3, d);
}

TEST_CASE("hosts without copies and one-edge patterns") {
  const auto p3 = path_graph(3);
  const auto empty = Hypergraph(2, 4);
  auto d = decide_anti_ramsey_bounded(empty, k3, 2);
  CHECK(d.arrow == Arrow::fails);
  CHECK(d.witness->color.empty());
  const auto edge = complete_hypergraph(2, 2);
  CHECK(decide_anti_ramsey_bounded(p3, edge, 2).arrow == Arrow::holds);
  CHECK(decide_ramsey(p3, edge, 3).arrow == Arrow::holds);
  CHECK(decide_anti_ramsey_proper(p3, edge).arrow == Arrow::holds);
  CHECK_THROWS_AS(decide_ramsey(k4, k3, 0), InputError);
}

TEST_CASE("decisions match an unpruned brute force on small graphs") {
  std::mt19937_64 rng(41);
  const std::vector<Hypergraph> patterns{k3, cycle_graph(4), path_graph(3), path_graph(4)};
  for (int trial = 0; trial < 60; ++trial) {
    const Vertex n = 3 + static_cast<Vertex>(trial % 3);
    const auto g = random_graph(rng, 2, n, 0.7);
    const auto& f = patterns[static_cast<std::size_t>(trial) % patterns.size()];
    CAPTURE(serialize(g));
    CAPTURE(serialize(f));
    const auto b = decide_anti_ramsey_bounded(g, f, 2);
    CHECK(b.holds() == brute_arrow_partitions(g, f, false, 2));
    if (!b.holds()) check_witness(g, f, b);
    const auto b3 = decide_anti_ramsey_bounded(g, f, 3);
    CHECK(b3.holds() == brute_arrow_partitions(g, f, false, 3));
    if (!b3.holds()) check_witness(g, f, b3);
    const auto p = decide_anti_ramsey_proper(g, f);
    CHECK(p.holds() == brute_arrow_partitions(g, f, true, 0));
    if (!p.holds()) check_witness(g, f, p);
    const auto q = decide_ramsey(g, f, 2);
    CHECK(q.holds() == brute_arrow_ramsey(g, f, 2));
    if (!q.holds()) check_witness(g, f, q);
  }
}

TEST_CASE("maximal pairings agree with all 2-bounded colorings up to 7 edges") {
  GenerateOptions o;
  o.max_vertices = 8;
  o.max_edges = 7;
  const auto graphs = generate_connected(o);
  for (const auto& f : {k3, cycle_graph(4), path_graph(3)}) {
    for (const auto& g : graphs) {
      const auto idx = enumerate_copies(g, f);
      CHECK(decide_anti_ramsey_bounded(idx, 2).arrow == decide_bounded_partitions(idx, 2).arrow);
    }
  }
}

TEST_CASE("serial and parallel searches return the same witness") {
  const auto k5 = complete_hypergraph(2, 5);
  SearchLimits serial;
  serial.parallel = false;
  for (const auto& g : {k5, c6_3plus(), cycle_graph(9)}) {
    for (const auto& f : {k3, cycle_graph(4)}) {
      const auto idx = enumerate_copies(g, f);
      for (int variant = 0; variant < 3; ++variant) {
        const auto v = static_cast<Variant>(variant);
        const auto a = decide(idx, v, 2);
        const auto b = decide(idx, v, 2, serial);
        CHECK(a.arrow == b.arrow);
        CHECK(a.witness == b.witness);
      }
    }
  }
}

TEST_CASE("node cap yields undecided") {
  SearchLimits tiny;
  tiny.max_nodes = 1;
  CHECK(decide_ramsey(complete_hypergraph(2, 6), k3, 2, tiny).arrow == Arrow::undecided);
}

TEST_CASE("connected graph counts") {
  // Connected graphs on exactly n vertices: 1, 2, 6, 21, 112, 853.
  GenerateOptions o;
  o.max_vertices = 7;
  const auto graphs = generate_connected(o);
  std::vector<std::size_t> count(8, 0);
  for (const auto& g : graphs) ++count[g.num_vertices()];
  CHECK(count[2] == 1);
  CHECK(count[3] == 2);
  CHECK(count[4] == 6);
  CHECK(count[5] == 21);
  CHECK(count[6] == 112);
  CHECK(count[7] == 853);
  for (const auto& g : graphs) {
    CHECK(is_connected(g));
    CHECK(isolated_vertices(g).empty());
  }
}

TEST_CASE("connected 3-graph counts") {
  GenerateOptions o;
  o.uniformity = 3;
  o.max_vertices = 6;
  const auto graphs = generate_connected(o);
  std::size_t on5 = 0, on6 = 0;
  for (const auto& g : graphs) {
    on5 += g.num_vertices() == 5;
    on6 += g.num_vertices() == 6;
  }
  // All 3-graphs up to isomorphism: 5 on four, 34 on five, 2136 on six vertices.
  // Remove those with an isolated vertex; on six vertices also the two disjoint edges.
  CHECK(on5 == 34 - 5);
  CHECK(on6 == 2136 - 34 - 1);
}

TEST_CASE("generation caps and density filter") {
  GenerateOptions o;
  o.max_vertices = 9;
  CHECK_THROWS_AS(generate_connected(o), InputError);
  o.max_vertices = 6;
  o.density_cap = Rational(1);
  for (const auto& g : generate_connected(o)) CHECK(max_density(g).value <= Rational(1));
}

TEST_CASE("obstruction search") {
  const auto found = search_obstructions(k3, Variant::bounded, 2, 6, Rational(2));
  CHECK(std::any_of(found.obstructions.begin(), found.obstructions.end(),
                    [](const Hypergraph& g) { return are_isomorphic(g, k4); }));
  CHECK(found.undecided.empty());
  const auto c4 = search_obstructions(cycle_graph(4), Variant::bounded, 2, 6, Rational(3, 2));
  REQUIRE(c4.obstructions.size() >= 1);
  CHECK(std::any_of(c4.obstructions.begin(), c4.obstructions.end(),
                    [](const Hypergraph& g) { return are_isomorphic(g, c6_3plus()); }));
  for (const auto& g : c4.obstructions) CHECK(max_density(g).value == Rational(3, 2));
  CHECK(search_obstructions(k4, Variant::bounded, 2, 6, Rational(5, 2)).obstructions.empty());
}
