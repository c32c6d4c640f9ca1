#include <random>

#include "doctest.h"
#include "ramsey0/corpus.hpp"
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

Rational witness_density(const Hypergraph& g, const std::vector<Vertex>& s) {
  return density(induced_subgraph(g, s).graph);
}

}  // namespace

TEST_CASE("density values") {
  CHECK(density(complete_hypergraph(2, 4)) == Rational(3, 2));
  CHECK(density(c6_3plus()) == Rational(3, 2));
  CHECK(density(complete_hypergraph(3, 5)) == Rational(2));
  CHECK_THROWS_AS(density(Hypergraph(2, 0)), InputError);
}

TEST_CASE("max density with witnesses") {
  auto forest = Hypergraph::from_edges(2, 4, {{0, 1}, {2, 3}});
  CHECK(max_density(forest).value == Rational(1, 2));

  auto c6 = max_density(c6_3plus());
  CHECK(c6.value == Rational(3, 2));
  CHECK(c6.witness == std::vector<Vertex>{0, 1, 2, 3, 4, 5});

  auto pendant = Hypergraph::from_edges(2, 5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}});
  auto m = max_density(pendant);
  CHECK(m.value == Rational(3, 2));
  CHECK(m.witness == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(max_density_exhaustive(pendant).value == Rational(3, 2));

  auto empty = Hypergraph(3, 4);
  CHECK(max_density(empty).value == Rational(0));
}

TEST_CASE("flow and exhaustive max density agree") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int ell = 2 + trial % 3;
    const Vertex n = static_cast<Vertex>(ell + 1 + trial % (9 - ell));
    auto g = random_graph(rng, ell, n, 0.1 + 0.8 * (trial % 7) / 7.0);
    auto flow = max_density(g);
    auto exact = max_density_exhaustive(g);
    CHECK(flow.value == exact.value);
    CHECK(witness_density(g, flow.witness) == flow.value);
    CHECK(flow.value >= density(g));
  }
}

TEST_CASE("l-densities of the standard patterns") {
  CHECK(max_ell_density(complete_hypergraph(2, 4)).value == Rational(5, 2));
  CHECK(max_ell_density(cycle_graph(4)).value == Rational(3, 2));
  CHECK(max_ell_density(complete_hypergraph(3, 4)).value == Rational(3));
  for (int ell = 2; ell <= 5; ++ell) {
    CHECK(max_ell_density(complete_hypergraph(ell, static_cast<Vertex>(ell + 1))).value == Rational(ell));
  }
  for (auto [ell, r] : {std::pair{2, 5}, {3, 5}, {4, 6}}) {
    auto binom = static_cast<std::int64_t>(*binomial(r, ell));
    CHECK(max_ell_density(complete_hypergraph(ell, r)).value == Rational(binom - 1, r - ell));
  }
  CHECK_THROWS_AS(ell_density(complete_hypergraph(2, 2)), InputError);
}

TEST_CASE("balancedness") {
  auto k4 = balancedness(complete_hypergraph(2, 4));
  CHECK(k4.balanced);
  CHECK(k4.strictly_balanced);
  auto c4 = balancedness(cycle_graph(4));
  CHECK(c4.balanced);
  CHECK(c4.strictly_balanced);
  auto tri_pendant = Hypergraph::from_edges(2, 4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
  auto b = balancedness(tri_pendant);
  CHECK_FALSE(b.balanced);
  CHECK_FALSE(b.strictly_balanced);
  // Strictly balanced patterns have V(F) as witness.
  for (auto f : {complete_hypergraph(2, 5), cycle_graph(6), complete_hypergraph(3, 5)}) {
    auto m = max_ell_density(f);
    CHECK(m.value == ell_density(f));
    CHECK(m.witness.size() == f.num_vertices());
  }
}

TEST_CASE("gamma") {
  CHECK(gamma(complete_hypergraph(2, 3)) == 1);
  CHECK(gamma(complete_hypergraph(3, 4)) == 2);
  CHECK(gamma(Hypergraph::from_edges(3, 6, {{0, 1, 2}, {3, 4, 5}})) == 0);
  CHECK_THROWS_AS(gamma(Hypergraph::from_edges(2, 2, {{0, 1}})), InputError);
}

namespace {

std::size_t max_back_degree(const Hypergraph& g, const std::vector<Vertex>& order) {
  std::vector<std::size_t> pos(g.num_vertices());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  std::vector<std::size_t> back(g.num_vertices(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto a = g.edge(e)[0], b = g.edge(e)[1];
    ++back[pos[a] > pos[b] ? a : b];
  }
  return back.empty() ? 0 : *std::max_element(back.begin(), back.end());
}

}  // namespace

TEST_CASE("degeneracy ordering") {
  auto p3 = path_graph(3);
  CHECK(max_back_degree(p3, degeneracy_ordering(p3, Rational(1))) <= 2);
  auto k4 = complete_hypergraph(2, 4);
  CHECK(max_back_degree(k4, degeneracy_ordering(k4, Rational(3, 2))) <= 3);
  auto k19 = complete_hypergraph(2, 19);
  auto order = degeneracy_ordering(k19, Rational(10));
  CHECK(order.size() == 19);
  CHECK(max_back_degree(k19, order) <= 18);
  CHECK_THROWS_AS(degeneracy_ordering(k4, Rational(1)), ContractError);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = random_graph(rng, 2, 12, 0.35);
    auto m = max_density(g).value;
    CHECK(static_cast<std::int64_t>(max_back_degree(g, degeneracy_ordering(g, m))) <= floor(2 * m));
  }
}

TEST_CASE("bounded orientation") {
  auto check = [](const Hypergraph& g, int k) {
    auto o = bounded_orientation(g, k);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      CHECK((o.tail[e] == g.edge(e)[0] || o.tail[e] == g.edge(e)[1]));
    }
    for (auto d : o.out_degrees(g.num_vertices())) CHECK(d <= static_cast<std::size_t>(k));
  };
  check(cycle_graph(4), 1);
  check(complete_hypergraph(2, 4), 2);
  check(c6_3plus(), 2);
  CHECK_THROWS_AS(bounded_orientation(complete_hypergraph(2, 4), 1), ContractError);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = random_graph(rng, 2, 10, 0.5);
    check(g, static_cast<int>(ceil(max_density(g).value)));
  }
}

TEST_CASE("density report") {
  auto r = density_report(complete_hypergraph(2, 4));
  CHECK(r.d == Rational(3, 2));
  CHECK(r.m == Rational(3, 2));
  CHECK(*r.m_ell == Rational(5, 2));
  CHECK(*r.gamma == 1);
  CHECK(r.strictly_balanced);
}
