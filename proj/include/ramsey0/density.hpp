#pragma once

#include <optional>
#include <vector>

#include "ramsey0/hypergraph.hpp"
#include "ramsey0/rational.hpp"

namespace ramsey0 {

/// A density value together with a vertex set attaining it.
struct DensestSet {
  Rational value;
  std::vector<Vertex> witness;
};

/// e(G)/v(G). Throws InputError when v(G) = 0.
Rational density(const Hypergraph& g);

/// m(G) = max over non-empty S of e(G[S])/|S|, by parametric max-flow.
DensestSet max_density(const Hypergraph& g);
/// Same value by trying every vertex subset; reference for small graphs (v <= 24).
DensestSet max_density_exhaustive(const Hypergraph& g);

/// d_l(G) = (e(G) - 1)/(v(G) - l). Requires v(G) >= l + 1.
Rational ell_density(const Hypergraph& g);
/// m_l(G) over subgraphs on at least l + 1 vertices. Exhaustive, meant for
/// pattern graphs (v <= 20 enforced).
DensestSet max_ell_density(const Hypergraph& g);

struct Balancedness {
  bool balanced = false;
  bool strictly_balanced = false;
};
Balancedness balancedness(const Hypergraph& g);

/// Largest intersection of two distinct edges. Needs at least two edges.
int gamma(const Hypergraph& f);

/// Graphs only. Every vertex has at most floor(2k) neighbours before it.
/// Throws ContractError when m(G) > k.
std::vector<Vertex> degeneracy_ordering(const Hypergraph& g, const Rational& k);

/// tail[e] is the vertex edge e points away from; out-degree = number of edges with that tail.
struct Orientation {
  std::vector<Vertex> tail;

  Vertex head(const Hypergraph& g, EdgeId e) const {
    auto t = g.edge(e);
    return t[0] == tail[e] ? t[1] : t[0];
  }
  std::vector<std::size_t> out_degrees(Vertex n) const;
};

/// Orientation with out-degree <= k at every vertex, found as a capacitated
/// edge-to-endpoint assignment. Throws ContractError naming a vertex set with
/// more than k times as many edges when none exists.
Orientation bounded_orientation(const Hypergraph& g, int k);

struct DensityReport {
  Rational d;
  Rational m;
  std::vector<Vertex> witness_m;
  std::optional<Rational> d_ell;
  std::optional<Rational> m_ell;
  std::vector<Vertex> witness_m_ell;
  std::optional<int> gamma;
  bool balanced = false;
  bool strictly_balanced = false;
};

/// Everything above in one pass. The l-density fields are left empty when the
/// graph is too small or too large for the exhaustive search.
DensityReport density_report(const Hypergraph& g);

}  // namespace ramsey0
