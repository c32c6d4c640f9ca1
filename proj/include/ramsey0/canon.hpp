#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ramsey0/hypergraph.hpp"

namespace ramsey0 {

/// Isomorphism-invariant representative: the lexicographically smallest
/// relabeled edge list over the individualization-refinement search tree.
struct CanonicalForm {
  int uniformity = 2;
  Vertex num_vertices = 0;
  std::vector<Vertex> flat;

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;

  Hypergraph to_hypergraph() const {
    return Hypergraph::from_sorted_flat(uniformity, num_vertices, flat);
  }
};

struct CanonicalFormHash {
  std::size_t operator()(const CanonicalForm& c) const noexcept;
};

struct Canonical {
  CanonicalForm form;
  /// labeling[v] is the canonical id of vertex v.
  std::vector<Vertex> labeling;
};

Canonical canonical_form(const Hypergraph& g);

/// Stable color refinement (1-WL generalized to hyperedges). Colors are dense
/// ranks and the ordered partition only ever splits cells.
std::vector<std::uint32_t> refine_colors(const Hypergraph& g, std::vector<std::uint32_t> colors);

/// An isomorphism a -> b (map[v] is the image of v) honoring the forced
/// pairs, found by backtracking over jointly refined colorings.
std::optional<std::vector<Vertex>> find_isomorphism(const Hypergraph& a, const Hypergraph& b,
                                                    std::span<const std::pair<Vertex, Vertex>> forced = {});

/// Intended for v(G) up to about 12; slower on large highly regular inputs.
bool are_isomorphic(const Hypergraph& a, const Hypergraph& b);

/// Ordering constraints (u, w) meaning image(u) < image(w). An embedding of
/// the pattern satisfying all of them exists for exactly one member of every
/// automorphism class of embeddings.
std::vector<std::pair<Vertex, Vertex>> symmetry_breaking_constraints(const Hypergraph& pattern);

/// Number of automorphisms (as a double, exact for small groups).
double automorphism_count(const Hypergraph& g);

}  // namespace ramsey0
