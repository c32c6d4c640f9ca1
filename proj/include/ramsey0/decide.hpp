#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramsey0/coloring.hpp"
#include "ramsey0/copies.hpp"
#include "ramsey0/hypergraph.hpp"
#include "ramsey0/rational.hpp"

namespace ramsey0 {

enum class Arrow { holds, fails, undecided };

const char* to_string(Arrow a);

struct SearchStats {
  std::uint64_t nodes = 0;
  /// Complete or early-completed assignments reached.
  std::uint64_t leaves = 0;
  std::uint64_t branches = 0;
  double seconds = 0.0;
};

/// Outcome of an exhaustive "G -> F" search. When the arrow fails, `witness`
/// is an avoiding coloring of the whole host.
struct Decision {
  Arrow arrow = Arrow::undecided;
  std::optional<Coloring> witness;
  Variant variant = Variant::bounded;
  int r = 2;
  SearchStats stats;

  bool holds() const { return arrow == Arrow::holds; }
};

struct SearchLimits {
  /// Node budget for each top-level branch; exhausting it yields undecided.
  std::uint64_t max_nodes = 400'000'000;
  bool parallel = true;
  /// Pairing search only: prune when the unkilled copies outnumber what the
  /// remaining pairs can kill.
  bool counting_bound = true;
};

/// Every r-bounded coloring has a rainbow copy. For r = 2 only maximal
/// pairings are searched: merging two color classes of size one never creates
/// a rainbow copy, so some maximal pairing avoids rainbow copies whenever any
/// 2-bounded coloring does.
Decision decide_anti_ramsey_bounded(const CopyIndex& idx, int r, const SearchLimits& limits = {});
Decision decide_anti_ramsey_bounded(const Hypergraph& g, const Hypergraph& f, int r,
                                    const SearchLimits& limits = {});
/// Search over all partitions into classes of size <= r (no maximality).
/// Slower; kept as the reference for the pairing search.
Decision decide_bounded_partitions(const CopyIndex& idx, int r, const SearchLimits& limits = {});

/// Every proper coloring has a rainbow copy.
Decision decide_anti_ramsey_proper(const CopyIndex& idx, const SearchLimits& limits = {});
Decision decide_anti_ramsey_proper(const Hypergraph& g, const Hypergraph& f, const SearchLimits& limits = {});

/// Every r-coloring has a monochromatic copy.
Decision decide_ramsey(const CopyIndex& idx, int r, const SearchLimits& limits = {});
Decision decide_ramsey(const Hypergraph& g, const Hypergraph& f, int r, const SearchLimits& limits = {});

/// Dispatch by variant (r ignored for proper).
Decision decide(const CopyIndex& idx, Variant variant, int r, const SearchLimits& limits = {});

struct GenerateOptions {
  int uniformity = 2;
  Vertex max_vertices = 6;
  std::optional<std::size_t> max_edges;
  /// Keep only graphs with m(G) <= cap; applied during generation since the
  /// density never drops when an edge is added.
  std::optional<Rational> density_cap;
};

/// Connected l-graphs without isolated vertices, one per isomorphism class,
/// sorted by (vertices, edges, canonical edge list). Built edge by edge with
/// canonical-form deduplication. Throws InputError beyond the size caps.
std::vector<Hypergraph> generate_connected(const GenerateOptions& options);

struct ObstructionSearch {
  std::vector<Hypergraph> obstructions;
  std::vector<Hypergraph> undecided;
  std::size_t examined = 0;
};

/// Graphs from generate_connected with m(G) <= density_cap on which the arrow holds.
ObstructionSearch search_obstructions(const Hypergraph& f, Variant variant, int r, Vertex v_max,
                                      const Rational& density_cap, const SearchLimits& limits = {});

}  // namespace ramsey0
