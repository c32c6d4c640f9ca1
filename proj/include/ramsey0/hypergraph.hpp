#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ramsey0 {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/// An l-uniform hypergraph on the vertex set [0, n).
///
/// Edges are stored flat, each as a strictly increasing l-tuple, and the edge
/// list is kept in lexicographic order. An EdgeId is the position of an edge in
/// that list and stays valid as long as the hypergraph is not replaced.
/// Immutable after construction.
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(int uniformity, Vertex num_vertices);

  /// Sorts each edge and the edge list. Throws InputError on out-of-range or
  /// repeated vertices, wrong edge size or duplicate edges.
  static Hypergraph from_edges(int uniformity, Vertex num_vertices,
                               const std::vector<std::vector<Vertex>>& edges);
  static Hypergraph from_flat(int uniformity, Vertex num_vertices, std::vector<Vertex> flat);
  /// Takes ownership of an already canonical flat edge list (validated).
  static Hypergraph from_sorted_flat(int uniformity, Vertex num_vertices, std::vector<Vertex> flat);

  int uniformity() const { return ell_; }
  Vertex num_vertices() const { return n_; }
  std::size_t num_edges() const { return ell_ == 0 ? 0 : flat_.size() / static_cast<std::size_t>(ell_); }

  std::span<const Vertex> edge(EdgeId e) const {
    return {flat_.data() + static_cast<std::size_t>(e) * static_cast<std::size_t>(ell_),
            static_cast<std::size_t>(ell_)};
  }
  std::span<const Vertex> flat() const { return flat_; }

  /// Looks up an edge given as a strictly increasing tuple.
  std::optional<EdgeId> find_edge(std::span<const Vertex> sorted_tuple) const;
  bool has_edge(std::span<const Vertex> sorted_tuple) const { return find_edge(sorted_tuple).has_value(); }

  std::vector<std::vector<Vertex>> edge_list() const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.ell_ == b.ell_ && a.n_ == b.n_ && a.flat_ == b.flat_;
  }

 private:
  int ell_ = 2;
  Vertex n_ = 0;
  std::vector<Vertex> flat_;
};

/// A subgraph with dense vertex ids plus the map back to the source ids.
struct Relabeled {
  Hypergraph graph;
  std::vector<Vertex> to_original;
};

Relabeled induced_subgraph(const Hypergraph& g, std::span<const Vertex> vertex_set);
/// Vertex set is the union of the chosen edges; relabeled densely in increasing order.
Relabeled edge_induced_subgraph(const Hypergraph& g, std::span<const EdgeId> edges);

/// Link of v: the (l-1)-graph { e \ {v} : v in e }. Vertex ids are kept (v is
/// isolated in the result). `source`, when given, receives the originating edge
/// of every link edge.
Hypergraph link(const Hypergraph& g, Vertex v, std::vector<EdgeId>* source = nullptr);
/// Link of the pair {v, w}. For l = 3 the result has uniformity 1 (a vertex list).
Hypergraph link2(const Hypergraph& g, Vertex v, Vertex w);

std::size_t degree(const Hypergraph& g, Vertex v);
std::vector<std::size_t> degrees(const Hypergraph& g);
/// Minimum degree; ties go to the smallest vertex id.
std::pair<Vertex, std::size_t> min_degree(const Hypergraph& g);

/// Vertices lying in no edge.
std::vector<Vertex> isolated_vertices(const Hypergraph& g);
/// True when there are no isolated vertices and the 2-section is connected.
bool is_connected(const Hypergraph& g);
/// Copy of `g` with the listed edges removed (ids renumbered, vertices kept).
Hypergraph remove_edges(const Hypergraph& g, std::span<const EdgeId> edges);

/// Edge list of the complete l-graph on r vertices.
Hypergraph complete_hypergraph(int uniformity, Vertex r);
Hypergraph cycle_graph(Vertex k);
Hypergraph path_graph(Vertex k);

/// Text format: first line `l n m`, then m lines of l vertex ids. `#` starts a comment.
Hypergraph parse_hypergraph(std::istream& in);
Hypergraph parse_hypergraph(const std::string& text);
std::string serialize(const Hypergraph& g);
Hypergraph read_hypergraph_file(const std::string& path);

/// C(n, k) or nullopt on 64-bit overflow.
std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k);

}  // namespace ramsey0
