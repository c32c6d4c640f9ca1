#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "ramsey0/hypergraph.hpp"

namespace ramsey0 {

using CopyId = std::uint32_t;

/// All F-copies of a host graph, each stored as its sorted edge-id tuple.
/// Copies are sorted lexicographically by that tuple. The inverse incidence
/// only covers edges lying in at least one copy, so it stays small on large
/// sparse hosts.
class CopyIndex {
 public:
  CopyIndex() = default;
  CopyIndex(std::shared_ptr<const Hypergraph> host, Hypergraph pattern, std::vector<EdgeId> flat_copies);

  const Hypergraph& host() const { return *host_; }
  std::shared_ptr<const Hypergraph> host_ptr() const { return host_; }
  const Hypergraph& pattern() const { return pattern_; }

  std::size_t copy_size() const { return pattern_.num_edges(); }
  std::size_t num_copies() const { return copy_size() == 0 ? 0 : flat_.size() / copy_size(); }
  std::span<const EdgeId> copy(CopyId c) const { return {flat_.data() + c * copy_size(), copy_size()}; }

  /// Copies containing e, in increasing order.
  std::span<const CopyId> copies_of(EdgeId e) const;
  /// Edges lying in at least one copy, increasing.
  std::span<const EdgeId> covered_edges() const { return covered_; }

 private:
  std::shared_ptr<const Hypergraph> host_;
  Hypergraph pattern_;
  std::vector<EdgeId> flat_;
  std::vector<EdgeId> covered_;
  std::vector<std::uint32_t> offset_;
  std::vector<CopyId> incidence_;
};

/// Enumerates copies of `pattern` in `host` by edge-by-edge backtracking with
/// symmetry-breaking constraints, parallel over the root edge. The pattern
/// must have at least one edge and no isolated vertices.
CopyIndex enumerate_copies(std::shared_ptr<const Hypergraph> host, const Hypergraph& pattern);
CopyIndex enumerate_copies(const Hypergraph& host, const Hypergraph& pattern);
/// Single-threaded reference; produces exactly the same index.
CopyIndex enumerate_copies_serial(std::shared_ptr<const Hypergraph> host, const Hypergraph& pattern);

/// Same copy lists. Two edges in no copy are (vacuously) equivalent.
bool f_equivalent(const CopyIndex& idx, EdgeId e1, EdgeId e2);

struct ClosednessReport {
  std::vector<EdgeId> closed_edges;
  std::vector<CopyId> closed_copies;
  std::vector<Vertex> uncovered_vertices;
  std::vector<EdgeId> uncovered_edges;
  bool graph_closed = false;
};

/// Edges in no copy never count as closed.
ClosednessReport closedness(const CopyIndex& idx);

struct BlockDecomposition {
  /// Edge sets of the blocks, each sorted, blocks ordered by smallest edge.
  std::vector<std::vector<EdgeId>> blocks;
  /// Copies inside each block.
  std::vector<std::vector<CopyId>> block_copies;
  std::vector<EdgeId> uncovered_edges;
};

BlockDecomposition block_decomposition(const CopyIndex& idx);

/// True when the copies restricted to `edges` cannot be split by an edge
/// partition (copy-incidence connectivity).
bool copy_structure_connected(const CopyIndex& idx, std::span<const EdgeId> edges);

/// F-closed and a single block spanning every edge.
bool is_block(const Hypergraph& g, const Hypergraph& f);
bool is_block(const CopyIndex& idx);

}  // namespace ramsey0
