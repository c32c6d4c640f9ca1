#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ramsey0/copies.hpp"
#include "ramsey0/hypergraph.hpp"

namespace ramsey0 {

enum class StepKind { first, regular_open, regular_closed, degenerate };

const char* to_string(StepKind kind);

inline bool is_regular(StepKind k) { return k == StepKind::regular_open || k == StepKind::regular_closed; }

struct GrowStep {
  CopyId copy = 0;
  std::vector<EdgeId> edges;
  StepKind kind = StepKind::first;
  /// The single shared edge of a regular step.
  std::optional<EdgeId> attachment;
  /// V(F_i) \ V(G_{i-1}); every vertex for the first step.
  std::vector<Vertex> inner;
  /// E(F_i) and V(F_i) intersected with G_{i-1}.
  std::vector<EdgeId> shared_edges;
  std::vector<Vertex> shared_vertices;
  /// Bookkeeping recorded while building (compared against a recomputation).
  int delta = 0;
  std::size_t reg = 0;
  std::size_t deg = 0;
  std::size_t fo = 0;
};

struct GrowSequence {
  CopyIndex index;  // copies of F in the block
  std::vector<GrowStep> steps;
  std::vector<std::string> warnings;

  const Hypergraph& block() const { return index.host(); }
  const Hypergraph& pattern() const { return index.pattern(); }
  /// s: index of the last step.
  std::size_t length() const { return steps.empty() ? 0 : steps.size() - 1; }
};

struct GrowOptions {
  /// Throw instead of warning when F misses the strict-balance hypotheses.
  bool require_hypotheses = false;
};

/// Runs the grow-sequence construction with lexicographic tie-breaking.
/// Throws ContractError when B is not an F-block.
GrowSequence build_grow_sequence(const Hypergraph& block, const Hypergraph& pattern, GrowOptions options = {});

/// True when F is strictly l-balanced and (e(F) = 3 with gamma = l-1, or e(F) >= 4).
bool satisfies_growth_hypotheses(const Hypergraph& pattern);

struct StepClassification {
  std::vector<StepKind> kinds;  // regular steps are reported as regular_open or regular_closed as stored
  std::vector<int> delta;
  std::vector<std::size_t> reg, deg, fo;
  /// fully_open[i] lists the steps fully-open in S_i.
  std::vector<std::vector<std::size_t>> fully_open;
};

/// Recomputes kinds, Delta and the counters from the step copies alone.
StepClassification classify_steps(const GrowSequence& seq);

struct ClaimReport {
  std::vector<std::string> violations;
  std::size_t regular = 0;
  std::size_t degenerate = 0;
  bool attachment_claim_checked = false;
  bool ok() const { return violations.empty(); }
};

ClaimReport check_claims(const GrowSequence& seq);

}  // namespace ramsey0
