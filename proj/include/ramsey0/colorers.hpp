#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ramsey0/coloring.hpp"
#include "ramsey0/copies.hpp"
#include "ramsey0/decide.hpp"
#include "ramsey0/density.hpp"
#include "ramsey0/hypergraph.hpp"

namespace ramsey0 {

struct ColorerOptions {
  /// Budget of the exhaustive fallback.
  SearchLimits exhaustive;
  /// The fallback is skipped on blocks with more edges.
  std::size_t exhaustive_max_edges = 48;
  bool allow_exhaustive = true;
};

/// A coloring of a block graph with local color ids, plus the cascade stage
/// that produced it.
struct BlockColoring {
  std::vector<Color> color;
  std::string stage;
  /// Set by the orientation stage: color classes never mix tails.
  std::optional<Orientation> orientation;
};

/// Proper coloring without a rainbow copy. Stages: "clique" (F = K_k, k >= 19),
/// "cycle" (F = C_k, k >= 7), "exhaustive". Throws ContractError when
/// m(B) > m_2(F).
std::optional<BlockColoring> proper_block_colorer(const Hypergraph& b, const Hypergraph& f,
                                                  const ColorerOptions& options = {});

/// 2-bounded coloring without a rainbow copy. Stages: "explicit", "peeling",
/// "orientation-i", "orientation-ii", "k4", "link", "exhaustive".
std::optional<BlockColoring> bounded_block_colorer(const Hypergraph& b, const Hypergraph& f,
                                                   const ColorerOptions& options = {});

/// r-coloring without a monochromatic copy. Stages: "link", "reduction"
/// (a 2-bounded coloring with each pair split into two colors), "exhaustive".
std::optional<BlockColoring> ramsey_block_colorer(const Hypergraph& b, const Hypergraph& f, int r,
                                                  const ColorerOptions& options = {});

/// One removal of the stripping loops: a pair from loop 1 or a single edge
/// from loop 2 (`second` is kNoEdge). Edges in no copy of the input are
/// stripped silently and not listed.
struct StripEvent {
  static constexpr EdgeId kNoEdge = ~EdgeId{0};
  EdgeId first = kNoEdge;
  EdgeId second = kNoEdge;
};

struct StripResult {
  bool success = false;
  /// Total when successful; blocks after the failing one stay uncolored.
  Coloring coloring;
  std::vector<StripEvent> events;
  std::size_t loop1_pairs = 0;
  std::size_t loop2_edges = 0;
  /// Host edge ids of the blocks left after stripping, each sorted.
  std::vector<std::vector<EdgeId>> blocks;
  std::vector<std::string> block_stage;
  std::optional<std::size_t> failed_block;
  std::string failure;
};

/// Algorithm 2: loop 1 repeatedly removes the lexicographically smallest pair
/// of disjoint equivalent edges (one fresh color), loop 2 removes edges in no
/// remaining copy, then the blocks get disjoint palettes. Graphs only.
StripResult strip_and_color_proper(const CopyIndex& idx, const ColorerOptions& options = {});
StripResult strip_and_color_proper(const Hypergraph& g, const Hypergraph& f, const ColorerOptions& options = {});

/// Algorithm 3: as above with intersecting pairs allowed; 2-bounded result.
StripResult strip_and_color_bounded(const CopyIndex& idx, const ColorerOptions& options = {});
StripResult strip_and_color_bounded(const Hypergraph& g, const Hypergraph& f, const ColorerOptions& options = {});

/// Algorithm 3 with each pair colored 0 and 1 and single edges colored 0;
/// blocks get r-colorings without monochromatic copies.
StripResult ramsey_two_coloring(const CopyIndex& idx, int r, const ColorerOptions& options = {});
StripResult ramsey_two_coloring(const Hypergraph& g, const Hypergraph& f, int r, const ColorerOptions& options = {});

/// Replays the events against the copy index: each pair shares the same
/// non-empty set of surviving copies (and is disjoint when `disjoint_pairs`),
/// each single edge lies in no surviving copy, and every block edge still lies
/// in one. Returns an empty string when sound, otherwise the first problem.
std::string check_strip_soundness(const CopyIndex& idx, const StripResult& res, bool disjoint_pairs);

struct NamedColoring {
  std::string name;
  std::string description;
  Hypergraph host;
  Hypergraph pattern;
  Coloring coloring;
};

/// The K6 coloring without a rainbow K4 (seven pairs plus the singleton {1,2})
/// and the K_5^(3) pairing without a rainbow K_4^(3).
std::vector<NamedColoring> explicit_colorings();
/// By name; "k6-no-rainbow-k4" is an alias of "k6-fig2-coloring".
std::optional<NamedColoring> explicit_coloring(const std::string& name);

}  // namespace ramsey0
