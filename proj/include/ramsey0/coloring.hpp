#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ramsey0/copies.hpp"
#include "ramsey0/hypergraph.hpp"

namespace ramsey0 {

using Color = std::uint32_t;
inline constexpr Color kUncolored = ~Color{0};

enum class Variant { proper, bounded, color };

const char* to_string(Variant v);

/// Edge coloring of a fixed host. `r` is the bound for bounded colorings and
/// the number of colors for r-colorings; unused for proper ones.
struct Coloring {
  Variant variant = Variant::bounded;
  int r = 2;
  std::vector<Color> color;  // indexed by EdgeId, kUncolored for unassigned

  bool total() const;
  friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// Checks the variant constraint. Throws InputError on a partial assignment
/// or a size mismatch.
bool verify(const Hypergraph& g, const Coloring& c);

/// First copy (in index order) whose edges get pairwise distinct colors.
std::optional<CopyId> find_rainbow_copy(const Coloring& c, const CopyIndex& idx);
/// First copy whose edges all share one color.
std::optional<CopyId> find_monochromatic_copy(const Coloring& c, const CopyIndex& idx);

/// Renumbers colors by first occurrence in edge order.
void normalize_colors(Coloring& c);

/// Order-independent 64-bit digest of (edge, color) pairs.
std::uint64_t coloring_hash(const Coloring& c);

/// Text format: `coloring proper`, `coloring bounded <r>` or `coloring color <r>`,
/// then one `i c` line per edge.
Coloring parse_coloring(std::istream& in, std::size_t num_edges);
Coloring parse_coloring(const std::string& text, std::size_t num_edges);
std::string serialize(const Coloring& c);

}  // namespace ramsey0
