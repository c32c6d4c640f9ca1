#pragma once

#include <string>
#include <vector>

#include "ramsey0/hypergraph.hpp"

namespace ramsey0 {

/// The 3-regular graph on 6 vertices from the C4 counterexample (isomorphic to K_{3,3}).
Hypergraph c6_3plus();
/// Two copies of K_5^(3) sharing the four vertices 1..4.
Hypergraph k5_3_doubled();

/// Resolves a built-in graph name: K<k>, C<k>, P<k>, K<r>-<l>, c6-3plus,
/// k5-3-doubled. Throws InputError on an unknown name.
Hypergraph named_graph(const std::string& name);

/// Names listed by `corpus list` (graphs and colorings).
std::vector<std::string> corpus_names();

}  // namespace ramsey0
