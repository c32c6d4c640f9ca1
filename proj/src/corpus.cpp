#include "ramsey0/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <regex>

#include "ramsey0/errors.hpp"

namespace ramsey0 {

Hypergraph c6_3plus() {
  return Hypergraph::from_edges(2, 6, {{0, 1}, {1, 5}, {4, 5}, {3, 4}, {2, 3}, {0, 2}, {0, 4}, {1, 3}, {2, 5}});
}

Hypergraph k5_3_doubled() {
  std::vector<std::vector<Vertex>> edges;
  for (Vertex shift : {0u, 1u}) {
    for (Vertex a = 0; a < 5; ++a)
      for (Vertex b = a + 1; b < 5; ++b)
        for (Vertex c = b + 1; c < 5; ++c) {
          std::vector<Vertex> e{a + shift, b + shift, c + shift};
          if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
        }
  }
  return Hypergraph::from_edges(3, 6, edges);
}

namespace {

Vertex parse_count(const std::string& text, const std::string& name) {
  Vertex value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw InputError("unknown corpus graph: " + name);
  return value;
}

}  // namespace

Hypergraph named_graph(const std::string& name) {
  if (name == "c6-3plus") return c6_3plus();
  if (name == "k5-3-doubled") return k5_3_doubled();
  static const std::regex hyper(R"(K(\d+)-(\d+))");
  static const std::regex simple(R"(([KCP])(\d+))");
  std::smatch m;
  if (std::regex_match(name, m, hyper)) {
    const Vertex r = parse_count(m[1], name);
    const Vertex ell = parse_count(m[2], name);
    if (ell < 2 || ell > r) throw InputError("bad hypergraph clique: " + name);
    auto m_edges = binomial(r, ell);
    if (!m_edges || *m_edges > 10'000'000) throw InputError("corpus graph too large: " + name);
    return complete_hypergraph(static_cast<int>(ell), r);
  }
  if (std::regex_match(name, m, simple)) {
    const Vertex k = parse_count(m[2], name);
    if (k > 4096) throw InputError("corpus graph too large: " + name);
    switch (m[1].str()[0]) {
      case 'K':
        return complete_hypergraph(2, k);
      case 'C':
        return cycle_graph(k);
      default:
        return path_graph(k);
    }
  }
  throw InputError("unknown corpus graph: " + name);
}

std::vector<std::string> corpus_names() {
  return {"K<k>", "C<k>", "P<k>", "K<r>-<l>", "c6-3plus", "k5-3-doubled", "k6-fig2-coloring",
          "k6-no-rainbow-k4", "k5-3-no-rainbow-k4-3"};
}

}  // namespace ramsey0
