#include "ramsey0/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "ramsey0/errors.hpp"

namespace ramsey0 {

namespace {

bool tuple_less(std::span<const Vertex> a, std::span<const Vertex> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void check_uniformity(int ell) {
  if (ell < 1) throw InputError("uniformity must be positive");
}

}  // namespace

Hypergraph::Hypergraph(int uniformity, Vertex num_vertices) : ell_(uniformity), n_(num_vertices) {
  check_uniformity(uniformity);
}

Hypergraph Hypergraph::from_edges(int uniformity, Vertex num_vertices,
                                  const std::vector<std::vector<Vertex>>& edges) {
  check_uniformity(uniformity);
  std::vector<Vertex> flat;
  flat.reserve(edges.size() * static_cast<std::size_t>(uniformity));
  for (const auto& e : edges) {
    if (e.size() != static_cast<std::size_t>(uniformity)) {
      throw InputError("edge has " + std::to_string(e.size()) + " vertices, expected " +
                       std::to_string(uniformity));
    }
    flat.insert(flat.end(), e.begin(), e.end());
  }
  return from_flat(uniformity, num_vertices, std::move(flat));
}

Hypergraph Hypergraph::from_flat(int uniformity, Vertex num_vertices, std::vector<Vertex> flat) {
  check_uniformity(uniformity);
  const auto ell = static_cast<std::size_t>(uniformity);
  if (flat.size() % ell != 0) throw InputError("flat edge list length is not a multiple of l");
  const std::size_t m = flat.size() / ell;
  for (std::size_t i = 0; i < m; ++i) {
    std::sort(flat.begin() + static_cast<std::ptrdiff_t>(i * ell),
              flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * ell));
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto tuple = [&](std::size_t i) { return std::span<const Vertex>(flat.data() + i * ell, ell); };
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return tuple_less(tuple(a), tuple(b)); });
  std::vector<Vertex> sorted;
  sorted.reserve(flat.size());
  for (auto i : order) {
    auto t = tuple(i);
    sorted.insert(sorted.end(), t.begin(), t.end());
  }
  return from_sorted_flat(uniformity, num_vertices, std::move(sorted));
}

Hypergraph Hypergraph::from_sorted_flat(int uniformity, Vertex num_vertices, std::vector<Vertex> flat) {
  check_uniformity(uniformity);
  const auto ell = static_cast<std::size_t>(uniformity);
  if (flat.size() % ell != 0) throw InputError("flat edge list length is not a multiple of l");
  const std::size_t m = flat.size() / ell;
  for (std::size_t i = 0; i < m; ++i) {
    const Vertex* e = flat.data() + i * ell;
    for (std::size_t k = 0; k < ell; ++k) {
      if (e[k] >= num_vertices) {
        throw InputError("vertex id " + std::to_string(e[k]) + " out of range [0, " +
                         std::to_string(num_vertices) + ")");
      }
      if (k > 0 && e[k - 1] >= e[k]) throw InputError("edge with repeated vertex " + std::to_string(e[k]));
    }
    if (i > 0) {
      std::span<const Vertex> prev(e - ell, ell), cur(e, ell);
      if (!tuple_less(prev, cur)) {
        if (std::equal(prev.begin(), prev.end(), cur.begin())) throw InputError("duplicate edge");
        throw InputError("edge list is not in lexicographic order");
      }
    }
  }
  Hypergraph g;
  g.ell_ = uniformity;
  g.n_ = num_vertices;
  g.flat_ = std::move(flat);
  return g;
}

std::optional<EdgeId> Hypergraph::find_edge(std::span<const Vertex> sorted_tuple) const {
  if (sorted_tuple.size() != static_cast<std::size_t>(ell_)) return std::nullopt;
  std::size_t lo = 0, hi = num_edges();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (tuple_less(edge(static_cast<EdgeId>(mid)), sorted_tuple)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < num_edges()) {
    auto e = edge(static_cast<EdgeId>(lo));
    if (std::equal(e.begin(), e.end(), sorted_tuple.begin())) return static_cast<EdgeId>(lo);
  }
  return std::nullopt;
}

std::vector<std::vector<Vertex>> Hypergraph::edge_list() const {
  std::vector<std::vector<Vertex>> out;
  out.reserve(num_edges());
  for (EdgeId e = 0; e < num_edges(); ++e) {
    auto t = edge(e);
    out.emplace_back(t.begin(), t.end());
  }
  return out;
}

Relabeled induced_subgraph(const Hypergraph& g, std::span<const Vertex> vertex_set) {
  constexpr Vertex kAbsent = ~Vertex{0};
  std::vector<Vertex> to_new(g.num_vertices(), kAbsent);
  std::vector<Vertex> members(vertex_set.begin(), vertex_set.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] >= g.num_vertices()) {
      throw InputError("vertex id " + std::to_string(members[i]) + " out of range");
    }
    to_new[members[i]] = static_cast<Vertex>(i);
  }
  std::vector<Vertex> flat;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto t = g.edge(e);
    if (std::all_of(t.begin(), t.end(), [&](Vertex v) { return to_new[v] != kAbsent; })) {
      for (auto v : t) flat.push_back(to_new[v]);
    }
  }
  // Relabeling is monotone, so lexicographic order is preserved.
  return {Hypergraph::from_sorted_flat(g.uniformity(), static_cast<Vertex>(members.size()), std::move(flat)),
          std::move(members)};
}

Relabeled edge_induced_subgraph(const Hypergraph& g, std::span<const EdgeId> edges) {
  std::vector<EdgeId> chosen(edges.begin(), edges.end());
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  std::vector<Vertex> members;
  for (auto e : chosen) {
    if (e >= g.num_edges()) throw InputError("edge id " + std::to_string(e) + " out of range");
    auto t = g.edge(e);
    members.insert(members.end(), t.begin(), t.end());
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<Vertex> flat;
  flat.reserve(chosen.size() * static_cast<std::size_t>(g.uniformity()));
  for (auto e : chosen) {
    for (auto v : g.edge(e)) {
      flat.push_back(static_cast<Vertex>(std::lower_bound(members.begin(), members.end(), v) - members.begin()));
    }
  }
  return {Hypergraph::from_sorted_flat(g.uniformity(), static_cast<Vertex>(members.size()), std::move(flat)),
          std::move(members)};
}

Hypergraph link(const Hypergraph& g, Vertex v, std::vector<EdgeId>* source) {
  if (g.uniformity() < 3) throw UnsupportedError("link requires uniformity at least 3");
  if (v >= g.num_vertices()) throw InputError("vertex id " + std::to_string(v) + " out of range");
  std::vector<Vertex> flat;
  if (source) source->clear();
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto t = g.edge(e);
    if (std::find(t.begin(), t.end(), v) == t.end()) continue;
    for (auto u : t) {
      if (u != v) flat.push_back(u);
    }
    if (source) source->push_back(e);
  }
  // Removing a common vertex keeps the lexicographic order of the remaining tuples.
  return Hypergraph::from_sorted_flat(g.uniformity() - 1, g.num_vertices(), std::move(flat));
}

Hypergraph link2(const Hypergraph& g, Vertex v, Vertex w) {
  if (v == w) throw InputError("link2 needs two distinct vertices");
  if (v >= g.num_vertices() || w >= g.num_vertices()) throw InputError("vertex id out of range");
  if (g.uniformity() < 3) throw UnsupportedError("link2 requires uniformity at least 3");
  std::vector<Vertex> flat;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto t = g.edge(e);
    if (std::find(t.begin(), t.end(), v) == t.end() || std::find(t.begin(), t.end(), w) == t.end()) continue;
    for (auto u : t) {
      if (u != v && u != w) flat.push_back(u);
    }
  }
  return Hypergraph::from_sorted_flat(g.uniformity() - 2, g.num_vertices(), std::move(flat));
}

std::size_t degree(const Hypergraph& g, Vertex v) {
  if (v >= g.num_vertices()) throw InputError("vertex id " + std::to_string(v) + " out of range");
  std::size_t d = 0;
  for (auto u : g.flat()) d += (u == v);
  return d;
}

std::vector<std::size_t> degrees(const Hypergraph& g) {
  std::vector<std::size_t> deg(g.num_vertices(), 0);
  for (auto u : g.flat()) ++deg[u];
  return deg;
}

std::pair<Vertex, std::size_t> min_degree(const Hypergraph& g) {
  if (g.num_vertices() == 0) throw InputError("min_degree of a hypergraph without vertices");
  auto deg = degrees(g);
  auto it = std::min_element(deg.begin(), deg.end());
  return {static_cast<Vertex>(it - deg.begin()), *it};
}

std::vector<Vertex> isolated_vertices(const Hypergraph& g) {
  auto deg = degrees(g);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (deg[v] == 0) out.push_back(v);
  }
  return out;
}

bool is_connected(const Hypergraph& g) {
  const Vertex n = g.num_vertices();
  if (n == 0) return false;
  if (!isolated_vertices(g).empty()) return n == 1;
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  Vertex components = n;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto t = g.edge(e);
    for (std::size_t k = 1; k < t.size(); ++k) {
      auto a = find(t[0]), b = find(t[k]);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components == 1;
}

Hypergraph remove_edges(const Hypergraph& g, std::span<const EdgeId> edges) {
  std::vector<char> drop(g.num_edges(), 0);
  for (auto e : edges) {
    if (e >= g.num_edges()) throw InputError("edge id out of range");
    drop[e] = 1;
  }
  std::vector<Vertex> flat;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (drop[e]) continue;
    auto t = g.edge(e);
    flat.insert(flat.end(), t.begin(), t.end());
  }
  return Hypergraph::from_sorted_flat(g.uniformity(), g.num_vertices(), std::move(flat));
}

Hypergraph complete_hypergraph(int uniformity, Vertex r) {
  check_uniformity(uniformity);
  const auto ell = static_cast<std::size_t>(uniformity);
  std::vector<Vertex> flat;
  if (ell > r) return Hypergraph(uniformity, r);
  std::vector<Vertex> comb(ell);
  std::iota(comb.begin(), comb.end(), 0);
  while (true) {
    flat.insert(flat.end(), comb.begin(), comb.end());
    std::size_t i = ell;
    while (i > 0 && comb[i - 1] == r - ell + i - 1) --i;
    if (i == 0) break;
    ++comb[i - 1];
    for (std::size_t j = i; j < ell; ++j) comb[j] = comb[j - 1] + 1;
  }
  return Hypergraph::from_sorted_flat(uniformity, r, std::move(flat));
}

Hypergraph cycle_graph(Vertex k) {
  if (k < 3) throw InputError("cycles need at least 3 vertices");
  std::vector<std::vector<Vertex>> edges;
  for (Vertex i = 0; i < k; ++i) edges.push_back({i, (i + 1) % k});
  return Hypergraph::from_edges(2, k, edges);
}

Hypergraph path_graph(Vertex k) {
  if (k < 1) throw InputError("paths need at least one vertex");
  std::vector<std::vector<Vertex>> edges;
  for (Vertex i = 0; i + 1 < k; ++i) edges.push_back({i, i + 1});
  return Hypergraph::from_edges(2, k, edges);
}

namespace {

// Reads the next non-comment, non-blank line.
bool next_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

Hypergraph parse_hypergraph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_line(in, line, lineno)) throw InputError("empty hypergraph file");
  long long ell = 0, n = 0, m = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> ell >> n >> m) || (header >> extra)) {
      throw InputError("line " + std::to_string(lineno) + ": header must be `l n m`");
    }
  }
  if (ell < 1 || n < 0 || m < 0 || n > static_cast<long long>(~Vertex{0})) {
    throw InputError("line " + std::to_string(lineno) + ": invalid header values");
  }
  std::vector<Vertex> flat;
  flat.reserve(static_cast<std::size_t>(m * ell));
  for (long long i = 0; i < m; ++i) {
    if (!next_line(in, line, lineno)) {
      throw InputError("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    }
    std::istringstream row(line);
    long long prev = -1;
    for (long long k = 0; k < ell; ++k) {
      long long v = 0;
      if (!(row >> v)) throw InputError("line " + std::to_string(lineno) + ": too few vertex ids");
      if (v < 0 || v >= n) throw InputError("line " + std::to_string(lineno) + ": vertex id out of range");
      if (v <= prev) throw InputError("line " + std::to_string(lineno) + ": vertex ids must be strictly increasing");
      prev = v;
      flat.push_back(static_cast<Vertex>(v));
    }
    std::string extra;
    if (row >> extra) throw InputError("line " + std::to_string(lineno) + ": too many vertex ids");
  }
  if (next_line(in, line, lineno)) throw InputError("line " + std::to_string(lineno) + ": trailing content");
  return Hypergraph::from_flat(static_cast<int>(ell), static_cast<Vertex>(n), std::move(flat));
}

Hypergraph parse_hypergraph(const std::string& text) {
  std::istringstream in(text);
  return parse_hypergraph(in);
}

std::string serialize(const Hypergraph& g) {
  std::ostringstream out;
  out << g.uniformity() << ' ' << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto t = g.edge(e);
    for (std::size_t k = 0; k < t.size(); ++k) out << (k ? " " : "") << t[k];
    out << '\n';
  }
  return out.str();
}

Hypergraph read_hypergraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_hypergraph(in);
}

std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > ~std::uint64_t{0}) return std::nullopt;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace ramsey0
