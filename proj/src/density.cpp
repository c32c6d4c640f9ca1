#include "ramsey0/density.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>

#include "maxflow.hpp"
#include "ramsey0/errors.hpp"

namespace ramsey0 {

namespace {

constexpr Vertex kExhaustiveDensityCap = 24;
constexpr Vertex kEllDensityCap = 20;

std::vector<std::uint32_t> edge_masks(const Hypergraph& g) {
  std::vector<std::uint32_t> masks(g.num_edges(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    for (auto v : g.edge(e)) masks[e] |= 1u << v;
  }
  return masks;
}

std::int64_t edges_inside(const std::vector<std::uint32_t>& masks, std::uint32_t s) {
  std::int64_t count = 0;
  for (auto m : masks) count += (m & s) == m;
  return count;
}

std::vector<Vertex> mask_vertices(std::uint32_t s) {
  std::vector<Vertex> out;
  for (Vertex v = 0; s; ++v, s >>= 1) {
    if (s & 1u) out.push_back(v);
  }
  return out;
}

std::vector<Vertex> all_vertices(const Hypergraph& g) {
  std::vector<Vertex> out(g.num_vertices());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

// Largest value of b*e(S) - a*|S| and a set attaining it (the minimal one).
std::pair<std::int64_t, std::vector<Vertex>> best_excess(const Hypergraph& g, std::int64_t a, std::int64_t b) {
  const std::size_t m = g.num_edges();
  const Vertex n = g.num_vertices();
  const std::size_t source = m + n, sink = m + n + 1;
  detail::MaxFlow flow(m + n + 2);
  for (EdgeId e = 0; e < m; ++e) {
    flow.add_edge(source, e, b);
    for (auto v : g.edge(e)) flow.add_edge(e, m + v, detail::MaxFlow::kInfinite);
  }
  for (Vertex v = 0; v < n; ++v) flow.add_edge(m + v, sink, a);
  const std::int64_t cut = flow.run(source, sink);
  auto side = flow.source_side(source);
  std::vector<Vertex> s;
  for (Vertex v = 0; v < n; ++v) {
    if (side[m + v]) s.push_back(v);
  }
  return {b * static_cast<std::int64_t>(m) - cut, s};
}

}  // namespace

Rational density(const Hypergraph& g) {
  if (g.num_vertices() == 0) throw InputError("density of a graph without vertices");
  return Rational(static_cast<std::int64_t>(g.num_edges()), g.num_vertices());
}

DensestSet max_density(const Hypergraph& g) {
  if (g.num_vertices() == 0) throw InputError("max density of a graph without vertices");
  // Dinkelbach iteration: each round either certifies the current ratio or
  // returns a set with a strictly larger one.
  DensestSet best{density(g), all_vertices(g)};
  while (true) {
    auto [excess, s] = best_excess(g, best.value.numerator(), best.value.denominator());
    if (excess <= 0 || s.empty()) return best;
    auto sub = induced_subgraph(g, s).graph;
    Rational candidate = density(sub);
    if (candidate <= best.value) return best;
    best = {candidate, std::move(s)};
  }
}

DensestSet max_density_exhaustive(const Hypergraph& g) {
  const Vertex n = g.num_vertices();
  if (n == 0) throw InputError("max density of a graph without vertices");
  if (n > kExhaustiveDensityCap) throw InputError("exhaustive density search limited to 24 vertices");
  auto masks = edge_masks(g);
  DensestSet best{Rational(0), {0}};
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    Rational d(edges_inside(masks, s), std::popcount(s));
    if (d > best.value) best = {d, mask_vertices(s)};
  }
  return best;
}

Rational ell_density(const Hypergraph& g) {
  const auto ell = static_cast<Vertex>(g.uniformity());
  if (g.num_vertices() < ell + 1) throw InputError("l-density needs at least l + 1 vertices");
  return Rational(static_cast<std::int64_t>(g.num_edges()) - 1, g.num_vertices() - ell);
}

namespace {

// Best l-density over vertex subsets; ties go to the larger set.
// `skip_full` leaves out S = V(G).
std::optional<DensestSet> best_ell_subset(const Hypergraph& g, bool skip_full) {
  const Vertex n = g.num_vertices();
  const auto ell = static_cast<Vertex>(g.uniformity());
  if (n > kEllDensityCap) throw InputError("l-density search limited to 20 vertices");
  auto masks = edge_masks(g);
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::optional<DensestSet> best;
  std::uint32_t best_mask = 0;
  for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
    const auto size = static_cast<Vertex>(std::popcount(s));
    if (size < ell + 1 || (skip_full && s == full)) continue;
    Rational d(edges_inside(masks, s) - 1, size - ell);
    if (!best || d > best->value ||
        (d == best->value && std::popcount(s) > std::popcount(best_mask))) {
      best = DensestSet{d, {}};
      best_mask = s;
    }
  }
  if (best) best->witness = mask_vertices(best_mask);
  return best;
}

}  // namespace

DensestSet max_ell_density(const Hypergraph& g) {
  if (g.num_vertices() < static_cast<Vertex>(g.uniformity()) + 1) {
    throw InputError("l-density needs at least l + 1 vertices");
  }
  return *best_ell_subset(g, false);
}

Balancedness balancedness(const Hypergraph& g) {
  const Rational own = ell_density(g);
  const Rational m = max_ell_density(g).value;
  Balancedness out;
  out.balanced = m == own;
  auto proper = best_ell_subset(g, true);
  out.strictly_balanced = out.balanced && (!proper || proper->value < m);
  return out;
}

int gamma(const Hypergraph& f) {
  if (f.num_edges() < 2) throw InputError("gamma needs at least two edges");
  int best = 0;
  for (EdgeId a = 0; a < f.num_edges(); ++a) {
    for (EdgeId b = a + 1; b < f.num_edges(); ++b) {
      auto x = f.edge(a), y = f.edge(b);
      std::vector<Vertex> common;
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
      best = std::max(best, static_cast<int>(common.size()));
    }
  }
  return best;
}

std::vector<Vertex> degeneracy_ordering(const Hypergraph& g, const Rational& k) {
  if (g.uniformity() != 2) throw UnsupportedError("degeneracy ordering is defined for graphs only");
  if (g.num_vertices() > 0 && max_density(g).value > k) {
    throw ContractError("degeneracy ordering: m(G) exceeds " + to_string(k));
  }
  const Vertex n = g.num_vertices();
  std::vector<std::vector<Vertex>> adj(n);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    adj[g.edge(e)[0]].push_back(g.edge(e)[1]);
    adj[g.edge(e)[1]].push_back(g.edge(e)[0]);
  }
  std::vector<std::size_t> deg(n);
  std::set<std::pair<std::size_t, Vertex>> queue;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = adj[v].size();
    queue.insert({deg[v], v});
  }
  std::vector<bool> removed(n, false);
  std::vector<Vertex> order;
  order.reserve(n);
  while (!queue.empty()) {
    auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    removed[v] = true;
    order.push_back(v);
    for (auto w : adj[v]) {
      if (removed[w]) continue;
      queue.erase({deg[w], w});
      queue.insert({--deg[w], w});
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

std::vector<std::size_t> Orientation::out_degrees(Vertex n) const {
  std::vector<std::size_t> out(n, 0);
  for (auto t : tail) ++out[t];
  return out;
}

Orientation bounded_orientation(const Hypergraph& g, int k) {
  if (g.uniformity() != 2) throw UnsupportedError("orientations are defined for graphs only");
  if (k < 0) throw InputError("out-degree bound must be non-negative");
  const std::size_t m = g.num_edges();
  const Vertex n = g.num_vertices();
  const std::size_t source = m + n, sink = m + n + 1;
  detail::MaxFlow flow(m + n + 2);
  for (EdgeId e = 0; e < m; ++e) {
    flow.add_edge(source, e, 1);
    flow.add_edge(e, m + g.edge(e)[0], 1);
    flow.add_edge(e, m + g.edge(e)[1], 1);
  }
  for (Vertex v = 0; v < n; ++v) flow.add_edge(m + v, sink, k);
  if (flow.run(source, sink) < static_cast<std::int64_t>(m)) {
    // Vertices reachable from the source span more than k|S| edges.
    auto side = flow.source_side(source);
    std::ostringstream msg;
    msg << "no orientation with out-degree <= " << k << "; dense vertex set {";
    bool first = true;
    for (Vertex v = 0; v < n; ++v) {
      if (!side[m + v]) continue;
      msg << (first ? "" : ",") << v;
      first = false;
    }
    msg << "}";
    throw ContractError(msg.str());
  }
  Orientation out;
  out.tail.resize(m);
  for (EdgeId e = 0; e < m; ++e) {
    // add_edge calls: 3e (source), 3e+1 (to first endpoint), 3e+2 (to second).
    out.tail[e] = flow.flow_on(3 * e + 1) > 0 ? g.edge(e)[0] : g.edge(e)[1];
  }
  return out;
}

DensityReport density_report(const Hypergraph& g) {
  DensityReport r;
  r.d = density(g);
  auto m = max_density(g);
  r.m = m.value;
  r.witness_m = m.witness;
  if (g.num_edges() >= 2) r.gamma = gamma(g);
  const auto ell = static_cast<Vertex>(g.uniformity());
  if (g.num_vertices() >= ell + 1) {
    r.d_ell = ell_density(g);
    if (g.num_vertices() <= kEllDensityCap) {
      auto me = max_ell_density(g);
      r.m_ell = me.value;
      r.witness_m_ell = me.witness;
      auto b = balancedness(g);
      r.balanced = b.balanced;
      r.strictly_balanced = b.strictly_balanced;
    }
  }
  return r;
}

}  // namespace ramsey0
