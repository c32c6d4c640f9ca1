#include "ramsey0/colorers.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

#include "ramsey0/canon.hpp"
#include "ramsey0/errors.hpp"

namespace ramsey0 {

namespace {

using Pair = std::pair<EdgeId, EdgeId>;

bool is_complete(const Hypergraph& f) {
  auto full = binomial(f.num_vertices(), static_cast<std::uint64_t>(f.uniformity()));
  return full && *full == f.num_edges();
}

bool is_cycle(const Hypergraph& f) {
  if (f.uniformity() != 2 || f.num_vertices() < 3 || !is_connected(f)) return false;
  auto deg = degrees(f);
  return std::all_of(deg.begin(), deg.end(), [](std::size_t d) { return d == 2; });
}

std::size_t min_pattern_degree(const Hypergraph& f) {
  auto deg = degrees(f);
  return deg.empty() ? 0 : *std::min_element(deg.begin(), deg.end());
}

Rational ell_threshold(const Hypergraph& f) {
  // Cliques are balanced, so their l-density is attained by the whole graph.
  if (is_complete(f) && f.num_vertices() > static_cast<Vertex>(f.uniformity())) return ell_density(f);
  return max_ell_density(f).value;
}

EdgeId edge_of(const Hypergraph& g, std::vector<Vertex> t) {
  std::sort(t.begin(), t.end());
  auto e = g.find_edge(t);
  if (!e) throw ContractError("missing edge in explicit coloring");
  return *e;
}

// Mutable state of a peeling procedure on a fixed block: which edges are
// still present and the colors given so far.
struct Work {
  explicit Work(const Hypergraph& g) : b(&g), alive(g.num_edges(), 1), color(g.num_edges(), kUncolored) {}

  const Hypergraph* b;
  std::vector<char> alive;
  std::vector<Color> color;
  Color next = 0;

  Color fresh() { return next++; }
  void set(EdgeId e, Color c) {
    color[e] = c;
    alive[e] = 0;
  }
  bool empty() const { return std::none_of(alive.begin(), alive.end(), [](char a) { return a != 0; }); }

  // Present edges on the block's vertex ids; ids maps back to block edges.
  Hypergraph current(std::vector<EdgeId>& ids) const {
    ids.clear();
    std::vector<Vertex> flat;
    for (EdgeId e = 0; e < b->num_edges(); ++e) {
      if (!alive[e]) continue;
      ids.push_back(e);
      flat.insert(flat.end(), b->edge(e).begin(), b->edge(e).end());
    }
    return Hypergraph::from_sorted_flat(b->uniformity(), b->num_vertices(), std::move(flat));
  }

  std::vector<EdgeId> alive_at(Vertex v) const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < b->num_edges(); ++e) {
      if (!alive[e]) continue;
      auto t = b->edge(e);
      if (std::find(t.begin(), t.end(), v) != t.end()) out.push_back(e);
    }
    return out;
  }

  std::vector<std::size_t> alive_degrees() const {
    std::vector<std::size_t> deg(b->num_vertices(), 0);
    for (EdgeId e = 0; e < b->num_edges(); ++e) {
      if (!alive[e]) continue;
      for (auto v : b->edge(e)) ++deg[v];
    }
    return deg;
  }
};

// Gives every present edge in no copy of f its own fresh color.
void strip_uncovered(Work& w, const Hypergraph& f) {
  std::vector<EdgeId> ids;
  auto cur = w.current(ids);
  if (cur.num_edges() == 0) return;
  auto idx = enumerate_copies(cur, f);
  std::vector<char> covered(cur.num_edges(), 0);
  for (auto e : idx.covered_edges()) covered[e] = 1;
  for (EdgeId e = 0; e < cur.num_edges(); ++e) {
    if (!covered[e]) w.set(ids[e], w.fresh());
  }
}

// Maximal pairing in list order, the odd edge out alone.
void pair_up(Work& w, const std::vector<EdgeId>& edges) {
  for (std::size_t i = 0; i < edges.size(); i += 2) {
    const Color c = w.fresh();
    w.set(edges[i], c);
    if (i + 1 < edges.size()) w.set(edges[i + 1], c);
  }
}

Coloring as_coloring(std::vector<Color> color, Variant variant, int r) {
  Coloring c;
  c.variant = variant;
  c.r = variant == Variant::proper ? 0 : r;
  c.color = std::move(color);
  return c;
}

// --- explicit colorings -----------------------------------------------------

// Pairs of the K6 coloring, vertices 0..5; edge {1,2} is the singleton.
const std::vector<std::pair<std::vector<Vertex>, std::vector<Vertex>>> kK6Pairs{
    {{0, 1}, {0, 2}}, {{0, 3}, {0, 4}}, {{0, 5}, {4, 5}}, {{1, 3}, {1, 5}},
    {{2, 3}, {2, 5}}, {{2, 4}, {1, 4}}, {{3, 4}, {3, 5}}};

const std::vector<std::pair<std::vector<Vertex>, std::vector<Vertex>>> kK53Pairs{
    {{0, 1, 4}, {0, 2, 4}}, {{0, 3, 4}, {2, 3, 4}}, {{1, 3, 4}, {0, 1, 3}},
    {{1, 2, 3}, {1, 2, 4}}, {{0, 1, 2}, {0, 2, 3}}};

// Colors the standard host through the vertex map std -> host.
std::vector<Color> map_pairs(const Hypergraph& host, const std::vector<Vertex>& map,
                             const std::vector<std::pair<std::vector<Vertex>, std::vector<Vertex>>>& pairs) {
  std::vector<Color> color(host.num_edges(), kUncolored);
  Color next = 0;
  auto image = [&](const std::vector<Vertex>& t) {
    std::vector<Vertex> out;
    for (auto v : t) out.push_back(map[v]);
    return edge_of(host, out);
  };
  for (const auto& [a, b] : pairs) {
    color[image(a)] = next;
    color[image(b)] = next;
    ++next;
  }
  for (auto& c : color) {
    if (c == kUncolored) c = next++;
  }
  return color;
}

std::vector<Vertex> identity_map(Vertex n) {
  std::vector<Vertex> id(n);
  std::iota(id.begin(), id.end(), Vertex{0});
  return id;
}

// --- proper stages ------------------------------------------------------------

// Clique stage: vertices in degeneracy order; at each vertex the first k-2
// back edges get new colors, back neighbors without a clique through both
// endpoints get new colors, and each remaining one reuses the color of an edge
// inside W (or a new color when W still holds a non-adjacent pair).
std::optional<std::vector<Color>> clique_stage(const Hypergraph& b, Vertex k, const Rational& m2) {
  const Vertex n = b.num_vertices();
  std::vector<char> adj(static_cast<std::size_t>(n) * n, 0);
  for (EdgeId e = 0; e < b.num_edges(); ++e) {
    auto t = b.edge(e);
    adj[t[0] * n + t[1]] = adj[t[1] * n + t[0]] = 1;
  }
  auto adjacent = [&](Vertex x, Vertex y) { return adj[x * n + y] != 0; };
  const auto order = degeneracy_ordering(b, m2);
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;

  std::vector<Color> color(b.num_edges(), kUncolored);
  Color next = 0;
  auto paint = [&](Vertex x, Vertex y, Color c) { color[edge_of(b, {x, y})] = c; };
  auto colors_at = [&](Vertex x, std::size_t before) {
    std::vector<Color> out;
    for (Vertex y = 0; y < n; ++y) {
      if (y == x || !adjacent(x, y) || pos[y] >= before) continue;
      const Color c = color[edge_of(b, {x, y})];
      if (c != kUncolored) out.push_back(c);
    }
    return out;
  };
  // Is there a clique of the given size among the candidates?
  std::function<bool(std::vector<Vertex>&, std::size_t, std::size_t)> has_clique =
      [&](std::vector<Vertex>& cand, std::size_t from, std::size_t need) -> bool {
    if (need == 0) return true;
    for (std::size_t i = from; i + need <= cand.size(); ++i) {
      std::vector<Vertex> rest;
      for (std::size_t j = i + 1; j < cand.size(); ++j) {
        if (adjacent(cand[i], cand[j])) rest.push_back(cand[j]);
      }
      if (rest.size() + 1 >= need && has_clique(rest, 0, need - 1)) return true;
    }
    return false;
  };

  for (std::size_t t = 0; t < order.size(); ++t) {
    const Vertex v = order[t];
    std::vector<Vertex> back;
    for (Vertex y = 0; y < n; ++y) {
      if (adjacent(v, y) && pos[y] < t) back.push_back(y);
    }
    std::sort(back.begin(), back.end(), [&](Vertex x, Vertex y) { return pos[x] < pos[y]; });
    const std::size_t w_size = std::min<std::size_t>(back.size(), k - 2);
    for (std::size_t i = 0; i < w_size; ++i) paint(v, back[i], next++);
    if (back.size() <= w_size) continue;
    std::vector<Vertex> w_set(back.begin(), back.begin() + static_cast<std::ptrdiff_t>(w_size));

    std::vector<Vertex> rest;
    for (std::size_t i = w_size; i < back.size(); ++i) {
      const Vertex u = back[i];
      std::vector<Vertex> common;
      for (Vertex y = 0; y < n; ++y) {
        if (pos[y] < pos[u] && adjacent(y, u) && adjacent(y, v)) common.push_back(y);
      }
      if (has_clique(common, 0, k - 2)) {
        rest.push_back(u);
      } else {
        paint(v, u, next++);
      }
    }

    std::vector<char> used(n, 0);
    for (const Vertex u : rest) {
      std::vector<Vertex> free_w;
      for (auto x : w_set) {
        if (!used[x]) free_w.push_back(x);
      }
      std::optional<std::pair<Vertex, Vertex>> non_edge;
      for (std::size_t a = 0; a < free_w.size() && !non_edge; ++a) {
        for (std::size_t c = a + 1; c < free_w.size(); ++c) {
          if (!adjacent(free_w[a], free_w[c])) {
            non_edge = std::pair{free_w[a], free_w[c]};
            break;
          }
        }
      }
      if (non_edge) {
        used[non_edge->first] = used[non_edge->second] = 1;
        paint(v, u, next++);
        continue;
      }
      // Every color at u or v is forbidden. This contains C_j (colors at u
      // that occur in G_{j-1}) and keeps the coloring proper.
      std::vector<Color> forbidden = colors_at(u, t);
      auto at_v = colors_at(v, t);
      forbidden.insert(forbidden.end(), at_v.begin(), at_v.end());
      std::sort(forbidden.begin(), forbidden.end());
      std::optional<std::pair<Vertex, Vertex>> pick;
      Color pick_color = kUncolored;
      for (std::size_t a = 0; a < free_w.size() && !pick; ++a) {
        for (std::size_t c = a + 1; c < free_w.size(); ++c) {
          const Color col = color[edge_of(b, {free_w[a], free_w[c]})];
          if (!std::binary_search(forbidden.begin(), forbidden.end(), col)) {
            pick = std::pair{free_w[a], free_w[c]};
            pick_color = col;
            break;
          }
        }
      }
      if (!pick) return std::nullopt;
      used[pick->first] = used[pick->second] = 1;
      paint(v, u, pick_color);
    }
  }
  return color;
}

// Cycle stage: strip edges in no copy; give the two outer edges of adjacent
// degree-2 vertices one new color; repeat without those two vertices.
std::optional<std::vector<Color>> cycle_stage(const Hypergraph& b, const Hypergraph& f) {
  Work w(b);
  for (;;) {
    strip_uncovered(w, f);
    if (w.empty()) return w.color;
    const auto deg = w.alive_degrees();
    bool progressed = false;
    for (EdgeId e = 0; e < b.num_edges() && !progressed; ++e) {
      if (!w.alive[e]) continue;
      const Vertex v1 = b.edge(e)[0], v2 = b.edge(e)[1];
      if (deg[v1] != 2 || deg[v2] != 2) continue;
      auto outer = [&](Vertex v) {
        for (auto x : w.alive_at(v)) {
          if (x != e) return x;
        }
        return e;
      };
      const EdgeId e1 = outer(v1), e2 = outer(v2);
      auto t1 = b.edge(e1), t2 = b.edge(e2);
      const Vertex x1 = t1[0] == v1 ? t1[1] : t1[0];
      const Vertex x2 = t2[0] == v2 ? t2[1] : t2[0];
      if (x1 == x2) continue;
      const Color c = w.fresh();
      w.set(e1, c);
      w.set(e2, c);
      w.set(e, w.fresh());
      progressed = true;
    }
    if (!progressed) return std::nullopt;
  }
}

// --- bounded stages -----------------------------------------------------------

// Peels a vertex of degree <= 2delta(F)-2 with a maximal pairing of its edges;
// otherwise two adjacent vertices of degree 2delta(F)-1 (new color on the
// joining edge, maximal pairings on the rest) when F has no adjacent pair of
// minimum-degree vertices.
std::optional<std::vector<Color>> peeling_stage(const Hypergraph& b, const Hypergraph& f) {
  const std::size_t delta = min_pattern_degree(f);
  if (delta == 0) return std::nullopt;
  const auto fdeg = degrees(f);
  bool adjacent_min = false;
  for (EdgeId e = 0; e < f.num_edges(); ++e) {
    auto t = f.edge(e);
    if (fdeg[t[0]] == delta && fdeg[t[1]] == delta) adjacent_min = true;
  }
  Work w(b);
  for (;;) {
    strip_uncovered(w, f);
    if (w.empty()) return w.color;
    const auto deg = w.alive_degrees();
    std::optional<Vertex> low;
    for (Vertex v = 0; v < b.num_vertices(); ++v) {
      if (deg[v] > 0 && (!low || deg[v] < deg[*low])) low = v;
    }
    if (low && deg[*low] + 2 <= 2 * delta) {
      pair_up(w, w.alive_at(*low));
      continue;
    }
    if (adjacent_min) return std::nullopt;
    std::optional<EdgeId> joint;
    for (EdgeId e = 0; e < b.num_edges() && !joint; ++e) {
      if (!w.alive[e]) continue;
      auto t = b.edge(e);
      if (deg[t[0]] + 1 == 2 * delta && deg[t[1]] + 1 == 2 * delta) joint = e;
    }
    if (!joint) return std::nullopt;
    const Vertex v1 = b.edge(*joint)[0], v2 = b.edge(*joint)[1];
    w.set(*joint, w.fresh());
    pair_up(w, w.alive_at(v1));
    pair_up(w, w.alive_at(v2));
  }
}

// Orientation stage: out-degree <= ceil(m(B)); each vertex pairs its own
// out-edges. Variant (ii) orders the vertices so that each has at most
// ceil(m(B)) - 1 out-neighbors later on, and pairs those edges first.
std::optional<BlockColoring> orientation_stage(const Hypergraph& b, const Hypergraph& f) {
  const Rational m = max_density(b).value;
  const auto k = static_cast<int>(ceil(m));
  if (k < 1) return std::nullopt;
  const Orientation orient = bounded_orientation(b, k);
  const Rational mf = max_density(f).value;
  const Vertex n = b.num_vertices();
  const bool plain = Rational(ceil(m / 2)) < mf;

  std::vector<std::vector<EdgeId>> out(n);
  for (EdgeId e = 0; e < b.num_edges(); ++e) out[orient.tail[e]].push_back(e);

  std::vector<std::size_t> rank(n, 0);
  bool ordered = false;
  if (!plain) {
    // Repeatedly take the smallest vertex with < k out-neighbors among the rest.
    std::vector<char> gone(n, 0);
    std::vector<std::size_t> live_out(n);
    for (Vertex v = 0; v < n; ++v) live_out[v] = out[v].size();
    std::vector<std::vector<EdgeId>> in(n);
    for (EdgeId e = 0; e < b.num_edges(); ++e) in[orient.head(b, e)].push_back(e);
    ordered = true;
    for (std::size_t i = 0; i < n && ordered; ++i) {
      std::optional<Vertex> pick;
      for (Vertex v = 0; v < n && !pick; ++v) {
        if (!gone[v] && live_out[v] + 1 <= static_cast<std::size_t>(k)) pick = v;
      }
      if (!pick) {
        ordered = false;
        break;
      }
      gone[*pick] = 1;
      rank[*pick] = i;
      for (auto e : in[*pick]) --live_out[orient.tail[e]];
    }
  }

  Work w(b);
  for (Vertex v = 0; v < n; ++v) {
    auto edges = out[v];
    if (ordered) {
      std::stable_partition(edges.begin(), edges.end(),
                            [&](EdgeId e) { return rank[orient.head(b, e)] > rank[v]; });
    }
    pair_up(w, edges);
  }
  BlockColoring bc;
  bc.color = std::move(w.color);
  bc.stage = ordered ? "orientation-ii" : "orientation-i";
  bc.orientation = orient;
  return bc;
}

// K4 stage on the edge subset marked alive in w.
bool k4_recursive(Work& w, const Hypergraph& k4) {
  const Hypergraph& b = *w.b;
  for (;;) {
    strip_uncovered(w, k4);
    if (w.empty()) return true;
    auto deg = w.alive_degrees();
    std::optional<Vertex> low;
    for (Vertex v = 0; v < b.num_vertices() && !low; ++v) {
      if (deg[v] > 0 && deg[v] < 5) low = v;
    }
    if (low) {
      pair_up(w, w.alive_at(*low));
      continue;
    }
    std::vector<EdgeId> ids;
    const auto cur = w.current(ids);
    std::vector<EdgeId> all(cur.num_edges());
    std::iota(all.begin(), all.end(), EdgeId{0});
    const auto rel = edge_induced_subgraph(cur, all);
    if (rel.graph.num_vertices() == 6 && rel.graph.num_edges() == 15) {
      std::vector<Vertex> map(6);
      for (Vertex i = 0; i < 6; ++i) map[i] = rel.to_original[i];
      const auto local = map_pairs(b, map, kK6Pairs);
      std::unordered_map<Color, Color> fresh;
      for (auto e : ids) {
        auto [it, added] = fresh.emplace(local[e], 0);
        if (added) it->second = w.fresh();
        w.set(e, it->second);
      }
      return true;
    }
    std::optional<Vertex> v;
    for (Vertex x = 0; x < b.num_vertices() && !v; ++x) {
      if (deg[x] == 5) v = x;
    }
    if (!v) return false;
    const auto at_v = w.alive_at(*v);
    std::vector<Vertex> nb;
    for (auto e : at_v) {
      auto t = b.edge(e);
      nb.push_back(t[0] == *v ? t[1] : t[0]);
    }
    auto linked = [&](Vertex x, Vertex y) {
      auto e = b.find_edge(std::vector<Vertex>{std::min(x, y), std::max(x, y)});
      return e && w.alive[*e];
    };
    std::optional<std::size_t> w1;
    for (std::size_t i = 0; i < nb.size() && !w1; ++i) {
      std::size_t inside = 0;
      for (std::size_t j = 0; j < nb.size(); ++j) inside += j != i && linked(nb[i], nb[j]);
      if (inside <= 2) w1 = i;
    }
    if (w1) {
      // Singleton on v w1, pairs on two non-neighbors of w1 and on the rest.
      std::vector<EdgeId> non, other;
      for (std::size_t j = 0; j < nb.size(); ++j) {
        if (j == *w1) continue;
        (!linked(nb[*w1], nb[j]) && non.size() < 2 ? non : other).push_back(at_v[j]);
      }
      w.set(at_v[*w1], w.fresh());
      pair_up(w, non);
      pair_up(w, other);
      continue;
    }
    // G[N(v)] has minimum degree >= 3: no copy meets both N[v] and the rest.
    std::vector<char> closed(b.num_vertices(), 0);
    closed[*v] = 1;
    for (auto x : nb) closed[x] = 1;
    const auto idx = enumerate_copies(cur, k4);
    for (CopyId c = 0; c < idx.num_copies(); ++c) {
      std::size_t in = 0, all = 0;
      for (auto e : idx.copy(c)) {
        for (auto x : cur.edge(e)) {
          in += closed[x];
          ++all;
        }
      }
      if (in != 0 && in != all) return false;
    }
    Work inner = w, outer = w;
    for (auto e : ids) {
      auto t = b.edge(e);
      const bool inside = closed[t[0]] && closed[t[1]];
      (inside ? outer : inner).alive[e] = 0;
    }
    if (!k4_recursive(inner, k4)) return false;
    outer.next = inner.next;
    for (EdgeId e = 0; e < b.num_edges(); ++e) {
      if (inner.color[e] != kUncolored) outer.color[e] = inner.color[e];
    }
    if (!k4_recursive(outer, k4)) return false;
    w.color = outer.color;
    w.next = outer.next;
    std::fill(w.alive.begin(), w.alive.end(), 0);
    return true;
  }
}

std::optional<std::vector<Color>> k4_stage(const Hypergraph& b) {
  Work w(b);
  if (!k4_recursive(w, complete_hypergraph(2, 4))) return std::nullopt;
  return w.color;
}

// Link stage for F = K_r^(l), l >= 3: color the link of a minimum-degree
// vertex against K_{r-1}^(l-1), lift, and continue without that vertex.
// `color_link` returns link colors or nothing.
template <class ColorLink>
std::optional<std::vector<Color>> link_stage(const Hypergraph& b, const Hypergraph& f, bool fresh_palettes,
                                             ColorLink color_link) {
  const Hypergraph smaller = complete_hypergraph(f.uniformity() - 1, f.num_vertices() - 1);
  Work w(b);
  for (;;) {
    if (fresh_palettes) {
      strip_uncovered(w, f);
    } else {
      // Ramsey: edges outside every copy can take any color.
      std::vector<EdgeId> ids;
      auto cur = w.current(ids);
      if (cur.num_edges() > 0) {
        auto idx = enumerate_copies(cur, f);
        std::vector<char> covered(cur.num_edges(), 0);
        for (auto e : idx.covered_edges()) covered[e] = 1;
        for (EdgeId e = 0; e < cur.num_edges(); ++e) {
          if (!covered[e]) w.set(ids[e], 0);
        }
      }
    }
    if (w.empty()) return w.color;
    std::vector<EdgeId> ids;
    const auto cur = w.current(ids);
    const auto deg = degrees(cur);
    std::optional<Vertex> u;
    for (Vertex v = 0; v < cur.num_vertices(); ++v) {
      if (deg[v] > 0 && (!u || deg[v] < deg[*u])) u = v;
    }
    std::vector<EdgeId> source;
    const Hypergraph lk = link(cur, *u, &source);
    auto link_colors = color_link(lk, smaller);
    if (!link_colors) return std::nullopt;
    std::unordered_map<Color, Color> palette;
    for (EdgeId i = 0; i < lk.num_edges(); ++i) {
      Color c = (*link_colors)[i];
      if (fresh_palettes) {
        auto [it, added] = palette.emplace(c, 0);
        if (added) it->second = w.fresh();
        c = it->second;
      }
      w.set(ids[source[i]], c);
    }
  }
}

std::optional<std::vector<Color>> explicit_stage(const Hypergraph& b, const Hypergraph& f) {
  auto try_map = [&](const Hypergraph& std_host, const Hypergraph& std_f,
                     const std::vector<std::pair<std::vector<Vertex>, std::vector<Vertex>>>& pairs)
      -> std::optional<std::vector<Color>> {
    if (b.uniformity() != std_host.uniformity() || b.num_vertices() != std_host.num_vertices() ||
        b.num_edges() != std_host.num_edges() || f.num_vertices() != std_f.num_vertices() ||
        f.num_edges() != std_f.num_edges() || f.uniformity() != std_f.uniformity() || !are_isomorphic(f, std_f)) {
      return std::nullopt;
    }
    auto map = find_isomorphism(std_host, b);
    if (!map) return std::nullopt;
    return map_pairs(b, *map, pairs);
  };
  if (auto c = try_map(complete_hypergraph(2, 6), complete_hypergraph(2, 4), kK6Pairs)) return c;
  if (auto c = try_map(complete_hypergraph(3, 5), complete_hypergraph(3, 4), kK53Pairs)) return c;
  return std::nullopt;
}

bool exhaustive_allowed(const Hypergraph& b, const ColorerOptions& o) {
  return o.allow_exhaustive && b.num_edges() <= o.exhaustive_max_edges;
}

}  // namespace

std::optional<BlockColoring> proper_block_colorer(const Hypergraph& b, const Hypergraph& f,
                                                  const ColorerOptions& options) {
  if (b.uniformity() != 2 || f.uniformity() != 2) throw InputError("proper colorings need graphs");
  const Rational m2 = ell_threshold(f);
  if (b.num_edges() > 0 && max_density(b).value > m2) {
    throw ContractError("block density " + to_string(max_density(b).value) + " exceeds m_2(F) = " + to_string(m2));
  }
  const auto idx = enumerate_copies(b, f);
  auto accept = [&](std::vector<Color> color, const char* stage) -> std::optional<BlockColoring> {
    Coloring c = as_coloring(std::move(color), Variant::proper, 0);
    normalize_colors(c);
    if (!verify(b, c) || find_rainbow_copy(c, idx)) return std::nullopt;
    return BlockColoring{std::move(c.color), stage, std::nullopt};
  };
  if (is_complete(f) && f.num_vertices() >= 19) {
    if (auto c = clique_stage(b, f.num_vertices(), m2)) {
      if (auto r = accept(std::move(*c), "clique")) return r;
    }
  }
  if (is_cycle(f) && f.num_vertices() >= 7) {
    if (auto c = cycle_stage(b, f)) {
      if (auto r = accept(std::move(*c), "cycle")) return r;
    }
  }
  if (exhaustive_allowed(b, options)) {
    auto d = decide_anti_ramsey_proper(idx, options.exhaustive);
    if (d.arrow == Arrow::fails) return accept(std::move(d.witness->color), "exhaustive");
  }
  return std::nullopt;
}

std::optional<BlockColoring> bounded_block_colorer(const Hypergraph& b, const Hypergraph& f,
                                                   const ColorerOptions& options) {
  if (b.uniformity() != f.uniformity()) throw InputError("host and pattern uniformities differ");
  const auto idx = enumerate_copies(b, f);
  auto accept = [&](std::vector<Color> color, std::string stage,
                    std::optional<Orientation> orient = std::nullopt) -> std::optional<BlockColoring> {
    Coloring c = as_coloring(std::move(color), Variant::bounded, 2);
    normalize_colors(c);
    if (!verify(b, c) || find_rainbow_copy(c, idx)) return std::nullopt;
    return BlockColoring{std::move(c.color), std::move(stage), std::move(orient)};
  };
  if (idx.num_copies() == 0) {
    std::vector<Color> color(b.num_edges());
    std::iota(color.begin(), color.end(), Color{0});
    return accept(std::move(color), "trivial");
  }
  if (auto c = explicit_stage(b, f)) {
    if (auto r = accept(std::move(*c), "explicit")) return r;
  }
  if (b.uniformity() == 2) {
    if (auto c = peeling_stage(b, f)) {
      if (auto r = accept(std::move(*c), "peeling")) return r;
    }
    if (auto o = orientation_stage(b, f)) {
      if (auto r = accept(std::move(o->color), o->stage, o->orientation)) return r;
    }
    if (is_complete(f) && f.num_vertices() == 4) {
      if (auto c = k4_stage(b)) {
        if (auto r = accept(std::move(*c), "k4")) return r;
      }
    }
  } else if (is_complete(f) && f.num_vertices() > static_cast<Vertex>(f.uniformity())) {
    auto c = link_stage(b, f, true, [&](const Hypergraph& lk, const Hypergraph& smaller) -> std::optional<std::vector<Color>> {
      auto res = strip_and_color_bounded(lk, smaller, options);
      if (!res.success) return std::nullopt;
      return std::move(res.coloring.color);
    });
    if (c) {
      if (auto r = accept(std::move(*c), "link")) return r;
    }
  }
  if (exhaustive_allowed(b, options)) {
    auto d = decide_anti_ramsey_bounded(idx, 2, options.exhaustive);
    if (d.arrow == Arrow::fails) return accept(std::move(d.witness->color), "exhaustive");
  }
  return std::nullopt;
}

std::optional<BlockColoring> ramsey_block_colorer(const Hypergraph& b, const Hypergraph& f, int r,
                                                  const ColorerOptions& options) {
  if (r < 2) throw InputError("ramsey colorings need r >= 2");
  if (b.uniformity() != f.uniformity()) throw InputError("host and pattern uniformities differ");
  const auto idx = enumerate_copies(b, f);
  auto accept = [&](std::vector<Color> color, const char* stage) -> std::optional<BlockColoring> {
    Coloring c = as_coloring(std::move(color), Variant::color, r);
    if (!verify(b, c) || find_monochromatic_copy(c, idx)) return std::nullopt;
    return BlockColoring{std::move(c.color), stage, std::nullopt};
  };
  if (idx.num_copies() == 0) return accept(std::vector<Color>(b.num_edges(), 0), "trivial");
  if (b.uniformity() >= 3 && is_complete(f) && f.num_vertices() > static_cast<Vertex>(f.uniformity())) {
    auto c = link_stage(b, f, false, [&](const Hypergraph& lk, const Hypergraph& smaller) -> std::optional<std::vector<Color>> {
      auto res = ramsey_two_coloring(lk, smaller, r, options);
      if (!res.success) return std::nullopt;
      return std::move(res.coloring.color);
    });
    if (c) {
      if (auto res = accept(std::move(*c), "link")) return res;
    }
  }
  ColorerOptions no_fallback = options;
  no_fallback.allow_exhaustive = false;
  if (auto bc = bounded_block_colorer(b, f, no_fallback)) {
    // Split each color class: the first edge gets 0, the second 1.
    std::vector<Color> color(b.num_edges());
    std::unordered_map<Color, int> seen;
    for (EdgeId e = 0; e < b.num_edges(); ++e) color[e] = seen[bc->color[e]]++ == 0 ? 0 : 1;
    if (auto res = accept(std::move(color), "reduction")) return res;
  }
  if (exhaustive_allowed(b, options)) {
    auto d = decide_ramsey(idx, r, options.exhaustive);
    if (d.arrow == Arrow::fails) return accept(std::move(d.witness->color), "exhaustive");
  }
  return std::nullopt;
}

namespace {

enum class Mode { proper, bounded, ramsey };

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

bool disjoint(const Hypergraph& g, EdgeId a, EdgeId b) {
  auto x = g.edge(a), y = g.edge(b);
  return std::none_of(x.begin(), x.end(), [&](Vertex v) { return std::find(y.begin(), y.end(), v) != y.end(); });
}

// Loop 1 bookkeeping. Edges are bucketed by a hash of their live copy set;
// each bucket keeps its smallest qualifying pair in a global ordered set.
class Stripper {
 public:
  Stripper(const CopyIndex& idx, bool need_disjoint) : idx_(idx), need_disjoint_(need_disjoint) {
    const auto& g = idx.host();
    alive_copy_.assign(idx.num_copies(), 1);
    key_.assign(g.num_edges(), 0);
    live_.assign(g.num_edges(), 0);
    removed_.assign(g.num_edges(), 0);
    for (auto e : idx.covered_edges()) {
      for (auto c : idx.copies_of(e)) key_[e] += mix(c);
      live_[e] = static_cast<std::uint32_t>(idx.copies_of(e).size());
      buckets_[key_[e]].insert(e);
    }
    for (auto& [key, members] : buckets_) refresh(key);
  }

  std::optional<Pair> next_pair() const {
    if (candidates_.empty()) return std::nullopt;
    auto [a, b, key] = *candidates_.begin();
    return Pair{a, b};
  }

  void remove_pair(EdgeId a, EdgeId b) {
    std::set<std::uint64_t> touched;
    take(a, touched);
    take(b, touched);
    for (auto c : idx_.copies_of(a)) {
      if (!alive_copy_[c]) continue;
      alive_copy_[c] = 0;
      for (auto x : idx_.copy(c)) {
        if (removed_[x]) continue;
        detach(x, touched);
        key_[x] -= mix(c);
        if (--live_[x] > 0) {
          buckets_[key_[x]].insert(x);
          touched.insert(key_[x]);
        }
      }
    }
    for (auto k : touched) refresh(k);
  }

  bool removed(EdgeId e) const { return removed_[e] != 0; }
  std::uint32_t live(EdgeId e) const { return live_[e]; }
  bool copy_alive(CopyId c) const { return alive_copy_[c] != 0; }

 private:
  void take(EdgeId e, std::set<std::uint64_t>& touched) {
    detach(e, touched);
    removed_[e] = 1;
  }

  void detach(EdgeId e, std::set<std::uint64_t>& touched) {
    if (live_[e] == 0) return;
    auto it = buckets_.find(key_[e]);
    if (it == buckets_.end()) return;
    it->second.erase(e);
    touched.insert(key_[e]);
  }

  std::vector<CopyId> live_list(EdgeId e) const {
    std::vector<CopyId> out;
    for (auto c : idx_.copies_of(e)) {
      if (alive_copy_[c]) out.push_back(c);
    }
    return out;
  }

  void refresh(std::uint64_t key) {
    if (auto old = current_.find(key); old != current_.end()) {
      candidates_.erase(old->second);
      current_.erase(old);
    }
    auto it = buckets_.find(key);
    if (it == buckets_.end()) return;
    if (it->second.size() < 2) {
      if (it->second.empty()) buckets_.erase(it);
      return;
    }
    const std::vector<EdgeId> members(it->second.begin(), it->second.end());
    std::vector<std::vector<CopyId>> lists;
    lists.reserve(members.size());
    for (auto e : members) lists.push_back(live_list(e));
    std::optional<Pair> best;
    for (std::size_t i = 0; i < members.size() && !best; ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (lists[i] != lists[j]) continue;
        if (need_disjoint_ && !disjoint(idx_.host(), members[i], members[j])) continue;
        best = Pair{members[i], members[j]};
        break;
      }
    }
    if (!best) return;
    auto entry = std::tuple{best->first, best->second, key};
    candidates_.insert(entry);
    current_[key] = entry;
  }

  const CopyIndex& idx_;
  bool need_disjoint_;
  std::vector<char> alive_copy_;
  std::vector<std::uint64_t> key_;
  std::vector<std::uint32_t> live_;
  std::vector<char> removed_;
  std::unordered_map<std::uint64_t, std::set<EdgeId>> buckets_;
  std::set<std::tuple<EdgeId, EdgeId, std::uint64_t>> candidates_;
  std::unordered_map<std::uint64_t, std::tuple<EdgeId, EdgeId, std::uint64_t>> current_;
};

StripResult strip(const CopyIndex& idx, Mode mode, int r, const ColorerOptions& options) {
  const Hypergraph& g = idx.host();
  const Hypergraph& f = idx.pattern();
  if (mode == Mode::proper && g.uniformity() != 2) throw InputError("Algorithm 2 needs graphs");
  if (mode == Mode::ramsey && r < 2) throw InputError("ramsey colorings need r >= 2");
  StripResult res;
  res.coloring.variant = mode == Mode::proper ? Variant::proper : mode == Mode::bounded ? Variant::bounded : Variant::color;
  res.coloring.r = mode == Mode::proper ? 0 : mode == Mode::bounded ? 2 : r;
  auto& color = res.coloring.color;
  color.assign(g.num_edges(), kUncolored);
  Color next = 0;
  const bool ramsey = mode == Mode::ramsey;

  Stripper s(idx, mode == Mode::proper);
  while (auto p = s.next_pair()) {
    if (ramsey) {
      color[p->first] = 0;
      color[p->second] = 1;
    } else {
      color[p->first] = color[p->second] = next++;
    }
    res.events.push_back({p->first, p->second});
    ++res.loop1_pairs;
    s.remove_pair(p->first, p->second);
  }
  // Loop 2. Removing an edge outside every live copy changes no other copy
  // set, so no new equivalent pairs appear.
  std::vector<char> covered(g.num_edges(), 0);
  for (auto e : idx.covered_edges()) covered[e] = 1;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (s.removed(e) || s.live(e) > 0) continue;
    color[e] = ramsey ? 0 : next++;
    ++res.loop2_edges;
    if (covered[e]) res.events.push_back({e, StripEvent::kNoEdge});
  }

  // Blocks: components of the remaining edges under live copies.
  std::vector<EdgeId> parent(g.num_edges());
  std::iota(parent.begin(), parent.end(), EdgeId{0});
  std::function<EdgeId(EdgeId)> find = [&](EdgeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (CopyId c = 0; c < idx.num_copies(); ++c) {
    if (!s.copy_alive(c)) continue;
    auto cp = idx.copy(c);
    for (std::size_t i = 1; i < cp.size(); ++i) parent[find(cp[i])] = find(cp[0]);
  }
  std::unordered_map<EdgeId, std::size_t> block_of;
  for (auto e : idx.covered_edges()) {
    if (s.removed(e) || s.live(e) == 0) continue;
    auto [it, added] = block_of.emplace(find(e), res.blocks.size());
    if (added) res.blocks.emplace_back();
    res.blocks[it->second].push_back(e);
  }

  for (std::size_t bi = 0; bi < res.blocks.size(); ++bi) {
    const auto& edges = res.blocks[bi];
    const Hypergraph b = edge_induced_subgraph(g, edges).graph;
    std::optional<BlockColoring> bc;
    try {
      switch (mode) {
        case Mode::proper:
          bc = proper_block_colorer(b, f, options);
          break;
        case Mode::bounded:
          bc = bounded_block_colorer(b, f, options);
          break;
        case Mode::ramsey:
          bc = ramsey_block_colorer(b, f, r, options);
          break;
      }
    } catch (const ContractError& e) {
      res.failure = e.what();
    }
    if (!bc) {
      res.failed_block = bi;
      if (res.failure.empty()) res.failure = "no block colorer handled block " + std::to_string(bi);
      return res;
    }
    res.block_stage.push_back(bc->stage);
    Color used = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Color c = bc->color[i];
      color[edges[i]] = ramsey ? c : next + c;
      used = std::max(used, c + 1);
    }
    if (!ramsey) next += used;
  }

  if (!verify(g, res.coloring)) {
    res.failure = "assembled coloring violates the variant constraint";
    return res;
  }
  const bool bad = ramsey ? find_monochromatic_copy(res.coloring, idx).has_value()
                          : find_rainbow_copy(res.coloring, idx).has_value();
  if (bad) {
    res.failure = ramsey ? "assembled coloring has a monochromatic copy" : "assembled coloring has a rainbow copy";
    return res;
  }
  res.success = true;
  return res;
}

}  // namespace

StripResult strip_and_color_proper(const CopyIndex& idx, const ColorerOptions& options) {
  return strip(idx, Mode::proper, 0, options);
}

StripResult strip_and_color_proper(const Hypergraph& g, const Hypergraph& f, const ColorerOptions& options) {
  if (g.uniformity() != 2 || f.uniformity() != 2) throw InputError("Algorithm 2 needs graphs");
  return strip_and_color_proper(enumerate_copies(g, f), options);
}

StripResult strip_and_color_bounded(const CopyIndex& idx, const ColorerOptions& options) {
  return strip(idx, Mode::bounded, 2, options);
}

StripResult strip_and_color_bounded(const Hypergraph& g, const Hypergraph& f, const ColorerOptions& options) {
  if (g.uniformity() != f.uniformity()) throw InputError("host and pattern uniformities differ");
  return strip_and_color_bounded(enumerate_copies(g, f), options);
}

StripResult ramsey_two_coloring(const CopyIndex& idx, int r, const ColorerOptions& options) {
  return strip(idx, Mode::ramsey, r, options);
}

StripResult ramsey_two_coloring(const Hypergraph& g, const Hypergraph& f, int r, const ColorerOptions& options) {
  if (g.uniformity() != f.uniformity()) throw InputError("host and pattern uniformities differ");
  return ramsey_two_coloring(enumerate_copies(g, f), r, options);
}

std::string check_strip_soundness(const CopyIndex& idx, const StripResult& res, bool disjoint_pairs) {
  const Hypergraph& g = idx.host();
  std::vector<char> alive(idx.num_copies(), 1);
  std::vector<char> gone(g.num_edges(), 0);
  auto live = [&](EdgeId e) {
    std::vector<CopyId> out;
    for (auto c : idx.copies_of(e)) {
      if (alive[c]) out.push_back(c);
    }
    return out;
  };
  for (std::size_t i = 0; i < res.events.size(); ++i) {
    const auto& ev = res.events[i];
    const std::string at = "event " + std::to_string(i) + ": ";
    if (ev.first >= g.num_edges() || gone[ev.first]) return at + "edge removed twice or out of range";
    if (ev.second == StripEvent::kNoEdge) {
      if (!live(ev.first).empty()) return at + "single edge still lies in a copy";
      gone[ev.first] = 1;
      continue;
    }
    if (ev.second >= g.num_edges() || gone[ev.second]) return at + "edge removed twice or out of range";
    const auto a = live(ev.first);
    if (a.empty() || a != live(ev.second)) return at + "pair is not equivalent";
    if (disjoint_pairs && !disjoint(g, ev.first, ev.second)) return at + "pair intersects";
    for (auto c : a) alive[c] = 0;
    gone[ev.first] = gone[ev.second] = 1;
  }
  for (const auto& block : res.blocks) {
    for (auto e : block) {
      if (gone[e] || live(e).empty()) return "block edge " + std::to_string(e) + " is in no surviving copy";
    }
  }
  return {};
}

std::vector<NamedColoring> explicit_colorings() {
  std::vector<NamedColoring> out;
  {
    NamedColoring k6;
    k6.name = "k6-fig2-coloring";
    k6.description = "K6 with seven color pairs and the singleton {1,2}; no rainbow K4";
    k6.host = complete_hypergraph(2, 6);
    k6.pattern = complete_hypergraph(2, 4);
    k6.coloring = as_coloring(map_pairs(k6.host, identity_map(6), kK6Pairs), Variant::bounded, 2);
    out.push_back(std::move(k6));
  }
  {
    NamedColoring k5;
    k5.name = "k5-3-no-rainbow-k4-3";
    k5.description = "K_5^(3) with five color pairs; no rainbow K_4^(3)";
    k5.host = complete_hypergraph(3, 5);
    k5.pattern = complete_hypergraph(3, 4);
    k5.coloring = as_coloring(map_pairs(k5.host, identity_map(5), kK53Pairs), Variant::bounded, 2);
    out.push_back(std::move(k5));
  }
  return out;
}

std::optional<NamedColoring> explicit_coloring(const std::string& name) {
  const std::string key = name == "k6-no-rainbow-k4" ? "k6-fig2-coloring" : name;
  for (auto& c : explicit_colorings()) {
    if (c.name == key) return c;
  }
  return std::nullopt;
}

}  // namespace ramsey0
