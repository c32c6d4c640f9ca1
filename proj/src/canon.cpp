#include "ramsey0/canon.hpp"

#include <algorithm>
#include <numeric>

#include "ramsey0/errors.hpp"

namespace ramsey0 {

std::size_t CanonicalFormHash::operator()(const CanonicalForm& c) const noexcept {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&](std::size_t x) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::size_t>(c.uniformity));
  mix(c.num_vertices);
  for (auto v : c.flat) mix(v);
  return h;
}

namespace {

struct Incidence {
  std::vector<std::size_t> offset;
  std::vector<EdgeId> edges;

  explicit Incidence(const Hypergraph& g) : offset(g.num_vertices() + 1, 0) {
    for (auto v : g.flat()) ++offset[v + 1];
    std::partial_sum(offset.begin(), offset.end(), offset.begin());
    edges.resize(g.flat().size());
    auto cursor = offset;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      for (auto v : g.edge(e)) edges[cursor[v]++] = e;
    }
  }
  std::span<const EdgeId> of(Vertex v) const {
    return {edges.data() + offset[v], offset[v + 1] - offset[v]};
  }
};

std::uint32_t dense_ranks(std::vector<std::uint32_t>& colors) {
  std::vector<std::uint32_t> values(colors);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  for (auto& c : colors) {
    c = static_cast<std::uint32_t>(std::lower_bound(values.begin(), values.end(), c) - values.begin());
  }
  return static_cast<std::uint32_t>(values.size());
}

std::vector<std::uint32_t> refine_with(const Hypergraph& g, const Incidence& inc, std::vector<std::uint32_t> colors) {
  const Vertex n = g.num_vertices();
  const std::size_t ell = static_cast<std::size_t>(g.uniformity());
  std::uint32_t count = dense_ranks(colors);
  std::vector<std::vector<std::uint32_t>> sig(n);
  std::vector<std::uint32_t> tuple;
  std::vector<std::vector<std::uint32_t>> parts;
  while (count < n) {
    for (Vertex v = 0; v < n; ++v) {
      parts.clear();
      for (auto e : inc.of(v)) {
        tuple.clear();
        for (auto u : g.edge(e)) {
          if (u != v) tuple.push_back(colors[u]);
        }
        std::sort(tuple.begin(), tuple.end());
        parts.push_back(tuple);
      }
      std::sort(parts.begin(), parts.end());
      auto& s = sig[v];
      s.clear();
      s.reserve(2 + parts.size() * (ell - 1));
      s.push_back(colors[v]);
      s.push_back(static_cast<std::uint32_t>(parts.size()));
      for (const auto& p : parts) s.insert(s.end(), p.begin(), p.end());
    }
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return sig[a] < sig[b]; });
    std::vector<std::uint32_t> next(n);
    std::uint32_t rank = 0;
    for (Vertex i = 0; i < n; ++i) {
      if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++rank;
      next[order[i]] = rank;
    }
    const std::uint32_t next_count = n == 0 ? 0 : rank + 1;
    colors.swap(next);
    if (next_count == count) break;
    count = next_count;
  }
  return colors;
}

std::vector<std::uint32_t> individualize(std::vector<std::uint32_t> colors, Vertex v) {
  const auto c = colors[v];
  for (Vertex u = 0; u < colors.size(); ++u) {
    if (u != v && colors[u] >= c) ++colors[u];
  }
  return colors;
}

std::vector<Vertex> relabeled_code(const Hypergraph& g, std::span<const std::uint32_t> lab) {
  const std::size_t ell = static_cast<std::size_t>(g.uniformity());
  const std::size_t m = g.num_edges();
  std::vector<Vertex> flat(m * ell);
  for (EdgeId e = 0; e < m; ++e) {
    auto t = g.edge(e);
    for (std::size_t k = 0; k < ell; ++k) flat[e * ell + k] = lab[t[k]];
    std::sort(flat.begin() + static_cast<std::ptrdiff_t>(e * ell),
              flat.begin() + static_cast<std::ptrdiff_t>((e + 1) * ell));
  }
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(flat.begin() + static_cast<std::ptrdiff_t>(a * ell),
                                        flat.begin() + static_cast<std::ptrdiff_t>((a + 1) * ell),
                                        flat.begin() + static_cast<std::ptrdiff_t>(b * ell),
                                        flat.begin() + static_cast<std::ptrdiff_t>((b + 1) * ell));
  });
  std::vector<Vertex> code;
  code.reserve(flat.size());
  for (auto i : order) {
    code.insert(code.end(), flat.begin() + static_cast<std::ptrdiff_t>(i * ell),
                flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * ell));
  }
  return code;
}

class CanonSearch {
 public:
  explicit CanonSearch(const Hypergraph& g) : g_(g), inc_(g) {}

  Canonical run() {
    std::vector<std::uint32_t> colors(g_.num_vertices(), 0);
    colors = refine_with(g_, inc_, std::move(colors));
    std::vector<Vertex> path;
    dfs(colors, path);
    Canonical out;
    out.form.uniformity = g_.uniformity();
    out.form.num_vertices = g_.num_vertices();
    out.form.flat = best_code_;
    out.labeling.assign(best_lab_.begin(), best_lab_.end());
    return out;
  }

 private:
  static constexpr std::size_t kMaxStoredAutomorphisms = 256;

  void store_automorphism(std::span<const std::uint32_t> lab_from, std::span<const std::uint32_t> lab_to) {
    if (autos_.size() >= kMaxStoredAutomorphisms) return;
    const Vertex n = g_.num_vertices();
    std::vector<Vertex> inverse_to(n);
    for (Vertex v = 0; v < n; ++v) inverse_to[lab_to[v]] = v;
    std::vector<Vertex> gamma(n);
    for (Vertex v = 0; v < n; ++v) gamma[v] = inverse_to[lab_from[v]];
    autos_.push_back(std::move(gamma));
  }

  static int divergence(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::size_t k = 0;
    while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
    return static_cast<int>(k);
  }

  // Returns the depth to resume at, or -1 to continue normally.
  int dfs(const std::vector<std::uint32_t>& colors, std::vector<Vertex>& path) {
    const Vertex n = g_.num_vertices();
    std::vector<Vertex> count(n + 1, 0);
    for (auto c : colors) ++count[c];
    std::uint32_t target = n;
    for (std::uint32_t c = 0; c < n; ++c) {
      if (count[c] > 1) {
        target = c;
        break;
      }
    }
    if (target == n) return leaf(colors, path);

    std::vector<Vertex> explored;
    const int depth = static_cast<int>(path.size());
    for (Vertex v = 0; v < n; ++v) {
      if (colors[v] != target) continue;
      if (!explored.empty() && pruned_by_orbit(v, explored, path)) continue;
      auto child = refine_with(g_, inc_, individualize(colors, v));
      path.push_back(v);
      const int jump = dfs(child, path);
      path.pop_back();
      explored.push_back(v);
      if (jump >= 0 && jump < depth) return jump;
    }
    return -1;
  }

  int leaf(const std::vector<std::uint32_t>& colors, const std::vector<Vertex>& path) {
    auto code = relabeled_code(g_, colors);
    if (!have_first_) {
      have_first_ = true;
      first_code_ = code;
      first_lab_ = colors;
      first_path_ = path;
      best_code_ = std::move(code);
      best_lab_ = colors;
      best_path_ = path;
      return -1;
    }
    if (code == first_code_) {
      store_automorphism(first_lab_, colors);
      return divergence(path, first_path_);
    }
    if (code == best_code_) {
      store_automorphism(best_lab_, colors);
      return divergence(path, best_path_);
    }
    if (code < best_code_) {
      best_code_ = std::move(code);
      best_lab_ = colors;
      best_path_ = path;
    }
    return -1;
  }

  bool pruned_by_orbit(Vertex v, const std::vector<Vertex>& explored, const std::vector<Vertex>& path) const {
    const Vertex n = g_.num_vertices();
    std::vector<Vertex> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    bool any = false;
    for (const auto& gamma : autos_) {
      if (!std::all_of(path.begin(), path.end(), [&](Vertex p) { return gamma[p] == p; })) continue;
      any = true;
      for (Vertex x = 0; x < n; ++x) {
        auto a = find(x), b = find(gamma[x]);
        if (a != b) parent[a] = b;
      }
    }
    if (!any) return false;
    const auto root = find(v);
    return std::any_of(explored.begin(), explored.end(), [&](Vertex u) { return find(u) == root; });
  }

  const Hypergraph& g_;
  Incidence inc_;
  bool have_first_ = false;
  std::vector<Vertex> first_code_, best_code_;
  std::vector<std::uint32_t> first_lab_, best_lab_;
  std::vector<Vertex> first_path_, best_path_;
  std::vector<std::vector<Vertex>> autos_;
};

// Disjoint union a + b used for joint refinement.
Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b) {
  std::vector<Vertex> flat(a.flat().begin(), a.flat().end());
  for (auto v : b.flat()) flat.push_back(v + a.num_vertices());
  return Hypergraph::from_sorted_flat(a.uniformity(), a.num_vertices() + b.num_vertices(), std::move(flat));
}

class IsoSearch {
 public:
  IsoSearch(const Hypergraph& a, const Hypergraph& b) : a_(a), b_(b), u_(disjoint_union(a, b)), inc_(u_) {}

  std::optional<std::vector<Vertex>> run(std::span<const std::pair<Vertex, Vertex>> forced) {
    const Vertex na = a_.num_vertices();
    std::vector<std::uint32_t> colors(u_.num_vertices(), 0);
    std::uint32_t next = 1;
    for (auto [x, y] : forced) {
      if (x >= na || y >= b_.num_vertices()) throw InputError("forced pair out of range");
      if (colors[x] != 0 || colors[na + y] != 0) return std::nullopt;
      colors[x] = next;
      colors[na + y] = next;
      ++next;
    }
    colors = refine_with(u_, inc_, std::move(colors));
    return dfs(colors);
  }

 private:
  bool balanced(const std::vector<std::uint32_t>& colors) const {
    const Vertex na = a_.num_vertices();
    std::vector<long> diff(u_.num_vertices() + 1, 0);
    for (Vertex v = 0; v < u_.num_vertices(); ++v) diff[colors[v]] += v < na ? 1 : -1;
    return std::all_of(diff.begin(), diff.end(), [](long d) { return d == 0; });
  }

  std::optional<std::vector<Vertex>> dfs(const std::vector<std::uint32_t>& colors) {
    if (!balanced(colors)) return std::nullopt;
    const Vertex na = a_.num_vertices();
    const Vertex total = u_.num_vertices();
    std::vector<Vertex> count(total + 1, 0);
    for (Vertex v = 0; v < na; ++v) ++count[colors[v]];
    // Smallest non-singleton cell keeps the branching factor low.
    std::uint32_t target = total;
    Vertex best = total + 1;
    for (std::uint32_t c = 0; c < total; ++c) {
      if (count[c] > 1 && count[c] < best) {
        best = count[c];
        target = c;
      }
    }
    if (target == total) {
      std::vector<Vertex> by_color(total, 0);
      for (Vertex v = na; v < total; ++v) by_color[colors[v]] = v - na;
      std::vector<Vertex> map(na);
      for (Vertex v = 0; v < na; ++v) map[v] = by_color[colors[v]];
      if (edges_preserved(map)) return map;
      return std::nullopt;
    }
    Vertex x = 0;
    while (colors[x] != target) ++x;
    for (Vertex y = na; y < total; ++y) {
      if (colors[y] != target) continue;
      auto child = colors;
      const auto fresh = static_cast<std::uint32_t>(total);
      child[x] = fresh;
      child[y] = fresh;
      child = refine_with(u_, inc_, std::move(child));
      if (auto found = dfs(child)) return found;
    }
    return std::nullopt;
  }

  bool edges_preserved(const std::vector<Vertex>& map) const {
    std::vector<Vertex> image(static_cast<std::size_t>(a_.uniformity()));
    for (EdgeId e = 0; e < a_.num_edges(); ++e) {
      auto t = a_.edge(e);
      for (std::size_t k = 0; k < t.size(); ++k) image[k] = map[t[k]];
      std::sort(image.begin(), image.end());
      if (!b_.has_edge(image)) return false;
    }
    return true;
  }

  const Hypergraph& a_;
  const Hypergraph& b_;
  Hypergraph u_;
  Incidence inc_;
};

}  // namespace

std::vector<std::uint32_t> refine_colors(const Hypergraph& g, std::vector<std::uint32_t> colors) {
  if (colors.size() != g.num_vertices()) throw InputError("color vector size mismatch");
  Incidence inc(g);
  return refine_with(g, inc, std::move(colors));
}

Canonical canonical_form(const Hypergraph& g) { return CanonSearch(g).run(); }

std::optional<std::vector<Vertex>> find_isomorphism(const Hypergraph& a, const Hypergraph& b,
                                                    std::span<const std::pair<Vertex, Vertex>> forced) {
  if (a.uniformity() != b.uniformity() || a.num_vertices() != b.num_vertices() ||
      a.num_edges() != b.num_edges()) {
    return std::nullopt;
  }
  auto da = degrees(a), db = degrees(b);
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return std::nullopt;
  return IsoSearch(a, b).run(forced);
}

bool are_isomorphic(const Hypergraph& a, const Hypergraph& b) { return find_isomorphism(a, b).has_value(); }

namespace {

// Orbits of the pointwise stabilizer of `fixed`, as representative per vertex.
std::vector<Vertex> stabilizer_orbits(const Hypergraph& g, const std::vector<Vertex>& fixed) {
  const Vertex n = g.num_vertices();
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::pair<Vertex, Vertex>> forced;
  for (auto f : fixed) forced.emplace_back(f, f);
  for (Vertex u = 0; u < n; ++u) {
    if (std::find(fixed.begin(), fixed.end(), u) != fixed.end()) continue;
    for (Vertex w = u + 1; w < n; ++w) {
      if (std::find(fixed.begin(), fixed.end(), w) != fixed.end()) continue;
      if (find(u) == find(w)) continue;
      forced.emplace_back(u, w);
      auto gamma = find_isomorphism(g, g, forced);
      forced.pop_back();
      if (!gamma) continue;
      // Merge every cycle of the automorphism found, not just u and w.
      for (Vertex x = 0; x < n; ++x) {
        auto a = find(x), b = find((*gamma)[x]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<Vertex> rep(n);
  for (Vertex x = 0; x < n; ++x) rep[x] = find(x);
  return rep;
}

template <class OnLevel>
void walk_stabilizer_chain(const Hypergraph& g, OnLevel&& on_level) {
  const Vertex n = g.num_vertices();
  std::vector<Vertex> fixed;
  while (true) {
    auto rep = stabilizer_orbits(g, fixed);
    std::vector<Vertex> size(n, 0);
    for (Vertex x = 0; x < n; ++x) {
      if (std::find(fixed.begin(), fixed.end(), x) == fixed.end()) ++size[rep[x]];
    }
    Vertex pick = n;
    for (Vertex x = 0; x < n; ++x) {
      if (std::find(fixed.begin(), fixed.end(), x) != fixed.end()) continue;
      if (size[rep[x]] > 1 && (pick == n || size[rep[x]] > size[rep[pick]])) pick = x;
    }
    if (pick == n) return;
    std::vector<Vertex> orbit;
    for (Vertex x = 0; x < n; ++x) {
      if (rep[x] == rep[pick] && std::find(fixed.begin(), fixed.end(), x) == fixed.end()) orbit.push_back(x);
    }
    on_level(pick, orbit);
    fixed.push_back(pick);
  }
}

}  // namespace

std::vector<std::pair<Vertex, Vertex>> symmetry_breaking_constraints(const Hypergraph& pattern) {
  std::vector<std::pair<Vertex, Vertex>> constraints;
  walk_stabilizer_chain(pattern, [&](Vertex pick, const std::vector<Vertex>& orbit) {
    for (auto w : orbit) {
      if (w != pick) constraints.emplace_back(pick, w);
    }
  });
  return constraints;
}

double automorphism_count(const Hypergraph& g) {
  double count = 1.0;
  walk_stabilizer_chain(g, [&](Vertex, const std::vector<Vertex>& orbit) { count *= static_cast<double>(orbit.size()); });
  return count;
}

}  // namespace ramsey0
