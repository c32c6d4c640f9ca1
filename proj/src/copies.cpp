#include "ramsey0/copies.hpp"

#include <algorithm>
#include <numeric>

#include <omp.h>

#include "ramsey0/canon.hpp"
#include "ramsey0/density.hpp"
#include "ramsey0/errors.hpp"

namespace ramsey0 {

CopyIndex::CopyIndex(std::shared_ptr<const Hypergraph> host, Hypergraph pattern, std::vector<EdgeId> flat_copies)
    : host_(std::move(host)), pattern_(std::move(pattern)), flat_(std::move(flat_copies)) {
  const std::size_t k = copy_size();
  std::vector<std::pair<EdgeId, CopyId>> pairs;
  pairs.reserve(flat_.size());
  for (std::size_t i = 0; i < flat_.size(); ++i) pairs.emplace_back(flat_[i], static_cast<CopyId>(i / k));
  std::sort(pairs.begin(), pairs.end());
  offset_.push_back(0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i == 0 || pairs[i].first != pairs[i - 1].first) {
      if (i > 0) offset_.push_back(static_cast<std::uint32_t>(i));
      covered_.push_back(pairs[i].first);
    }
    incidence_.push_back(pairs[i].second);
  }
  if (!pairs.empty()) offset_.push_back(static_cast<std::uint32_t>(pairs.size()));
}

std::span<const CopyId> CopyIndex::copies_of(EdgeId e) const {
  auto it = std::lower_bound(covered_.begin(), covered_.end(), e);
  if (it == covered_.end() || *it != e) return {};
  const auto pos = static_cast<std::size_t>(it - covered_.begin());
  return {incidence_.data() + offset_[pos], offset_[pos + 1] - offset_[pos]};
}

namespace {

constexpr Vertex kUnmapped = ~Vertex{0};
constexpr std::uint64_t kDenseKeyLimit = 1ull << 25;

// Lookup structures over the host: edges completing an (l-1)-set, and edges
// at a vertex. Lists are in edge-id order.
class HostIndex {
 public:
  HostIndex(const Hypergraph& g, bool need_vertex_incidence) : g_(g), ell_(static_cast<std::size_t>(g.uniformity())) {
    const std::uint64_t n = g.num_vertices();
    key_space_ = 1;
    bool fits = true;
    for (std::size_t i = 0; i + 1 < ell_; ++i) {
      if (key_space_ > ~std::uint64_t{0} / std::max<std::uint64_t>(n, 1)) fits = false;
      key_space_ *= std::max<std::uint64_t>(n, 1);
    }
    if (!fits) throw UnsupportedError("host too large for the completion index");
    dense_ = key_space_ <= kDenseKeyLimit;
    build_completion();
    if (need_vertex_incidence) build_incidence();
  }

  std::uint64_t key(std::span<const Vertex> sorted_set) const {
    std::uint64_t k = 0;
    for (auto v : sorted_set) k = k * g_.num_vertices() + v;
    return k;
  }

  std::span<const EdgeId> completions(std::span<const Vertex> sorted_set) const {
    const auto k = key(sorted_set);
    if (dense_) return {list_.data() + offset_[k], offset_[k + 1] - offset_[k]};
    auto [lo, hi] = std::equal_range(keys_.begin(), keys_.end(), k);
    if (lo == hi) return {};
    const auto pos = static_cast<std::size_t>(lo - keys_.begin());
    return {list_.data() + offset_[pos], offset_[pos + 1] - offset_[pos]};
  }

  std::span<const EdgeId> at_vertex(Vertex v) const {
    return {vertex_list_.data() + vertex_offset_[v], vertex_offset_[v + 1] - vertex_offset_[v]};
  }

 private:
  void for_each_face(EdgeId e, auto&& fn) const {
    auto t = g_.edge(e);
    Vertex face[16];
    for (std::size_t skip = 0; skip < ell_; ++skip) {
      std::size_t j = 0;
      for (std::size_t i = 0; i < ell_; ++i) {
        if (i != skip) face[j++] = t[i];
      }
      fn(key(std::span<const Vertex>(face, ell_ - 1)));
    }
  }

  void build_completion() {
    const std::size_t m = g_.num_edges();
    if (dense_) {
      offset_.assign(key_space_ + 1, 0);
      for (EdgeId e = 0; e < m; ++e) for_each_face(e, [&](std::uint64_t k) { ++offset_[k + 1]; });
      std::partial_sum(offset_.begin(), offset_.end(), offset_.begin());
      list_.resize(m * ell_);
      std::vector<std::uint64_t> cursor(offset_.begin(), offset_.end() - 1);
      for (EdgeId e = 0; e < m; ++e) for_each_face(e, [&](std::uint64_t k) { list_[cursor[k]++] = e; });
      return;
    }
    std::vector<std::pair<std::uint64_t, EdgeId>> pairs;
    pairs.reserve(m * ell_);
    for (EdgeId e = 0; e < m; ++e) for_each_face(e, [&](std::uint64_t k) { pairs.emplace_back(k, e); });
    std::sort(pairs.begin(), pairs.end());
    list_.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (i == 0 || pairs[i].first != pairs[i - 1].first) {
        keys_.push_back(pairs[i].first);
        offset_.push_back(i);
      }
      list_.push_back(pairs[i].second);
    }
    offset_.push_back(pairs.size());
  }

  void build_incidence() {
    vertex_offset_.assign(g_.num_vertices() + 1, 0);
    for (auto v : g_.flat()) ++vertex_offset_[v + 1];
    std::partial_sum(vertex_offset_.begin(), vertex_offset_.end(), vertex_offset_.begin());
    vertex_list_.resize(g_.flat().size());
    std::vector<std::size_t> cursor(vertex_offset_.begin(), vertex_offset_.end() - 1);
    for (EdgeId e = 0; e < g_.num_edges(); ++e) {
      for (auto v : g_.edge(e)) vertex_list_[cursor[v]++] = e;
    }
  }

  const Hypergraph& g_;
  std::size_t ell_;
  std::uint64_t key_space_ = 1;
  bool dense_ = true;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint64_t> offset_;
  std::vector<EdgeId> list_;
  std::vector<std::size_t> vertex_offset_;
  std::vector<EdgeId> vertex_list_;
};

struct Step {
  EdgeId pattern_edge;
  std::vector<Vertex> mapped;  // pattern vertices already placed
  std::vector<Vertex> fresh;   // pattern vertices placed by this step
};

struct Plan {
  std::size_t ell = 2;
  Vertex vf = 0;
  std::vector<Step> steps;
  // For each pattern vertex: (other, must_be_smaller) ordering constraints.
  std::vector<std::vector<std::pair<Vertex, bool>>> order;
  bool needs_vertex_incidence = false;
};

Plan make_plan(const Hypergraph& f) {
  Plan plan;
  plan.ell = static_cast<std::size_t>(f.uniformity());
  plan.vf = f.num_vertices();
  const std::size_t k = f.num_edges();
  std::vector<bool> placed_vertex(plan.vf, false), placed_edge(k, false);
  for (std::size_t round = 0; round < k; ++round) {
    std::size_t best = k;
    std::size_t best_overlap = 0;
    for (std::size_t e = 0; e < k; ++e) {
      if (placed_edge[e]) continue;
      std::size_t overlap = 0;
      for (auto v : f.edge(static_cast<EdgeId>(e))) overlap += placed_vertex[v];
      if (best == k || overlap > best_overlap) {
        best = e;
        best_overlap = overlap;
      }
    }
    Step st;
    st.pattern_edge = static_cast<EdgeId>(best);
    for (auto v : f.edge(st.pattern_edge)) (placed_vertex[v] ? st.mapped : st.fresh).push_back(v);
    for (auto v : st.fresh) placed_vertex[v] = true;
    placed_edge[best] = true;
    if (!st.mapped.empty() && !st.fresh.empty() && st.mapped.size() + 1 < plan.ell) {
      plan.needs_vertex_incidence = true;
    }
    plan.steps.push_back(std::move(st));
  }
  plan.order.resize(plan.vf);
  for (auto [u, w] : symmetry_breaking_constraints(f)) {
    plan.order[u].emplace_back(w, true);
    plan.order[w].emplace_back(u, false);
  }
  return plan;
}

class Enumerator {
 public:
  Enumerator(const Hypergraph& g, const Plan& plan, const HostIndex& index)
      : g_(g), plan_(plan), index_(index), phi_(plan.vf, kUnmapped) {}

  void from_root(EdgeId h, std::vector<EdgeId>& out) {
    out_ = &out;
    chosen_.clear();
    try_edge(0, h);
  }

 private:
  bool consistent(Vertex v, Vertex x) const {
    for (auto [w, smaller] : plan_.order[v]) {
      const Vertex y = phi_[w];
      if (y == kUnmapped) continue;
      if (smaller ? !(x < y) : !(x > y)) return false;
    }
    return true;
  }

  bool image_used(Vertex x) const { return std::find(images_.begin(), images_.end(), x) != images_.end(); }

  // Place host edge h on step s, trying every assignment of its free vertices.
  void try_edge(std::size_t s, EdgeId h) {
    const Step& st = plan_.steps[s];
    auto t = g_.edge(h);
    Vertex rest[16];
    std::size_t r = 0;
    std::size_t matched = 0;
    for (auto x : t) {
      bool in_image = false;
      for (auto v : st.mapped) {
        if (phi_[v] == x) {
          in_image = true;
          break;
        }
      }
      if (in_image) {
        ++matched;
      } else {
        if (image_used(x)) return;
        rest[r++] = x;
      }
    }
    if (matched != st.mapped.size()) return;
    chosen_.push_back(h);
    assign(s, 0, rest, r);
    chosen_.pop_back();
  }

  void assign(std::size_t s, std::size_t i, Vertex* rest, std::size_t r) {
    const Step& st = plan_.steps[s];
    if (i == r) {
      extend(s + 1);
      return;
    }
    const Vertex v = st.fresh[i];
    for (std::size_t j = i; j < r; ++j) {
      std::swap(rest[i], rest[j]);
      if (consistent(v, rest[i])) {
        phi_[v] = rest[i];
        images_.push_back(rest[i]);
        assign(s, i + 1, rest, r);
        images_.pop_back();
        phi_[v] = kUnmapped;
      }
      std::swap(rest[i], rest[j]);
    }
  }

  void extend(std::size_t s) {
    if (s == plan_.steps.size()) {
      std::size_t base = out_->size();
      out_->insert(out_->end(), chosen_.begin(), chosen_.end());
      std::sort(out_->begin() + static_cast<std::ptrdiff_t>(base), out_->end());
      return;
    }
    const Step& st = plan_.steps[s];
    Vertex img[16];
    for (std::size_t i = 0; i < st.mapped.size(); ++i) img[i] = phi_[st.mapped[i]];
    std::sort(img, img + st.mapped.size());
    std::span<const Vertex> image(img, st.mapped.size());
    if (st.fresh.empty()) {
      // The edge is determined; its completion list is shorter than a search
      // over the whole edge list.
      // Lists are in edge-id order, which for a fixed face is the order of
      // the one extra vertex.
      const Vertex last = image.back();
      auto list = index_.completions(image.first(plan_.ell - 1));
      auto extra = [&](EdgeId h) {
        auto t = g_.edge(h);
        for (std::size_t i = 0; i + 1 < plan_.ell; ++i) {
          if (t[i] != image[i]) return t[i];
        }
        return t[plan_.ell - 1];
      };
      auto it = std::partition_point(list.begin(), list.end(), [&](EdgeId h) { return extra(h) < last; });
      if (it != list.end() && extra(*it) == last) try_edge(s, *it);
      return;
    }
    if (st.mapped.size() + 1 == plan_.ell) {
      for (auto h : index_.completions(image)) try_edge(s, h);
      return;
    }
    if (!st.mapped.empty()) {
      auto list = index_.at_vertex(img[0]);
      for (std::size_t i = 1; i < st.mapped.size(); ++i) {
        auto other = index_.at_vertex(img[i]);
        if (other.size() < list.size()) list = other;
      }
      for (auto h : list) try_edge(s, h);
      return;
    }
    for (EdgeId h = 0; h < g_.num_edges(); ++h) try_edge(s, h);
  }

  const Hypergraph& g_;
  const Plan& plan_;
  const HostIndex& index_;
  std::vector<Vertex> phi_;
  std::vector<Vertex> images_;
  std::vector<EdgeId> chosen_;
  std::vector<EdgeId>* out_ = nullptr;
};

void check_pattern(const Hypergraph& host, const Hypergraph& pattern) {
  if (host.uniformity() != pattern.uniformity()) throw InputError("pattern and host uniformities differ");
  if (pattern.num_edges() == 0) throw InputError("pattern has no edges");
  if (!isolated_vertices(pattern).empty()) throw InputError("pattern has isolated vertices");
  if (pattern.num_vertices() > 32 || pattern.uniformity() > 16) throw InputError("pattern too large (more than 32 vertices)");
}

CopyIndex finish(std::shared_ptr<const Hypergraph> host, const Hypergraph& pattern, std::vector<EdgeId> flat) {
  const std::size_t k = pattern.num_edges();
  const std::size_t count = flat.size() / k;
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(flat.begin() + a * k, flat.begin() + (a + 1) * k, flat.begin() + b * k,
                                        flat.begin() + (b + 1) * k);
  };
  auto same = [&](std::size_t a, std::size_t b) {
    return std::equal(flat.begin() + a * k, flat.begin() + (a + 1) * k, flat.begin() + b * k);
  };
  std::sort(order.begin(), order.end(), less);
  std::vector<EdgeId> sorted;
  sorted.reserve(flat.size());
  for (std::size_t i = 0; i < count; ++i) {
    if (i > 0 && same(order[i], order[i - 1])) continue;
    sorted.insert(sorted.end(), flat.begin() + order[i] * k, flat.begin() + (order[i] + 1) * k);
  }
  return CopyIndex(std::move(host), pattern, std::move(sorted));
}

CopyIndex run(std::shared_ptr<const Hypergraph> host, const Hypergraph& pattern, bool parallel) {
  check_pattern(*host, pattern);
  const Hypergraph& g = *host;
  const Plan plan = make_plan(pattern);
  const HostIndex index(g, plan.needs_vertex_incidence);
  const auto m = static_cast<std::int64_t>(g.num_edges());
  std::vector<EdgeId> flat;
  if (!parallel) {
    Enumerator en(g, plan, index);
    for (std::int64_t h = 0; h < m; ++h) en.from_root(static_cast<EdgeId>(h), flat);
    return finish(std::move(host), pattern, std::move(flat));
  }
  std::vector<std::vector<EdgeId>> parts(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    auto& local = parts[static_cast<std::size_t>(omp_get_thread_num())];
    Enumerator en(g, plan, index);
#pragma omp for schedule(dynamic, 4096)
    for (std::int64_t h = 0; h < m; ++h) en.from_root(static_cast<EdgeId>(h), local);
  }
  for (auto& p : parts) flat.insert(flat.end(), p.begin(), p.end());
  return finish(std::move(host), pattern, std::move(flat));
}

}  // namespace

CopyIndex enumerate_copies(std::shared_ptr<const Hypergraph> host, const Hypergraph& pattern) {
  return run(std::move(host), pattern, true);
}

CopyIndex enumerate_copies(const Hypergraph& host, const Hypergraph& pattern) {
  return run(std::make_shared<const Hypergraph>(host), pattern, true);
}

CopyIndex enumerate_copies_serial(std::shared_ptr<const Hypergraph> host, const Hypergraph& pattern) {
  return run(std::move(host), pattern, false);
}

bool f_equivalent(const CopyIndex& idx, EdgeId e1, EdgeId e2) {
  auto a = idx.copies_of(e1), b = idx.copies_of(e2);
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

ClosednessReport closedness(const CopyIndex& idx) {
  const Hypergraph& g = idx.host();
  const Hypergraph& f = idx.pattern();
  if (f.num_edges() < 2) throw InputError("closedness needs a pattern with at least two edges");
  const bool needs_unique = gamma(f) < f.uniformity() - 1;
  ClosednessReport r;
  auto covered = idx.covered_edges();

  std::vector<bool> has_partner(covered.size(), false);
  if (needs_unique) {
    std::vector<std::size_t> order(covered.size());
    std::iota(order.begin(), order.end(), 0);
    auto list = [&](std::size_t i) { return idx.copies_of(covered[i]); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      auto x = list(a), y = list(b);
      return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
      auto x = list(order[i - 1]), y = list(order[i]);
      if (std::equal(x.begin(), x.end(), y.begin(), y.end())) has_partner[order[i - 1]] = has_partner[order[i]] = true;
    }
  }
  std::vector<bool> closed(g.num_edges(), false);
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (idx.copies_of(covered[i]).size() >= 2 && !has_partner[i]) {
      closed[covered[i]] = true;
      r.closed_edges.push_back(covered[i]);
    }
  }
  bool all_copies_closed = true;
  for (CopyId c = 0; c < idx.num_copies(); ++c) {
    std::size_t count = 0;
    for (auto e : idx.copy(c)) count += closed[e];
    if (count >= 3) {
      r.closed_copies.push_back(c);
    } else {
      all_copies_closed = false;
    }
  }
  std::vector<bool> vertex_covered(g.num_vertices(), false), edge_covered(g.num_edges(), false);
  for (auto e : covered) {
    edge_covered[e] = true;
    for (auto v : g.edge(e)) vertex_covered[v] = true;
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (!vertex_covered[v]) r.uncovered_vertices.push_back(v);
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!edge_covered[e]) r.uncovered_edges.push_back(e);
  }
  r.graph_closed = r.uncovered_vertices.empty() && r.uncovered_edges.empty() && all_copies_closed;
  return r;
}

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

BlockDecomposition block_decomposition(const CopyIndex& idx) {
  auto covered = idx.covered_edges();
  auto position = [&](EdgeId e) {
    return static_cast<std::uint32_t>(std::lower_bound(covered.begin(), covered.end(), e) - covered.begin());
  };
  UnionFind uf(covered.size());
  for (CopyId c = 0; c < idx.num_copies(); ++c) {
    auto edges = idx.copy(c);
    const auto first = position(edges[0]);
    for (std::size_t i = 1; i < edges.size(); ++i) uf.unite(first, position(edges[i]));
  }
  BlockDecomposition out;
  std::vector<std::int64_t> block_of(covered.size(), -1);
  for (std::size_t i = 0; i < covered.size(); ++i) {
    const auto root = uf.find(static_cast<std::uint32_t>(i));
    if (block_of[root] < 0) {
      block_of[root] = static_cast<std::int64_t>(out.blocks.size());
      out.blocks.emplace_back();
      out.block_copies.emplace_back();
    }
    out.blocks[static_cast<std::size_t>(block_of[root])].push_back(covered[i]);
  }
  for (CopyId c = 0; c < idx.num_copies(); ++c) {
    const auto root = uf.find(position(idx.copy(c)[0]));
    out.block_copies[static_cast<std::size_t>(block_of[root])].push_back(c);
  }
  const auto m = idx.host().num_edges();
  std::size_t j = 0;
  for (EdgeId e = 0; e < m; ++e) {
    if (j < covered.size() && covered[j] == e) {
      ++j;
    } else {
      out.uncovered_edges.push_back(e);
    }
  }
  return out;
}

bool copy_structure_connected(const CopyIndex& idx, std::span<const EdgeId> edges) {
  if (edges.empty()) return true;
  std::vector<EdgeId> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  auto position = [&](EdgeId e) -> std::int64_t {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), e);
    return it != sorted.end() && *it == e ? it - sorted.begin() : -1;
  };
  UnionFind uf(sorted.size());
  for (auto e : sorted) {
    for (auto c : idx.copies_of(e)) {
      auto copy = idx.copy(c);
      std::vector<std::int64_t> pos;
      for (auto x : copy) pos.push_back(position(x));
      if (std::any_of(pos.begin(), pos.end(), [](std::int64_t p) { return p < 0; })) continue;
      for (auto p : pos) uf.unite(static_cast<std::uint32_t>(pos[0]), static_cast<std::uint32_t>(p));
    }
  }
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (uf.find(static_cast<std::uint32_t>(i)) != 0) return false;
  }
  return true;
}

bool is_block(const CopyIndex& idx) {
  if (idx.host().num_edges() == 0) return false;
  if (!closedness(idx).graph_closed) return false;
  auto blocks = block_decomposition(idx);
  return blocks.blocks.size() == 1 && blocks.blocks[0].size() == idx.host().num_edges();
}

bool is_block(const Hypergraph& g, const Hypergraph& f) { return is_block(enumerate_copies(g, f)); }

}  // namespace ramsey0
