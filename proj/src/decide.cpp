#include "ramsey0/decide.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <unordered_map>

#include "ramsey0/canon.hpp"
#include "ramsey0/density.hpp"
#include "ramsey0/errors.hpp"

namespace ramsey0 {

const char* to_string(Arrow a) {
  switch (a) {
    case Arrow::holds:
      return "holds";
    case Arrow::fails:
      return "fails";
    case Arrow::undecided:
      return "undecided";
  }
  return "?";
}

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Covered edges in search order plus the copy incidence in positions.
struct Space {
  const Hypergraph* host = nullptr;
  std::vector<EdgeId> order;
  std::vector<std::vector<std::uint32_t>> copy_pos;
  std::vector<std::vector<CopyId>> inc;
  std::uint32_t max_codeg = 0;

  std::size_t size() const { return order.size(); }
  std::size_t num_copies() const { return copy_pos.size(); }
};

// Orders edges so that copies get completed early: always continue with the
// started copy that has the fewest unplaced edges.
Space build_space(const CopyIndex& idx) {
  Space s;
  s.host = &idx.host();
  const std::size_t copies = idx.num_copies();
  std::vector<std::uint32_t> pos(idx.host().num_edges(), kNone);
  std::vector<std::uint32_t> unplaced(copies, static_cast<std::uint32_t>(idx.copy_size()));
  std::vector<char> started(copies, 0);
  for (;;) {
    CopyId pick = kNone;
    for (CopyId c = 0; c < copies; ++c) {
      if (unplaced[c] == 0) continue;
      if (pick == kNone || (started[c] && !started[pick]) ||
          (started[c] == started[pick] && unplaced[c] < unplaced[pick])) {
        pick = c;
      }
    }
    if (pick == kNone) break;
    for (auto e : idx.copy(pick)) {
      if (pos[e] != kNone) continue;
      pos[e] = static_cast<std::uint32_t>(s.order.size());
      s.order.push_back(e);
      for (auto c : idx.copies_of(e)) {
        --unplaced[c];
        started[c] = 1;
      }
    }
  }
  s.copy_pos.resize(copies);
  s.inc.resize(s.order.size());
  std::unordered_map<std::uint64_t, std::uint32_t> codeg;
  for (CopyId c = 0; c < copies; ++c) {
    for (auto e : idx.copy(c)) {
      s.copy_pos[c].push_back(pos[e]);
      s.inc[pos[e]].push_back(c);
    }
    auto& cp = s.copy_pos[c];
    std::sort(cp.begin(), cp.end());
    for (std::size_t a = 0; a < cp.size(); ++a) {
      for (std::size_t b = a + 1; b < cp.size(); ++b) {
        auto& k = codeg[(static_cast<std::uint64_t>(cp[a]) << 32) | cp[b]];
        s.max_codeg = std::max(s.max_codeg, ++k);
      }
    }
  }
  return s;
}

// Fills every edge left without a color with a fresh one.
Coloring finish(const Space& s, std::vector<Color> color, Variant variant, int r) {
  Coloring c;
  c.variant = variant;
  c.r = variant == Variant::proper ? 0 : r;
  Color next = 0;
  for (auto x : color) {
    if (x != kUncolored) next = std::max(next, x + 1);
  }
  for (auto& x : color) {
    if (x == kUncolored) x = variant == Variant::color ? 0 : next++;
  }
  (void)s;
  c.color = std::move(color);
  normalize_colors(c);
  return c;
}

// Maximal pairings: the first free position is paired with a later free one,
// or left as the single singleton when the edge count is odd.
class PairingState {
 public:
  PairingState(const Space& s, bool counting_bound)
      : s_(&s),
        counting_bound_(counting_bound),
        partner_(s.size(), kNone),
        un_(s.num_copies()),
        kp_(s.num_copies(), 0),
        unkilled_(s.num_copies()),
        free_(s.size()) {
    for (std::size_t c = 0; c < s.num_copies(); ++c) un_[c] = static_cast<std::uint32_t>(s.copy_pos[c].size());
  }

  bool root_ok() const {
    for (std::size_t c = 0; c < s_->num_copies(); ++c) {
      if (un_[c] < 2) return false;
    }
    return bound_ok();
  }
  bool solved() const { return unkilled_ == 0; }
  bool complete() const { return free_ == 0; }

  void choices(std::vector<int>& out) const {
    out.clear();
    const std::uint32_t i = first_free();
    if (i == kNone) return;
    for (std::uint32_t j = i + 1; j < s_->size(); ++j) {
      if (partner_[j] == kNone) out.push_back(static_cast<int>(j));
    }
    if (s_->size() % 2 == 1 && !single_used_) out.push_back(-1);
  }

  bool apply(int choice) {
    const std::uint32_t i = first_free();
    stack_.push_back({i, choice});
    if (choice < 0) {
      partner_[i] = kSingle;
      single_used_ = true;
      --free_;
      for (auto c : s_->inc[i]) --un_[c];
      return check(i) && bound_ok();
    }
    const auto j = static_cast<std::uint32_t>(choice);
    partner_[i] = j;
    partner_[j] = i;
    free_ -= 2;
    for (auto c : s_->inc[i]) --un_[c];
    for (auto c : s_->inc[j]) --un_[c];
    for_common(i, j, [&](CopyId c) {
      if (kp_[c]++ == 0) --unkilled_;
    });
    return check(i) && check(j) && bound_ok();
  }

  void undo() {
    auto [i, choice] = stack_.back();
    stack_.pop_back();
    if (choice < 0) {
      partner_[i] = kNone;
      single_used_ = false;
      ++free_;
      for (auto c : s_->inc[i]) ++un_[c];
      return;
    }
    const auto j = static_cast<std::uint32_t>(choice);
    for_common(i, j, [&](CopyId c) {
      if (--kp_[c] == 0) ++unkilled_;
    });
    for (auto c : s_->inc[i]) ++un_[c];
    for (auto c : s_->inc[j]) ++un_[c];
    partner_[i] = partner_[j] = kNone;
    free_ += 2;
  }

  Coloring witness() const {
    std::vector<Color> color(s_->host->num_edges(), kUncolored);
    Color next = 0;
    std::uint32_t pending = kNone;
    for (std::uint32_t i = 0; i < s_->size(); ++i) {
      const EdgeId e = s_->order[i];
      if (color[e] != kUncolored) continue;
      const auto p = partner_[i];
      if (p == kNone) {
        // Free positions are paired up in order.
        if (pending == kNone) {
          pending = i;
        } else {
          color[s_->order[pending]] = color[e] = next++;
          pending = kNone;
        }
      } else if (p == kSingle) {
        color[e] = next++;
      } else {
        color[e] = color[s_->order[p]] = next++;
      }
    }
    if (pending != kNone) color[s_->order[pending]] = next++;
    return finish(*s_, std::move(color), Variant::bounded, 2);
  }

 private:
  static constexpr std::uint32_t kSingle = kNone - 1;

  std::uint32_t first_free() const {
    std::uint32_t i = stack_.empty() ? 0 : stack_.back().first + 1;
    while (i < s_->size() && partner_[i] != kNone) ++i;
    return i < s_->size() ? i : kNone;
  }

  template <class Fn>
  void for_common(std::uint32_t i, std::uint32_t j, Fn fn) const {
    const auto& a = s_->inc[i];
    const auto& b = s_->inc[j];
    std::size_t x = 0, y = 0;
    while (x < a.size() && y < b.size()) {
      if (a[x] < b[y]) {
        ++x;
      } else if (b[y] < a[x]) {
        ++y;
      } else {
        fn(a[x]);
        ++x;
        ++y;
      }
    }
  }

  // An unkilled copy with fewer than two free edges stays rainbow.
  bool check(std::uint32_t i) const {
    return std::none_of(s_->inc[i].begin(), s_->inc[i].end(),
                        [&](CopyId c) { return kp_[c] == 0 && un_[c] < 2; });
  }
  // Each further pair kills at most max_codeg copies.
  bool bound_ok() const {
    return !counting_bound_ || unkilled_ <= static_cast<std::uint64_t>(free_ / 2) * s_->max_codeg;
  }

  const Space* s_;
  bool counting_bound_;
  std::vector<std::uint32_t> partner_;
  std::vector<std::uint32_t> un_;
  std::vector<std::uint32_t> kp_;
  std::size_t unkilled_;
  std::size_t free_;
  bool single_used_ = false;
  std::vector<std::pair<std::uint32_t, int>> stack_;
};

// Assigns positions in order to color classes: classes of size <= r
// (bounded) or matchings (proper). Classes are opened in order, so each
// partition is visited once.
class PartitionState {
 public:
  PartitionState(const Space& s, bool proper, int r)
      : s_(&s),
        proper_(proper),
        r_(r),
        cls_(s.size(), kNone),
        un_(s.num_copies()),
        kp_(s.num_copies(), 0),
        unkilled_(s.num_copies()) {
    for (std::size_t c = 0; c < s.num_copies(); ++c) un_[c] = static_cast<std::uint32_t>(s.copy_pos[c].size());
    if (proper_) occ_.assign(s.size() * s.host->num_vertices(), 0);
  }

  bool root_ok() const { return true; }
  bool solved() const { return unkilled_ == 0; }
  bool complete() const { return depth_ == s_->size(); }

  void choices(std::vector<int>& out) const {
    out.clear();
    if (depth_ == s_->size()) return;
    const auto e = s_->host->edge(s_->order[depth_]);
    for (std::uint32_t k = 0; k < sizes_.size(); ++k) {
      if (proper_) {
        const std::uint8_t* row = &occ_[k * s_->host->num_vertices()];
        if (std::any_of(e.begin(), e.end(), [&](Vertex v) { return row[v] != 0; })) continue;
      } else if (sizes_[k] >= static_cast<std::uint32_t>(r_)) {
        continue;
      }
      out.push_back(static_cast<int>(k));
    }
    out.push_back(static_cast<int>(sizes_.size()));
  }

  bool apply(int choice) {
    const auto i = static_cast<std::uint32_t>(depth_++);
    const auto k = static_cast<std::uint32_t>(choice);
    if (k == sizes_.size()) sizes_.push_back(0);
    ++sizes_[k];
    if (proper_) {
      for (auto v : s_->host->edge(s_->order[i])) occ_[k * s_->host->num_vertices() + v] = 1;
    }
    bool ok = true;
    for (auto c : s_->inc[i]) {
      --un_[c];
      const std::uint32_t dup = same_class(c, k);
      if (kp_[c] == 0 && dup > 0) --unkilled_;
      kp_[c] += dup;
      if (un_[c] == 0 && kp_[c] == 0) ok = false;
    }
    cls_[i] = k;
    return ok;
  }

  void undo() {
    const auto i = static_cast<std::uint32_t>(--depth_);
    const auto k = cls_[i];
    cls_[i] = kNone;
    for (auto c : s_->inc[i]) {
      ++un_[c];
      const std::uint32_t dup = same_class(c, k);
      kp_[c] -= dup;
      if (kp_[c] == 0 && dup > 0) ++unkilled_;
    }
    if (proper_) {
      for (auto v : s_->host->edge(s_->order[i])) occ_[k * s_->host->num_vertices() + v] = 0;
    }
    if (--sizes_[k] == 0) sizes_.pop_back();
  }

  Coloring witness() const {
    std::vector<Color> color(s_->host->num_edges(), kUncolored);
    for (std::size_t i = 0; i < depth_; ++i) color[s_->order[i]] = cls_[i];
    return finish(*s_, std::move(color), proper_ ? Variant::proper : Variant::bounded, r_);
  }

 private:
  std::uint32_t same_class(CopyId c, std::uint32_t k) const {
    std::uint32_t n = 0;
    for (auto j : s_->copy_pos[c]) n += cls_[j] == k;
    return n;
  }

  const Space* s_;
  bool proper_;
  int r_;
  std::vector<std::uint32_t> cls_;
  std::vector<std::uint32_t> sizes_;
  std::vector<std::uint8_t> occ_;
  std::vector<std::uint32_t> un_;
  std::vector<std::uint32_t> kp_;
  std::size_t unkilled_;
  std::size_t depth_ = 0;
};

// r-colorings with colors opened in order (color symmetry removed).
class ColorState {
 public:
  ColorState(const Space& s, int r)
      : s_(&s),
        r_(r),
        col_(s.size(), kNone),
        un_(s.num_copies()),
        cnt_(s.num_copies() * static_cast<std::size_t>(r), 0),
        nz_(s.num_copies(), 0),
        unkilled_(s.num_copies()) {
    for (std::size_t c = 0; c < s.num_copies(); ++c) un_[c] = static_cast<std::uint32_t>(s.copy_pos[c].size());
  }

  bool root_ok() const { return true; }
  bool solved() const { return unkilled_ == 0; }
  bool complete() const { return depth_ == s_->size(); }

  void choices(std::vector<int>& out) const {
    out.clear();
    if (depth_ == s_->size()) return;
    const int top = std::min(r_ - 1, used_);
    for (int x = 0; x <= top; ++x) out.push_back(x);
  }

  bool apply(int x) {
    const auto i = static_cast<std::uint32_t>(depth_++);
    used_stack_.push_back(used_);
    used_ = std::max(used_, x + 1);
    col_[i] = static_cast<std::uint32_t>(x);
    bool ok = true;
    for (auto c : s_->inc[i]) {
      --un_[c];
      if (cnt_[c * r_ + x]++ == 0 && ++nz_[c] == 2) --unkilled_;
      if (un_[c] == 0 && nz_[c] == 1) ok = false;
    }
    return ok;
  }

  void undo() {
    const auto i = static_cast<std::uint32_t>(--depth_);
    const auto x = col_[i];
    for (auto c : s_->inc[i]) {
      ++un_[c];
      if (--cnt_[c * r_ + x] == 0 && nz_[c]-- == 2) ++unkilled_;
    }
    col_[i] = kNone;
    used_ = used_stack_.back();
    used_stack_.pop_back();
  }

  Coloring witness() const {
    std::vector<Color> color(s_->host->num_edges(), kUncolored);
    for (std::size_t i = 0; i < depth_; ++i) color[s_->order[i]] = col_[i];
    Coloring c = finish(*s_, std::move(color), Variant::color, r_);
    return c;
  }

 private:
  const Space* s_;
  int r_;
  std::vector<std::uint32_t> col_;
  std::vector<std::uint32_t> un_;
  std::vector<std::uint32_t> cnt_;
  std::vector<std::uint32_t> nz_;
  std::size_t unkilled_;
  std::size_t depth_ = 0;
  int used_ = 0;
  std::vector<int> used_stack_;
};

enum class Outcome { fail, success, undecided, aborted };

template <class State>
class Dfs {
 public:
  Dfs(State& st, std::uint64_t cap, const std::atomic<std::int64_t>& best, std::int64_t me, std::size_t depth)
      : st_(st), cap_(cap), best_(best), me_(me), buf_(depth + 2) {}

  Outcome run(std::size_t depth) {
    if (st_.solved()) {
      ++leaves;
      found = st_.witness();
      return Outcome::success;
    }
    if (st_.complete()) {
      ++leaves;
      return Outcome::fail;
    }
    auto& ch = buf_[depth];
    st_.choices(ch);
    for (std::size_t k = 0; k < ch.size(); ++k) {
      if (++nodes > cap_) return Outcome::undecided;
      if ((nodes & 1023) == 0 && best_.load(std::memory_order_relaxed) < me_) return Outcome::aborted;
      const bool ok = st_.apply(ch[k]);
      const Outcome o = ok ? run(depth + 1) : Outcome::fail;
      st_.undo();
      if (o != Outcome::fail) return o;
    }
    return Outcome::fail;
  }

  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::optional<Coloring> found;

 private:
  State& st_;
  std::uint64_t cap_;
  const std::atomic<std::int64_t>& best_;
  std::int64_t me_;
  std::vector<std::vector<int>> buf_;
};

// Replays a choice prefix; false when some step fails.
template <class State>
bool replay(State& st, const std::vector<int>& prefix) {
  for (auto x : prefix) {
    if (!st.apply(x)) return false;
  }
  return true;
}

// Splits the tree into prefixes in depth-first order, runs them as
// independent branches and keeps the lowest-index success, which is what a
// sequential search over the same branches returns.
template <class State>
Decision run_search(const Space& space, const State& root, Variant variant, int r, const SearchLimits& limits) {
  const auto t0 = std::chrono::steady_clock::now();
  Decision d;
  d.variant = variant;
  d.r = variant == Variant::proper ? 0 : r;
  auto done = [&](Decision& out) {
    out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
  };
  if (!root.root_ok()) {
    d.arrow = Arrow::holds;
    return done(d);
  }

  constexpr std::size_t kTargetBranches = 64;
  constexpr std::size_t kMaxPrefixDepth = 8;
  std::vector<std::vector<int>> prefixes{{}};
  std::vector<int> ch;
  for (std::size_t depth = 0; depth < kMaxPrefixDepth && prefixes.size() < kTargetBranches; ++depth) {
    std::vector<std::vector<int>> next;
    bool grew = false;
    for (auto& p : prefixes) {
      State st = root;
      if (p.size() != depth || !replay(st, p) || st.solved() || st.complete()) {
        next.push_back(std::move(p));
        continue;
      }
      st.choices(ch);
      for (auto x : ch) {
        next.push_back(p);
        next.back().push_back(x);
      }
      grew = true;
    }
    prefixes = std::move(next);
    if (!grew) break;
  }

  const auto branches = static_cast<std::int64_t>(prefixes.size());
  std::atomic<std::int64_t> best{std::numeric_limits<std::int64_t>::max()};
  std::vector<Outcome> outcome(prefixes.size(), Outcome::aborted);
  std::vector<std::optional<Coloring>> found(prefixes.size());
  std::atomic<std::uint64_t> nodes{0}, leaves{0};

#pragma omp parallel for schedule(dynamic, 1) if (limits.parallel)
  for (std::int64_t b = 0; b < branches; ++b) {
    if (b > best.load()) continue;
    State st = root;
    if (!replay(st, prefixes[b])) {
      outcome[b] = Outcome::fail;
      continue;
    }
    Dfs<State> dfs(st, limits.max_nodes, best, b, space.size());
    outcome[b] = dfs.run(prefixes[b].size());
    nodes += dfs.nodes + prefixes[b].size();
    leaves += dfs.leaves;
    if (outcome[b] == Outcome::success) {
      found[b] = std::move(dfs.found);
      std::int64_t cur = best.load();
      while (b < cur && !best.compare_exchange_weak(cur, b)) {
      }
    }
  }

  d.stats.nodes = nodes;
  d.stats.leaves = leaves;
  d.stats.branches = static_cast<std::uint64_t>(branches);
  d.arrow = Arrow::holds;
  for (std::int64_t b = 0; b < branches; ++b) {
    if (outcome[b] == Outcome::success) {
      d.arrow = Arrow::fails;
      d.witness = std::move(found[b]);
      return done(d);
    }
    if (outcome[b] == Outcome::undecided) d.arrow = Arrow::undecided;
  }
  return done(d);
}

void check_pattern(const Hypergraph& g, const Hypergraph& f) {
  if (g.uniformity() != f.uniformity()) throw InputError("host and pattern uniformities differ");
}

}  // namespace

Decision decide_anti_ramsey_bounded(const CopyIndex& idx, int r, const SearchLimits& limits) {
  if (r < 1) throw InputError("r must be positive");
  if (r != 2) return decide_bounded_partitions(idx, r, limits);
  const Space space = build_space(idx);
  return run_search(space, PairingState(space, limits.counting_bound), Variant::bounded, 2, limits);
}

Decision decide_anti_ramsey_bounded(const Hypergraph& g, const Hypergraph& f, int r, const SearchLimits& limits) {
  check_pattern(g, f);
  return decide_anti_ramsey_bounded(enumerate_copies(g, f), r, limits);
}

Decision decide_bounded_partitions(const CopyIndex& idx, int r, const SearchLimits& limits) {
  if (r < 1) throw InputError("r must be positive");
  const Space space = build_space(idx);
  return run_search(space, PartitionState(space, false, r), Variant::bounded, r, limits);
}

Decision decide_anti_ramsey_proper(const CopyIndex& idx, const SearchLimits& limits) {
  const Space space = build_space(idx);
  return run_search(space, PartitionState(space, true, 0), Variant::proper, 0, limits);
}

Decision decide_anti_ramsey_proper(const Hypergraph& g, const Hypergraph& f, const SearchLimits& limits) {
  check_pattern(g, f);
  return decide_anti_ramsey_proper(enumerate_copies(g, f), limits);
}

Decision decide_ramsey(const CopyIndex& idx, int r, const SearchLimits& limits) {
  if (r < 1) throw InputError("r must be positive");
  const Space space = build_space(idx);
  return run_search(space, ColorState(space, r), Variant::color, r, limits);
}

Decision decide_ramsey(const Hypergraph& g, const Hypergraph& f, int r, const SearchLimits& limits) {
  check_pattern(g, f);
  return decide_ramsey(enumerate_copies(g, f), r, limits);
}

Decision decide(const CopyIndex& idx, Variant variant, int r, const SearchLimits& limits) {
  switch (variant) {
    case Variant::proper:
      return decide_anti_ramsey_proper(idx, limits);
    case Variant::bounded:
      return decide_anti_ramsey_bounded(idx, r, limits);
    case Variant::color:
      return decide_ramsey(idx, r, limits);
  }
  throw InputError("unknown variant");
}

namespace {

void check_generation_caps(const GenerateOptions& o) {
  const int l = o.uniformity;
  if (l < 2) throw InputError("uniformity must be at least 2");
  const Vertex v = o.max_vertices;
  bool ok = false;
  if (l == 2) {
    ok = v <= 8 || (v <= 10 && o.max_edges && *o.max_edges <= 9);
  } else if (l == 3) {
    ok = v <= 6;
  } else {
    ok = v <= static_cast<Vertex>(l + 2);
  }
  if (!ok) throw InputError("generation too large: at most 8 vertices for graphs (10 with at most 9 edges), 6 for 3-graphs, l+2 beyond");
}

// Calls fn on every l-subset of [0, n) given as a sorted vector.
template <class Fn>
void for_each_subset(Vertex n, int l, Fn fn) {
  if (static_cast<Vertex>(l) > n) return;
  std::vector<Vertex> t(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) t[static_cast<std::size_t>(i)] = static_cast<Vertex>(i);
  for (;;) {
    fn(t);
    int i = l - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == n - static_cast<Vertex>(l - i)) --i;
    if (i < 0) return;
    ++t[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < l; ++j) t[static_cast<std::size_t>(j)] = t[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

std::vector<Hypergraph> generate_connected(const GenerateOptions& o) {
  check_generation_caps(o);
  const int l = o.uniformity;
  const Vertex vmax = o.max_vertices;
  if (vmax < static_cast<Vertex>(l)) return {};
  auto keep = [&](const Hypergraph& g) { return !o.density_cap || max_density(g).value <= *o.density_cap; };

  std::vector<CanonicalForm> level;
  const Hypergraph single = complete_hypergraph(l, static_cast<Vertex>(l));
  if (keep(single)) level.push_back(canonical_form(single).form);
  std::vector<CanonicalForm> all = level;
  const std::size_t max_edges = o.max_edges.value_or(std::numeric_limits<std::size_t>::max());

  for (std::size_t m = 2; m <= max_edges && !level.empty(); ++m) {
    std::vector<std::vector<CanonicalForm>> found(level.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::size_t gi = 0; gi < level.size(); ++gi) {
      const CanonicalForm& cf = level[gi];
      const Vertex n = cf.num_vertices;
      const Hypergraph g = cf.to_hypergraph();
      const Vertex span = std::min<Vertex>(vmax, n + static_cast<Vertex>(l) - 1);
      for_each_subset(span, l, [&](const std::vector<Vertex>& t) {
        // At least one old vertex; new vertices are n, n+1, ... in order.
        if (t[0] >= n) return;
        Vertex expect = n;
        for (auto v : t) {
          if (v >= n && v != expect++) return;
        }
        if (g.has_edge(t)) return;
        std::vector<Vertex> flat(cf.flat.begin(), cf.flat.end());
        flat.insert(flat.end(), t.begin(), t.end());
        const Vertex nv = std::max<Vertex>(n, t.back() + 1);
        Hypergraph h = Hypergraph::from_flat(l, nv, std::move(flat));
        if (!keep(h)) return;
        found[gi].push_back(canonical_form(h).form);
      });
    }
    std::vector<CanonicalForm> next;
    for (auto& f : found) {
      for (auto& c : f) next.push_back(std::move(c));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }

  std::sort(all.begin(), all.end(), [](const CanonicalForm& a, const CanonicalForm& b) {
    if (a.num_vertices != b.num_vertices) return a.num_vertices < b.num_vertices;
    if (a.flat.size() != b.flat.size()) return a.flat.size() < b.flat.size();
    return a.flat < b.flat;
  });
  std::vector<Hypergraph> out;
  out.reserve(all.size());
  for (auto& c : all) out.push_back(c.to_hypergraph());
  return out;
}

ObstructionSearch search_obstructions(const Hypergraph& f, Variant variant, int r, Vertex v_max,
                                      const Rational& density_cap, const SearchLimits& limits) {
  GenerateOptions o;
  o.uniformity = f.uniformity();
  o.max_vertices = v_max;
  o.density_cap = density_cap;
  ObstructionSearch result;
  for (auto& g : generate_connected(o)) {
    ++result.examined;
    const Decision d = decide(enumerate_copies(g, f), variant, r, limits);
    if (d.arrow == Arrow::holds) {
      result.obstructions.push_back(std::move(g));
    } else if (d.arrow == Arrow::undecided) {
      result.undecided.push_back(std::move(g));
    }
  }
  return result;
}

}  // namespace ramsey0
