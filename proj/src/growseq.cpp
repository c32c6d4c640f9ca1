#include "ramsey0/growseq.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ramsey0/density.hpp"
#include "ramsey0/errors.hpp"

namespace ramsey0 {

const char* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::first:
      return "first";
    case StepKind::regular_open:
      return "regular-open";
    case StepKind::regular_closed:
      return "regular-closed";
    case StepKind::degenerate:
      return "degenerate";
  }
  return "?";
}

bool satisfies_growth_hypotheses(const Hypergraph& f) {
  if (f.num_edges() < 3 || f.num_vertices() < static_cast<Vertex>(f.uniformity()) + 1) return false;
  if (!balancedness(f).strictly_balanced) return false;
  return f.num_edges() >= 4 || gamma(f) == f.uniformity() - 1;
}

namespace {

// Closedness of every edge of B restricted to the copies inside a sub-edge-set.
class SubgraphClosure {
 public:
  SubgraphClosure(const CopyIndex& idx, bool needs_unique) : idx_(idx), needs_unique_(needs_unique) {}

  void compute(const std::vector<bool>& in_sub) {
    const auto m = idx_.host().num_edges();
    inside_.assign(idx_.num_copies(), false);
    for (CopyId c = 0; c < idx_.num_copies(); ++c) {
      auto edges = idx_.copy(c);
      inside_[c] = std::all_of(edges.begin(), edges.end(), [&](EdgeId e) { return in_sub[e]; });
    }
    std::vector<std::vector<CopyId>> lists(m);
    for (EdgeId e = 0; e < m; ++e) {
      if (!in_sub[e]) continue;
      for (auto c : idx_.copies_of(e)) {
        if (inside_[c]) lists[e].push_back(c);
      }
    }
    closed_edge_.assign(m, false);
    for (EdgeId e = 0; e < m; ++e) {
      if (!in_sub[e] || lists[e].size() < 2) continue;
      bool unique = true;
      if (needs_unique_) {
        for (EdgeId other = 0; other < m && unique; ++other) {
          if (other != e && in_sub[other] && lists[other] == lists[e]) unique = false;
        }
      }
      closed_edge_[e] = unique;
    }
  }

  bool inside(CopyId c) const { return inside_[c]; }
  bool edge_closed(EdgeId e) const { return closed_edge_[e]; }
  bool copy_closed(CopyId c) const {
    std::size_t count = 0;
    for (auto e : idx_.copy(c)) count += closed_edge_[e];
    return count >= 3;
  }

 private:
  const CopyIndex& idx_;
  bool needs_unique_;
  std::vector<bool> inside_;
  std::vector<bool> closed_edge_;
};

std::vector<Vertex> copy_vertices(const Hypergraph& g, std::span<const EdgeId> edges) {
  std::vector<Vertex> out;
  for (auto e : edges) out.insert(out.end(), g.edge(e).begin(), g.edge(e).end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool intersects(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    a[i] < b[j] ? ++i : ++j;
  }
  return false;
}

void describe_step(const Hypergraph& g, GrowStep& step, const std::vector<bool>& in_g, const std::vector<bool>& vertex_in_g) {
  auto verts = copy_vertices(g, step.edges);
  step.inner.clear();
  step.shared_vertices.clear();
  step.shared_edges.clear();
  for (auto v : verts) (vertex_in_g[v] ? step.shared_vertices : step.inner).push_back(v);
  for (auto e : step.edges) {
    if (in_g[e]) step.shared_edges.push_back(e);
  }
}

bool regular_shape(const Hypergraph& g, const GrowStep& step) {
  if (step.shared_edges.size() != 1) return false;
  auto t = g.edge(step.shared_edges[0]);
  return std::equal(t.begin(), t.end(), step.shared_vertices.begin(), step.shared_vertices.end());
}

std::string block_violation(const CopyIndex& idx) {
  auto report = closedness(idx);
  std::ostringstream msg;
  if (idx.num_copies() == 0) return "no F-copy";
  if (!report.uncovered_edges.empty()) {
    msg << "edge " << report.uncovered_edges[0] << " lies in no F-copy";
    return msg.str();
  }
  if (!report.uncovered_vertices.empty()) {
    msg << "vertex " << report.uncovered_vertices[0] << " lies in no F-copy";
    return msg.str();
  }
  if (report.closed_copies.size() != idx.num_copies()) {
    std::vector<bool> closed(idx.num_copies(), false);
    for (auto c : report.closed_copies) closed[c] = true;
    CopyId c = 0;
    while (closed[c]) ++c;
    msg << "copy " << c << " is not closed";
    return msg.str();
  }
  auto bd = block_decomposition(idx);
  if (bd.blocks.size() != 1) {
    msg << "edges split into " << bd.blocks.size() << " blocks";
    return msg.str();
  }
  return {};
}

}  // namespace

GrowSequence build_grow_sequence(const Hypergraph& block, const Hypergraph& pattern, GrowOptions options) {
  GrowSequence seq;
  seq.index = enumerate_copies(block, pattern);
  const CopyIndex& idx = seq.index;
  if (auto problem = block_violation(idx); !problem.empty()) {
    throw ContractError("not an F-block: " + problem);
  }
  if (!satisfies_growth_hypotheses(pattern)) {
    const std::string msg = "pattern is not strictly balanced with e(F) >= 4 or e(F) = 3 and gamma = l-1";
    if (options.require_hypotheses) throw ContractError(msg);
    seq.warnings.push_back(msg);
  }

  const Hypergraph& g = block;
  const auto m = g.num_edges();
  const bool needs_unique = gamma(pattern) < pattern.uniformity() - 1;

  SubgraphClosure in_b(idx, needs_unique);
  in_b.compute(std::vector<bool>(m, true));
  SubgraphClosure in_g(idx, needs_unique);

  std::vector<bool> edge_in_g(m, false), vertex_in_g(g.num_vertices(), false);
  std::size_t edges_in_g = 0;
  std::vector<std::size_t> open_steps;  // fully-open steps of the current prefix
  std::size_t reg = 0, deg = 0;

  auto add = [&](GrowStep step) {
    describe_step(g, step, edge_in_g, vertex_in_g);
    if (seq.steps.empty()) {
      step.kind = StepKind::first;
      step.inner = copy_vertices(g, step.edges);
    } else if (regular_shape(g, step)) {
      step.attachment = step.shared_edges[0];
      ++reg;
    } else {
      step.kind = StepKind::degenerate;
      ++deg;
    }
    auto verts = copy_vertices(g, step.edges);
    int delta = 0;
    std::erase_if(open_steps, [&](std::size_t j) {
      const bool touched = intersects(seq.steps[j].inner, verts);
      delta += touched;
      return touched;
    });
    if (step.kind != StepKind::degenerate) open_steps.push_back(seq.steps.size());
    step.delta = seq.steps.empty() ? 0 : delta;
    step.reg = reg;
    step.deg = deg;
    step.fo = open_steps.size();
    for (auto e : step.edges) {
      if (!edge_in_g[e]) {
        edge_in_g[e] = true;
        ++edges_in_g;
      }
    }
    for (auto v : verts) vertex_in_g[v] = true;
    seq.steps.push_back(std::move(step));
  };

  auto make = [&](CopyId c, StepKind kind) {
    GrowStep s;
    s.copy = c;
    s.edges.assign(idx.copy(c).begin(), idx.copy(c).end());
    s.kind = kind;
    return s;
  };

  add(make(0, StepKind::first));
  while (edges_in_g < m) {
    in_g.compute(edge_in_g);
    std::optional<CopyId> open_copy;
    for (const auto& step : seq.steps) {
      if (!in_g.copy_closed(step.copy)) {
        open_copy = step.copy;
        break;
      }
    }
    if (!open_copy) {
      // A non-closed copy of G_{i-1} that is not itself a step.
      for (CopyId c = 0; c < idx.num_copies(); ++c) {
        if (in_g.inside(c) && !in_g.copy_closed(c)) {
          open_copy = c;
          break;
        }
      }
    }
    std::optional<CopyId> next;
    StepKind kind = StepKind::regular_closed;
    if (open_copy) {
      kind = StepKind::regular_open;
      std::optional<EdgeId> e;
      for (auto x : idx.copy(*open_copy)) {
        if (!in_g.edge_closed(x) && in_b.edge_closed(x)) {
          e = x;
          break;
        }
      }
      if (!e) throw ContractError("grow sequence: open copy has no edge closed in B");
      for (auto c : idx.copies_of(*e)) {
        if (!in_g.inside(c)) {
          next = c;
          break;
        }
      }
      if (!next) throw ContractError("grow sequence: no copy extends the open edge");
    } else {
      for (CopyId c = 0; c < idx.num_copies() && !next; ++c) {
        if (in_g.inside(c)) continue;
        auto edges = idx.copy(c);
        if (std::any_of(edges.begin(), edges.end(), [&](EdgeId x) { return edge_in_g[x]; })) next = c;
      }
      if (!next) throw ContractError("grow sequence: copies split the block");
    }
    add(make(*next, kind));
  }
  return seq;
}

StepClassification classify_steps(const GrowSequence& seq) {
  const Hypergraph& g = seq.block();
  const std::size_t steps = seq.steps.size();
  StepClassification out;
  out.kinds.resize(steps);
  out.delta.assign(steps, 0);
  out.reg.assign(steps, 0);
  out.deg.assign(steps, 0);
  out.fo.assign(steps, 0);
  out.fully_open.resize(steps);

  std::vector<std::vector<Vertex>> verts(steps), inner(steps);
  std::vector<EdgeId> prefix;
  for (std::size_t i = 0; i < steps; ++i) {
    verts[i] = copy_vertices(g, seq.steps[i].edges);
    std::vector<Vertex> before = copy_vertices(g, prefix);
    std::set_difference(verts[i].begin(), verts[i].end(), before.begin(), before.end(), std::back_inserter(inner[i]));
    if (i == 0) {
      out.kinds[i] = StepKind::first;
    } else {
      std::vector<EdgeId> shared;
      for (auto e : seq.steps[i].edges) {
        if (std::binary_search(prefix.begin(), prefix.end(), e)) shared.push_back(e);
      }
      std::vector<Vertex> shared_v;
      std::set_intersection(verts[i].begin(), verts[i].end(), before.begin(), before.end(),
                            std::back_inserter(shared_v));
      const bool regular = shared.size() == 1 &&
                           std::equal(g.edge(shared[0]).begin(), g.edge(shared[0]).end(), shared_v.begin(),
                                      shared_v.end());
      if (!regular) {
        out.kinds[i] = StepKind::degenerate;
      } else {
        // Open branch iff G_{i-1} has a copy that is not closed there.
        auto sub = edge_induced_subgraph(g, prefix).graph;
        auto sub_index = enumerate_copies(sub, seq.pattern());
        out.kinds[i] = closedness(sub_index).closed_copies.size() < sub_index.num_copies()
                           ? StepKind::regular_open
                           : StepKind::regular_closed;
      }
    }
    prefix.insert(prefix.end(), seq.steps[i].edges.begin(), seq.steps[i].edges.end());
    std::sort(prefix.begin(), prefix.end());
    prefix.erase(std::unique(prefix.begin(), prefix.end()), prefix.end());
  }

  // Fully-open straight from the definition.
  auto open_in = [&](std::size_t j, std::size_t i) {
    if (out.kinds[j] == StepKind::degenerate) return false;
    for (std::size_t t = j + 1; t <= i; ++t) {
      if (intersects(inner[j], verts[t])) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < steps; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (open_in(j, i)) out.fully_open[i].push_back(j);
    }
    out.fo[i] = out.fully_open[i].size();
    out.reg[i] = (i > 0 ? out.reg[i - 1] : 0) + is_regular(out.kinds[i]);
    out.deg[i] = (i > 0 ? out.deg[i - 1] : 0) + (out.kinds[i] == StepKind::degenerate);
    if (i > 0) {
      for (std::size_t j = 0; j < i; ++j) out.delta[i] += open_in(j, i - 1) && !open_in(j, i);
    }
  }
  return out;
}

namespace {

// Every copy of G_i not inside G_{i-1} is F_i - e + e~ with |e~ n e| > gamma.
void check_attachment_claim(const GrowSequence& seq, ClaimReport& report) {
  const auto& idx = seq.index;
  const Hypergraph& g = seq.block();
  const int gam = gamma(seq.pattern());
  std::vector<bool> in_g(g.num_edges(), false);
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const auto& step = seq.steps[i];
    if (step.kind == StepKind::regular_open) {
      const EdgeId e = *step.attachment;
      std::vector<EdgeId> base;
      for (auto x : step.edges) {
        if (x != e) base.push_back(x);
      }
      for (CopyId c = 0; c < idx.num_copies(); ++c) {
        auto edges = idx.copy(c);
        bool inside_new = true, inside_old = true;
        for (auto x : edges) {
          const bool old = in_g[x];
          const bool fresh = std::find(step.edges.begin(), step.edges.end(), x) != step.edges.end();
          inside_old = inside_old && old;
          inside_new = inside_new && (old || fresh);
        }
        if (!inside_new || inside_old) continue;
        std::vector<EdgeId> rest;
        std::set_difference(edges.begin(), edges.end(), base.begin(), base.end(), std::back_inserter(rest));
        bool ok = rest.size() == 1 && std::includes(edges.begin(), edges.end(), base.begin(), base.end());
        if (ok) {
          auto a = g.edge(rest[0]), b = g.edge(e);
          std::vector<Vertex> common;
          std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
          ok = static_cast<int>(common.size()) > gam;
        }
        if (!ok) {
          report.violations.push_back("step " + std::to_string(i) + ": copy " + std::to_string(c) +
                                      " is not of the form F_e - e + e~");
        }
      }
    }
    for (auto x : step.edges) in_g[x] = true;
  }
  report.attachment_claim_checked = true;
}

}  // namespace

ClaimReport check_claims(const GrowSequence& seq) {
  ClaimReport report;
  auto& v = report.violations;
  if (seq.steps.empty()) {
    v.push_back("empty sequence");
    return report;
  }
  const auto cls = classify_steps(seq);
  const auto vf = static_cast<std::int64_t>(seq.pattern().num_vertices());
  const auto ell = static_cast<std::int64_t>(seq.pattern().uniformity());
  const std::size_t s = seq.steps.size() - 1;

  std::vector<bool> covered(seq.block().num_edges(), false);
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const auto& st = seq.steps[i];
    const std::string at = "step " + std::to_string(i) + ": ";
    if (st.kind != cls.kinds[i]) v.push_back(at + "stored kind " + to_string(st.kind) + " != " + to_string(cls.kinds[i]));
    if (st.delta != cls.delta[i]) v.push_back(at + "stored delta differs from recomputation");
    if (st.reg != cls.reg[i] || st.deg != cls.deg[i] || st.fo != cls.fo[i]) {
      v.push_back(at + "stored counters differ from recomputation");
    }
    if (i > 0) {
      std::size_t shared = 0, fresh = 0;
      for (auto e : st.edges) (covered[e] ? shared : fresh)++;
      if (shared == 0) v.push_back(at + "shares no edge with the prefix");
      if (fresh == 0) v.push_back(at + "adds no new edge");
    }
    for (auto e : st.edges) covered[e] = true;

    const auto reg = static_cast<std::int64_t>(cls.reg[i]);
    const auto deg = static_cast<std::int64_t>(cls.deg[i]);
    const auto fo = static_cast<std::int64_t>(cls.fo[i]);
    if (i >= 1 && 2 * fo < reg - 2 * deg * vf) v.push_back(at + "fo(S_i) below reg/2 - deg*v(F)");
    if (i >= 1) {
      const auto bound = is_regular(cls.kinds[i]) ? 1 : vf - ell + 1;
      if (cls.delta[i] > bound) v.push_back(at + "Delta exceeds its bound");
    }
    if (i >= 1 && i + 1 < seq.steps.size() && is_regular(cls.kinds[i]) && is_regular(cls.kinds[i + 1]) &&
        cls.delta[i] == 1 && cls.delta[i + 1] != 0) {
      v.push_back(at + "consecutive regular steps both destroy a fully-open step");
    }
    if (cls.kinds[i] == StepKind::regular_closed && static_cast<std::int64_t>(i) > 3 * deg * vf + 1) {
      v.push_back(at + "regular step from the closed branch beyond 3d*v(F)+1");
    }
    report.regular += is_regular(cls.kinds[i]);
    report.degenerate += cls.kinds[i] == StepKind::degenerate;
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) v.push_back("steps do not cover the block");
  if (static_cast<std::int64_t>(s) > 3 * static_cast<std::int64_t>(report.degenerate) * vf) {
    v.push_back("s exceeds 3d*v(F)");
  }
  if (satisfies_growth_hypotheses(seq.pattern())) check_attachment_claim(seq, report);
  return report;
}

}  // namespace ramsey0
