#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "ramsey0/colorers.hpp"
#include "ramsey0/coloring.hpp"
#include "ramsey0/copies.hpp"
#include "ramsey0/corpus.hpp"
#include "ramsey0/decide.hpp"
#include "ramsey0/density.hpp"
#include "ramsey0/errors.hpp"
#include "ramsey0/experiments.hpp"
#include "ramsey0/growseq.hpp"
#include "ramsey0/parallel.hpp"

namespace ramsey0::cli {

namespace {

using nlohmann::json;

constexpr std::string_view kCorpus = "corpus:";

std::string rat(const Rational& q) {
  return q.denominator() == 1 ? std::to_string(q.numerator()) : to_string(q);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

Hypergraph load_graph(const std::string& ref) {
  if (ref.starts_with(kCorpus)) return named_graph(ref.substr(kCorpus.size()));
  return read_hypergraph_file(ref);
}

Coloring load_coloring(const std::string& ref, const Hypergraph& host) {
  if (ref.starts_with(kCorpus)) {
    const auto name = ref.substr(kCorpus.size());
    auto named = explicit_coloring(name);
    if (!named) throw InputError("unknown corpus coloring: " + name);
    if (!(named->host == host)) throw InputError("coloring " + name + " belongs to a different host graph");
    return named->coloring;
  }
  return parse_coloring(read_file(ref), host.num_edges());
}

Variant parse_variant(const std::string& s) {
  if (s == "proper") return Variant::proper;
  if (s == "bounded") return Variant::bounded;
  if (s == "ramsey") return Variant::color;
  throw InputError("unknown variant '" + s + "' (expected proper, bounded or ramsey)");
}

json graph_json(const Hypergraph& g) {
  return {{"uniformity", g.uniformity()}, {"vertices", g.num_vertices()}, {"edges", g.edge_list()}};
}

json coloring_json(const Coloring& c) {
  json colors = json::array();
  for (auto x : c.color) colors.push_back(x == kUncolored ? json(nullptr) : json(x));
  json j{{"variant", c.variant == Variant::color ? "ramsey" : to_string(c.variant)}, {"colors", colors}};
  if (c.variant != Variant::proper) j["r"] = c.r;
  return j;
}

json copy_json(const CopyIndex& idx, CopyId c) {
  json edges = json::array();
  for (auto e : idx.copy(c)) {
    auto t = idx.host().edge(e);
    edges.push_back(std::vector<Vertex>(t.begin(), t.end()));
  }
  return {{"copy", c}, {"edge_ids", std::vector<EdgeId>(idx.copy(c).begin(), idx.copy(c).end())}, {"edges", edges}};
}

std::string edge_text(const Hypergraph& g, EdgeId e) {
  std::string s = "{";
  for (auto v : g.edge(e)) s += (s.size() > 1 ? "," : "") + std::to_string(v);
  return s + "}";
}

struct Context {
  std::ostream& out;
  bool as_json = false;
  void emit(const json& j) const { out << j.dump(2) << '\n'; }
};

int cmd_density(const Context& ctx, const std::string& g_ref) {
  const auto g = load_graph(g_ref);
  const auto r = density_report(g);
  auto opt = [](const std::optional<Rational>& q) { return q ? json(rat(*q)) : json(nullptr); };
  if (ctx.as_json) {
    ctx.emit({{"d", rat(r.d)},
              {"m", rat(r.m)},
              {"witness_m", r.witness_m},
              {"d_ell", opt(r.d_ell)},
              {"m_ell", opt(r.m_ell)},
              {"witness_m_ell", r.witness_m_ell},
              {"gamma", r.gamma ? json(*r.gamma) : json(nullptr)},
              {"balanced", r.balanced},
              {"strictly_balanced", r.strictly_balanced}});
    return kOk;
  }
  auto text = [](const std::optional<Rational>& q) { return q ? rat(*q) : std::string("-"); };
  ctx.out << "d(G)       " << rat(r.d) << "\nm(G)       " << rat(r.m) << "\nd_l(G)     " << text(r.d_ell)
          << "\nm_l(G)     " << text(r.m_ell) << "\ngamma      " << (r.gamma ? std::to_string(*r.gamma) : "-")
          << "\nbalanced   " << (r.strictly_balanced ? "strictly" : r.balanced ? "yes" : "no") << '\n';
  return kOk;
}

int cmd_blocks(const Context& ctx, const std::string& g_ref, const std::string& f_ref) {
  const auto g = load_graph(g_ref);
  const auto f = load_graph(f_ref);
  const auto idx = enumerate_copies(g, f);
  const auto cl = closedness(idx);
  const auto bd = block_decomposition(idx);
  json blocks = json::array();
  for (std::size_t b = 0; b < bd.blocks.size(); ++b) {
    const auto sub = edge_induced_subgraph(g, bd.blocks[b]).graph;
    blocks.push_back({{"edges", sub.num_edges()},
                      {"vertices", sub.num_vertices()},
                      {"copies", bd.block_copies[b].size()},
                      {"m", rat(max_density(sub).value)}});
  }
  if (ctx.as_json) {
    ctx.emit({{"copies", idx.num_copies()},
              {"closed_edges", cl.closed_edges.size()},
              {"closed_copies", cl.closed_copies.size()},
              {"graph_closed", cl.graph_closed},
              {"uncovered_edges", bd.uncovered_edges.size()},
              {"blocks", blocks}});
    return kOk;
  }
  ctx.out << "copies " << idx.num_copies() << ", closed edges " << cl.closed_edges.size() << ", closed copies "
          << cl.closed_copies.size() << ", graph " << (cl.graph_closed ? "closed" : "not closed") << '\n'
          << "uncovered edges " << bd.uncovered_edges.size() << '\n'
          << "block  vertices  edges  copies  m\n";
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& x = blocks[b];
    ctx.out << b << "  " << x["vertices"] << "  " << x["edges"] << "  " << x["copies"] << "  "
            << x["m"].get<std::string>() << '\n';
  }
  return kOk;
}

int cmd_growseq(const Context& ctx, const std::string& b_ref, const std::string& f_ref) {
  const auto b = load_graph(b_ref);
  const auto f = load_graph(f_ref);
  const auto seq = build_grow_sequence(b, f);
  const auto claims = check_claims(seq);
  json steps = json::array();
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const auto& s = seq.steps[i];
    steps.push_back({{"i", i},
                     {"copy", s.copy},
                     {"kind", to_string(s.kind)},
                     {"attachment", s.attachment ? json(*s.attachment) : json(nullptr)},
                     {"delta", s.delta},
                     {"reg", s.reg},
                     {"deg", s.deg},
                     {"fo", s.fo},
                     {"edges", s.edges}});
  }
  if (ctx.as_json) {
    ctx.emit({{"length", seq.length()},
              {"steps", steps},
              {"warnings", seq.warnings},
              {"claims",
               {{"ok", claims.ok()},
                {"violations", claims.violations},
                {"regular", claims.regular},
                {"degenerate", claims.degenerate}}}});
  } else {
    ctx.out << "i  copy  kind            attach  delta  reg  deg  fo\n";
    for (std::size_t i = 0; i < seq.steps.size(); ++i) {
      const auto& s = seq.steps[i];
      ctx.out << i << "  " << s.copy << "  " << to_string(s.kind) << "  "
              << (s.attachment ? edge_text(b, *s.attachment) : "-") << "  " << s.delta << "  " << s.reg << "  "
              << s.deg << "  " << s.fo << '\n';
    }
    for (const auto& w : seq.warnings) ctx.out << "warning: " << w << '\n';
    ctx.out << "s = " << seq.length() << ", claims " << (claims.ok() ? "hold" : "violated") << '\n';
    for (const auto& v : claims.violations) ctx.out << "  " << v << '\n';
  }
  return claims.ok() ? kOk : kNegative;
}

int cmd_color(const Context& ctx, const std::string& variant, const std::string& g_ref, const std::string& f_ref,
              int r, const std::string& out_path) {
  const auto v = parse_variant(variant);
  auto host = std::make_shared<const Hypergraph>(load_graph(g_ref));
  const auto f = load_graph(f_ref);
  const auto idx = enumerate_copies(host, f);
  StripResult res;
  if (v == Variant::proper) {
    res = strip_and_color_proper(idx);
  } else if (v == Variant::bounded) {
    if (r != 2) throw InputError("the bounded colorer produces 2-bounded colorings (--r 2)");
    res = strip_and_color_bounded(idx);
  } else {
    res = ramsey_two_coloring(idx, r);
  }
  std::map<std::string, std::size_t> stages;
  for (const auto& s : res.block_stage) ++stages[s];
  if (res.success && !out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) throw InputError("cannot write '" + out_path + "'");
    file << serialize(res.coloring);
  }
  if (ctx.as_json) {
    json j{{"success", res.success},
           {"loop1_pairs", res.loop1_pairs},
           {"loop2_edges", res.loop2_edges},
           {"blocks", res.blocks.size()},
           {"stages", stages}};
    if (res.success) {
      j["coloring_hash"] = coloring_hash(res.coloring);
      j["coloring"] = coloring_json(res.coloring);
    } else {
      j["failure"] = res.failure;
    }
    ctx.emit(j);
  } else if (!res.success) {
    ctx.out << "no coloring: " << res.failure << '\n';
  } else if (out_path.empty()) {
    ctx.out << serialize(res.coloring);
  } else {
    ctx.out << "wrote " << out_path << " (" << res.loop1_pairs << " pairs, " << res.loop2_edges
            << " single edges, " << res.blocks.size() << " blocks)\n";
  }
  return res.success ? kOk : kNegative;
}

int cmd_verify(const Context& ctx, const std::string& g_ref, const std::string& f_ref, const std::string& c_ref,
               std::string mode) {
  auto host = std::make_shared<const Hypergraph>(load_graph(g_ref));
  const auto f = load_graph(f_ref);
  const auto c = load_coloring(c_ref, *host);
  if (mode.empty()) mode = c.variant == Variant::color ? "mono" : "rainbow";
  if (mode != "rainbow" && mode != "mono") throw InputError("--mode must be rainbow or mono");
  const bool valid = verify(*host, c);
  const auto idx = enumerate_copies(host, f);
  const auto witness = mode == "rainbow" ? find_rainbow_copy(c, idx) : find_monochromatic_copy(c, idx);
  const std::string kind = mode == "rainbow" ? "rainbow" : "monochromatic";
  if (ctx.as_json) {
    ctx.emit({{"valid", valid},
              {"variant", c.variant == Variant::color ? "ramsey" : to_string(c.variant)},
              {"mode", mode},
              {"copies", idx.num_copies()},
              {"witness", witness ? copy_json(idx, *witness) : json(nullptr)}});
  } else {
    if (!valid) ctx.out << "coloring is not a valid " << to_string(c.variant) << " coloring\n";
    if (witness) {
      ctx.out << kind << " copy " << *witness << ":";
      for (auto e : idx.copy(*witness)) ctx.out << ' ' << edge_text(*host, e);
      ctx.out << '\n';
    } else {
      ctx.out << "no " << kind << " copy\n";
    }
  }
  return valid && !witness ? kOk : kNegative;
}

SearchLimits limits_from(std::uint64_t max_nodes, bool no_bound) {
  SearchLimits l;
  if (max_nodes > 0) l.max_nodes = max_nodes;
  l.counting_bound = !no_bound;
  return l;
}

int cmd_decide(const Context& ctx, const std::string& variant, const std::string& g_ref, const std::string& f_ref,
               int r, const SearchLimits& limits) {
  const auto v = parse_variant(variant);
  auto host = std::make_shared<const Hypergraph>(load_graph(g_ref));
  const auto idx = enumerate_copies(host, load_graph(f_ref));
  const auto d = decide(idx, v, r, limits);
  if (ctx.as_json) {
    ctx.emit({{"arrow", d.arrow == Arrow::undecided ? json(nullptr) : json(d.holds())},
              {"result", to_string(d.arrow)},
              {"variant", variant},
              {"r", r},
              {"copies", idx.num_copies()},
              {"nodes", d.stats.nodes},
              {"leaves", d.stats.leaves},
              {"branches", d.stats.branches},
              {"witness", d.witness ? coloring_json(*d.witness) : json(nullptr)}});
  } else {
    ctx.out << "arrow=" << (d.arrow == Arrow::undecided ? "undecided" : d.holds() ? "true" : "false") << " ("
            << idx.num_copies() << " copies, " << d.stats.nodes << " nodes, " << d.stats.leaves << " leaves)\n";
    if (d.witness) ctx.out << serialize(*d.witness);
  }
  return d.arrow == Arrow::undecided ? kUndecided : kOk;
}

int cmd_search(const Context& ctx, const std::string& variant, const std::string& f_ref, unsigned vmax,
               const std::string& density, int r, const SearchLimits& limits) {
  const auto f = load_graph(f_ref);
  const auto found = search_obstructions(f, parse_variant(variant), r, vmax, parse_rational(density), limits);
  auto line = [&](const char* type, const Hypergraph& g) {
    json j = graph_json(g);
    j["type"] = type;
    j["m"] = rat(max_density(g).value);
    ctx.out << j.dump() << '\n';
  };
  for (const auto& g : found.obstructions) line("obstruction", g);
  for (const auto& g : found.undecided) line("undecided", g);
  ctx.out << json{{"type", "summary"},
                  {"examined", found.examined},
                  {"obstructions", found.obstructions.size()},
                  {"undecided", found.undecided.size()}}
                 .dump()
          << '\n';
  return found.undecided.empty() ? kOk : kUndecided;
}

struct ExperimentArgs {
  int ell = 2;
  unsigned n = 0;
  std::string p;
  std::string f;
  std::string variant = "bounded";
  int r = 2;
  std::size_t reps = 1;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool check_claims = false;
  bool no_timings = false;
  std::string c_grid;
  std::string csv;
};

int cmd_experiment(const Context& ctx, const ExperimentArgs& a) {
  if (!a.seed) throw InputError("experiment needs --seed");
  const auto f = load_graph(a.f);
  SampleSpec spec{a.ell, a.n, ProbabilitySpec::parse(a.p), *a.seed};
  PipelineOptions o;
  o.variant = parse_pipeline_variant(a.variant);
  o.r = a.r;
  o.check_claims = a.check_claims;

  if (!a.c_grid.empty()) {
    std::vector<Rational> grid;
    std::stringstream list(a.c_grid);
    for (std::string item; std::getline(list, item, ',');) {
      grid.push_back(ProbabilitySpec::parse(item).c);
    }
    const auto rows = sweep(spec, grid, f, o, a.reps);
    const std::string csv = sweep_csv(rows);
    if (!a.csv.empty()) {
      std::ofstream file(a.csv);
      if (!file) throw InputError("cannot write '" + a.csv + "'");
      file << csv;
    }
    if (ctx.as_json) {
      ctx.out << sweep_json(rows) << '\n';
    } else {
      ctx.out << csv;
    }
    return kOk;
  }

  const auto report = run_pipeline(spec, f, o, a.reps, a.f);
  const std::string doc = report_json(report, !a.no_timings);
  if (!a.out.empty()) {
    std::ofstream file(a.out);
    if (!file) throw InputError("cannot write '" + a.out + "'");
    file << doc << '\n';
  }
  if (ctx.as_json) {
    ctx.out << doc << '\n';
  } else {
    ctx.out << "samples " << report.samples.size() << ", successes " << report.successes() << ", max block "
            << report.max_block_vertices() << " vertices, max m(B) " << rat(report.max_block_density()) << '\n';
    for (const auto& s : report.samples) {
      if (!s.success) ctx.out << "  seed " << s.seed << ": " << s.failure << '\n';
      for (const auto& v : s.claim_violations) ctx.out << "  seed " << s.seed << ": " << v << '\n';
      if (!s.replay_error.empty()) ctx.out << "  seed " << s.seed << ": replay " << s.replay_error << '\n';
    }
  }
  return report.successes() == report.samples.size() ? kOk : kNegative;
}

int cmd_corpus_list(const Context& ctx) {
  const auto names = corpus_names();
  if (ctx.as_json) {
    ctx.emit(names);
  } else {
    for (const auto& n : names) ctx.out << n << '\n';
  }
  return kOk;
}

int cmd_corpus_show(const Context& ctx, const std::string& name) {
  if (auto c = explicit_coloring(name)) {
    if (ctx.as_json) {
      ctx.emit({{"name", c->name},
                {"description", c->description},
                {"host", graph_json(c->host)},
                {"pattern", graph_json(c->pattern)},
                {"coloring", coloring_json(c->coloring)}});
    } else {
      ctx.out << "# " << c->description << '\n' << serialize(c->coloring);
    }
    return kOk;
  }
  const auto g = named_graph(name);
  if (ctx.as_json) {
    ctx.emit(graph_json(g));
  } else {
    ctx.out << serialize(g);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random Ramsey 0-statement toolkit", "ramsey0"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_out = false;
  int threads = 0;
  app.add_flag("--json", json_out, "Machine-readable JSON output");
  app.add_option("--threads", threads, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);

  std::string a1, a2, a3, a4, mode, out_path, density_cap;
  int r = 2;
  unsigned vmax = 6;
  std::uint64_t max_nodes = 0;
  bool no_bound = false;

  auto* density = app.add_subcommand("density", "Densities, balancedness and gamma of a graph");
  density->add_option("graph", a1)->required();

  auto* blocks = app.add_subcommand("blocks", "Copies, closedness and F-blocks of G");
  blocks->add_option("graph", a1)->required();
  blocks->add_option("pattern", a2)->required();

  auto* growseq = app.add_subcommand("growseq", "Grow sequence of a block and the claim checks");
  growseq->add_option("block", a1)->required();
  growseq->add_option("pattern", a2)->required();

  auto* color = app.add_subcommand("color", "Color G by stripping and block colorers");
  color->add_option("variant", a1, "proper, bounded or ramsey")->required();
  color->add_option("graph", a2)->required();
  color->add_option("pattern", a3)->required();
  color->add_option("--r", r, "Bound or number of colors");
  color->add_option("--out", out_path, "Write the coloring here");

  auto* verify_cmd = app.add_subcommand("verify", "Check a coloring and look for a rainbow or monochromatic copy");
  verify_cmd->add_option("graph", a1)->required();
  verify_cmd->add_option("pattern", a2)->required();
  verify_cmd->add_option("coloring", a3)->required();
  verify_cmd->add_option("--mode", mode, "rainbow or mono");

  auto* decide_cmd = app.add_subcommand("decide", "Exhaustive arrow decision");
  decide_cmd->add_option("variant", a1, "proper, bounded or ramsey")->required();
  decide_cmd->add_option("graph", a2)->required();
  decide_cmd->add_option("pattern", a3)->required();
  decide_cmd->add_option("--r", r);
  decide_cmd->add_option("--max-nodes", max_nodes, "Node budget per branch");
  decide_cmd->add_flag("--no-counting-bound", no_bound);

  auto* search = app.add_subcommand("search-obstructions", "Connected graphs below a density cap with the arrow");
  search->add_option("variant", a1)->required();
  search->add_option("pattern", a2)->required();
  search->add_option("--vmax", vmax)->required();
  search->add_option("--density", density_cap, "Cap a/b on m(G)")->required();
  search->add_option("--r", r);
  search->add_option("--max-nodes", max_nodes);

  ExperimentArgs ex;
  auto* experiment = app.add_subcommand("experiment", "Random hypergraph pipeline runs");
  experiment->add_option("--ell", ex.ell)->required();
  experiment->add_option("--n", ex.n)->required();
  experiment->add_option("--p", ex.p, "c*n^(-a/b) or a probability")->required();
  experiment->add_option("--F", ex.f, "Pattern file or corpus:NAME")->required();
  experiment->add_option("--variant", ex.variant);
  experiment->add_option("--r", ex.r);
  experiment->add_option("--reps", ex.reps);
  experiment->add_option("--seed", ex.seed, "Master seed (required)");
  experiment->add_option("--out", ex.out, "JSON report file");
  experiment->add_flag("--check-claims", ex.check_claims);
  experiment->add_flag("--no-timings", ex.no_timings, "Leave runtimes out of the report");
  experiment->add_option("--c-grid", ex.c_grid, "Comma separated constants c; runs a sweep");
  experiment->add_option("--csv", ex.csv, "Sweep table file");

  auto* corpus = app.add_subcommand("corpus", "Built-in graphs and colorings");
  corpus->require_subcommand(1);
  auto* corpus_list = corpus->add_subcommand("list", "List built-in names");
  auto* corpus_show = corpus->add_subcommand("show", "Print a built-in graph or coloring");
  corpus_show->add_option("name", a1)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kInputError;
  }

  set_num_threads(threads);
  const Context ctx{out, json_out};
  try {
    if (*density) return cmd_density(ctx, a1);
    if (*blocks) return cmd_blocks(ctx, a1, a2);
    if (*growseq) return cmd_growseq(ctx, a1, a2);
    if (*color) return cmd_color(ctx, a1, a2, a3, r, out_path);
    if (*verify_cmd) return cmd_verify(ctx, a1, a2, a3, mode);
    if (*decide_cmd) return cmd_decide(ctx, a1, a2, a3, r, limits_from(max_nodes, no_bound));
    if (*search) return cmd_search(ctx, a1, a2, vmax, density_cap, r, limits_from(max_nodes, false));
    if (*experiment) return cmd_experiment(ctx, ex);
    if (*corpus_list) return cmd_corpus_list(ctx);
    if (*corpus_show) return cmd_corpus_show(ctx, a1);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace ramsey0::cli
