#include "ramsey0/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "ramsey0/copies.hpp"
#include "ramsey0/density.hpp"
#include "ramsey0/errors.hpp"
#include "ramsey0/growseq.hpp"

namespace ramsey0 {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// "3", "-2/5" or "0.125" as an exact rational.
Rational parse_number(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return parse_rational(text);
  const std::string whole = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  if (frac.empty() || frac.size() > 17 || frac.find_first_not_of("0123456789") != std::string::npos) {
    throw InputError("malformed number '" + text + "'");
  }
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  const bool negative = !whole.empty() && whole[0] == '-';
  const Rational head = whole.empty() || whole == "-" || whole == "+" ? Rational(0) : parse_rational(whole);
  const Rational tail(parse_rational(frac).numerator(), scale);
  return negative ? head - tail : head + tail;
}

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  }
  return out;
}

}  // namespace

ProbabilitySpec ProbabilitySpec::parse(const std::string& raw) {
  const std::string text = strip_spaces(raw);
  static const std::regex scaled(R"((?:([^*]+)\*)?n\^\(?(-?[0-9./]+)\)?)");
  std::smatch m;
  ProbabilitySpec spec;
  if (std::regex_match(text, m, scaled)) {
    if (m[1].matched) spec.c = parse_number(m[1]);
    const Rational power = parse_number(m[2]);
    spec.exponent = -power;
  } else {
    spec.c = parse_number(text);
  }
  if (spec.c.numerator() < 0) throw InputError("negative probability constant in '" + raw + "'");
  return spec;
}

long double ProbabilitySpec::evaluate(std::uint64_t n) const {
  long double p = static_cast<long double>(c.numerator()) / static_cast<long double>(c.denominator());
  if (exponent.numerator() != 0) {
    if (n == 0) throw InputError("n^(-a) needs n >= 1");
    const long double e = static_cast<long double>(exponent.numerator()) / exponent.denominator();
    p *= std::pow(static_cast<long double>(n), -e);
  }
  if (!(p >= 0 && p <= 1)) throw InputError("edge probability " + to_string() + " is not in [0, 1] at n = " +
                                            std::to_string(n));
  return p;
}

std::string ProbabilitySpec::to_string() const {
  auto q = [](const Rational& x) {
    return x.denominator() == 1 ? std::to_string(x.numerator()) : ramsey0::to_string(x);
  };
  if (exponent.numerator() == 0) return q(c);
  return q(c) + "*n^(" + q(-exponent) + ")";
}

std::uint64_t sample_seed(std::uint64_t master, std::size_t i) {
  return splitmix64(master + (static_cast<std::uint64_t>(i) + 1) * 0x9e3779b97f4a7c15ull);
}

Hypergraph sample(const SampleSpec& spec) {
  const int ell = spec.ell;
  const Vertex n = spec.n;
  if (ell < 2) throw InputError("sampling needs uniformity >= 2");
  if (!binomial(n, static_cast<std::uint64_t>(ell))) throw InputError("C(n, l) does not fit in 64 bits");
  const long double p = spec.p.evaluate(n);
  if (p == 0 || n < static_cast<Vertex>(ell)) return Hypergraph(ell, n);

  std::mt19937_64 rng(spec.seed);
  // Uniform on (0, 1] with 53 random bits, so log() is finite.
  auto uniform = [&] { return static_cast<long double>((rng() >> 11) + 1) * 0x1.0p-53L; };
  const bool full = p >= 1;
  const long double log_q = full ? 0 : std::log1p(-p);
  auto next_gap = [&]() -> std::uint64_t {
    if (full) return 0;
    const long double k = std::floor(std::log(uniform()) / log_q);
    return k >= 1.8e19L ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(k);
  };

  const auto total = *binomial(n, static_cast<std::uint64_t>(ell));
  std::vector<Vertex> flat;
  const long double expected = static_cast<long double>(total) * p;
  flat.reserve(static_cast<std::size_t>(std::min<long double>(expected * 1.05L + 64, 1e9L)) *
               static_cast<std::size_t>(ell));

  // Walk the (l-1)-prefixes in lexicographic order; each owns the block of
  // l-sets that extend it by one larger vertex.
  std::vector<Vertex> prefix(static_cast<std::size_t>(ell - 1));
  for (std::size_t i = 0; i < prefix.size(); ++i) prefix[i] = static_cast<Vertex>(i);
  std::uint64_t gap = next_gap();
  for (;;) {
    const Vertex last = prefix.back();
    const std::uint64_t block = n - 1 - last;
    std::uint64_t pos = 0;
    while (gap < block - pos) {
      pos += gap;
      flat.insert(flat.end(), prefix.begin(), prefix.end());
      flat.push_back(static_cast<Vertex>(last + 1 + pos));
      ++pos;
      gap = next_gap();
    }
    gap -= block - pos;
    // Next (l-1)-subset of [0, n-1).
    int i = ell - 2;
    while (i >= 0 && prefix[static_cast<std::size_t>(i)] == n - 2 - static_cast<Vertex>(ell - 2 - i)) --i;
    if (i < 0) break;
    ++prefix[static_cast<std::size_t>(i)];
    for (auto j = static_cast<std::size_t>(i) + 1; j < prefix.size(); ++j) prefix[j] = prefix[j - 1] + 1;
  }
  return Hypergraph::from_sorted_flat(ell, n, std::move(flat));
}

const char* to_string(PipelineVariant v) {
  switch (v) {
    case PipelineVariant::proper:
      return "proper";
    case PipelineVariant::bounded:
      return "bounded";
    case PipelineVariant::ramsey:
      return "ramsey";
  }
  return "?";
}

PipelineVariant parse_pipeline_variant(const std::string& text) {
  if (text == "proper") return PipelineVariant::proper;
  if (text == "bounded" || text == "2-bounded") return PipelineVariant::bounded;
  if (text == "ramsey") return PipelineVariant::ramsey;
  throw InputError("unknown variant '" + text + "' (expected proper, bounded or ramsey)");
}

SampleReport run_sample(const SampleSpec& spec, const Hypergraph& f, const PipelineOptions& options, bool replay) {
  const auto start = std::chrono::steady_clock::now();
  SampleReport rep;
  rep.seed = spec.seed;
  auto host = std::make_shared<const Hypergraph>(sample(spec));
  const Hypergraph& g = *host;
  rep.edges = g.num_edges();
  const auto idx = enumerate_copies(host, f);
  rep.copies = idx.num_copies();

  StripResult res;
  switch (options.variant) {
    case PipelineVariant::proper:
      res = strip_and_color_proper(idx, options.colorer);
      break;
    case PipelineVariant::bounded:
      res = strip_and_color_bounded(idx, options.colorer);
      break;
    case PipelineVariant::ramsey:
      res = ramsey_two_coloring(idx, options.r, options.colorer);
      break;
  }
  rep.loop1_pairs = res.loop1_pairs;
  rep.loop2_edges = res.loop2_edges;
  rep.blocks = res.blocks.size();
  rep.success = res.success;
  rep.failure = res.failure;
  for (const auto& s : res.block_stage) ++rep.stages[s];

  for (std::size_t b = 0; b < res.blocks.size(); ++b) {
    const auto sub = edge_induced_subgraph(g, res.blocks[b]).graph;
    rep.max_block_vertices = std::max<std::size_t>(rep.max_block_vertices, sub.num_vertices());
    rep.max_block_edges = std::max(rep.max_block_edges, sub.num_edges());
    rep.max_block_density = std::max(rep.max_block_density, max_density(sub).value);
    ++rep.block_histogram[sub.num_vertices()];
    if (!options.check_claims) continue;
    if (sub.num_edges() > options.claims_max_edges) {
      ++rep.claim_skipped;
      continue;
    }
    ++rep.claim_blocks;
    const std::string at = "block " + std::to_string(b) + ": ";
    try {
      const auto claims = check_claims(build_grow_sequence(sub, f));
      for (const auto& v : claims.violations) rep.claim_violations.push_back(at + v);
    } catch (const ContractError& e) {
      rep.claim_violations.push_back(at + e.what());
    }
  }

  if (res.success) {
    const bool valid = verify(g, res.coloring);
    const bool avoided = options.variant == PipelineVariant::ramsey
                             ? !find_monochromatic_copy(res.coloring, idx).has_value()
                             : !find_rainbow_copy(res.coloring, idx).has_value();
    rep.verified = valid && avoided;
    if (rep.verified) {
      rep.coloring_hash = coloring_hash(res.coloring);
    } else {
      rep.success = false;
      rep.failure = valid ? "coloring contains a forbidden copy" : "coloring fails its variant check";
    }
  }
  if (replay) {
    rep.replay_checked = true;
    rep.replay_error = check_strip_soundness(idx, res, options.variant == PipelineVariant::proper);
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::size_t ExperimentReport::successes() const {
  return static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [](const SampleReport& s) { return s.success; }));
}

double ExperimentReport::success_fraction() const {
  return samples.empty() ? 0.0 : static_cast<double>(successes()) / static_cast<double>(samples.size());
}

std::size_t ExperimentReport::max_block_vertices() const {
  std::size_t out = 0;
  for (const auto& s : samples) out = std::max(out, s.max_block_vertices);
  return out;
}

Rational ExperimentReport::max_block_density() const {
  Rational out{0};
  for (const auto& s : samples) out = std::max(out, s.max_block_density);
  return out;
}

std::map<std::size_t, std::size_t> ExperimentReport::block_histogram() const {
  std::map<std::size_t, std::size_t> out;
  for (const auto& s : samples) {
    for (auto [v, count] : s.block_histogram) out[v] += count;
  }
  return out;
}

ExperimentReport run_pipeline(const SampleSpec& base, const Hypergraph& f, const PipelineOptions& options,
                              std::size_t reps, const std::string& pattern_name) {
  ExperimentReport report;
  report.base = base;
  report.pattern = pattern_name;
  report.options = options;
  const std::size_t replay_at = reps == 0 ? 0 : splitmix64(base.seed) % reps;
  for (std::size_t i = 0; i < reps; ++i) {
    SampleSpec spec = base;
    spec.seed = sample_seed(base.seed, i);
    report.samples.push_back(run_sample(spec, f, options, options.replay_check && i == replay_at));
  }
  return report;
}

std::vector<SweepRow> sweep(const SampleSpec& base, const std::vector<Rational>& c_grid, const Hypergraph& f,
                            const PipelineOptions& options, std::size_t reps) {
  std::vector<SweepRow> rows;
  for (const auto& c : c_grid) {
    SampleSpec spec = base;
    spec.p.c = c;
    const auto rep = run_pipeline(spec, f, options, reps);
    rows.push_back({c, reps, rep.successes(), rep.success_fraction(), rep.max_block_vertices(),
                    rep.max_block_density()});
  }
  return rows;
}

namespace {

using nlohmann::json;

std::string rat(const Rational& q) {
  return q.denominator() == 1 ? std::to_string(q.numerator()) : to_string(q);
}

json sample_json(const SampleReport& s, bool timings) {
  json j{{"seed", s.seed},
         {"edges", s.edges},
         {"copies", s.copies},
         {"loop1_pairs", s.loop1_pairs},
         {"loop2_edges", s.loop2_edges},
         {"blocks", s.blocks},
         {"max_block_vertices", s.max_block_vertices},
         {"max_block_edges", s.max_block_edges},
         {"max_block_density", rat(s.max_block_density)},
         {"success", s.success},
         {"verified", s.verified}};
  json hist = json::object();
  for (auto [v, c] : s.block_histogram) hist[std::to_string(v)] = c;
  j["block_histogram"] = hist;
  j["stages"] = s.stages;
  j["coloring_hash"] = s.coloring_hash ? json(*s.coloring_hash) : json(nullptr);
  if (!s.failure.empty()) j["failure"] = s.failure;
  if (s.replay_checked) j["replay"] = s.replay_error.empty() ? json("ok") : json(s.replay_error);
  if (s.claim_blocks + s.claim_skipped > 0) {
    j["claims"] = {{"blocks", s.claim_blocks}, {"skipped", s.claim_skipped}, {"violations", s.claim_violations}};
  }
  if (timings) j["seconds"] = s.seconds;
  return j;
}

}  // namespace

std::string report_json(const ExperimentReport& r, bool timings) {
  json j;
  j["schema"] = "ramsey0.experiment/1";
  j["spec"] = {{"ell", r.base.ell}, {"n", r.base.n}, {"p", r.base.p.to_string()}, {"seed", r.base.seed}};
  j["pattern"] = r.pattern;
  j["variant"] = to_string(r.options.variant);
  if (r.options.variant == PipelineVariant::ramsey) j["r"] = r.options.r;
  json samples = json::array();
  for (const auto& s : r.samples) samples.push_back(sample_json(s, timings));
  json hist = json::object();
  for (auto [v, c] : r.block_histogram()) hist[std::to_string(v)] = c;
  j["aggregate"] = {{"samples", r.samples.size()},
                    {"successes", r.successes()},
                    {"success_fraction", r.success_fraction()},
                    {"max_block_vertices", r.max_block_vertices()},
                    {"max_block_density", rat(r.max_block_density())},
                    {"block_histogram", hist}};
  j["samples"] = samples;
  return j.dump(2);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "c,reps,successes,success_fraction,max_block_vertices,max_block_density\n";
  for (const auto& r : rows) {
    out << rat(r.c) << ',' << r.reps << ',' << r.successes << ',' << r.success_fraction << ','
        << r.max_block_vertices << ',' << rat(r.max_block_density) << '\n';
  }
  return out.str();
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  json j = json::array();
  for (const auto& r : rows) {
    j.push_back({{"c", rat(r.c)},
                 {"reps", r.reps},
                 {"successes", r.successes},
                 {"success_fraction", r.success_fraction},
                 {"max_block_vertices", r.max_block_vertices},
                 {"max_block_density", rat(r.max_block_density)}});
  }
  return j.dump(2);
}

}  // namespace ramsey0
