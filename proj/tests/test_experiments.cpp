#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "ramsey0/corpus.hpp"
#include "ramsey0/errors.hpp"
#include "ramsey0/experiments.hpp"
#include "ramsey0/parallel.hpp"

using namespace ramsey0;

namespace {

SampleSpec spec(int ell, Vertex n, const std::string& p, std::uint64_t seed = 1) {
  return SampleSpec{ell, n, ProbabilitySpec::parse(p), seed};
}

}  // namespace

TEST_CASE("probability specs") {
  auto a = ProbabilitySpec::parse("0.1*n^(-2/5)");
  CHECK(a.c == Rational(1, 10));
  CHECK(a.exponent == Rational(2, 5));
  CHECK(a.to_string() == "1/10*n^(-2/5)");
  CHECK(ProbabilitySpec::parse("n^(-1)").c == Rational(1));
  CHECK(ProbabilitySpec::parse("1/10 * n^(-1/3)").exponent == Rational(1, 3));
  auto plain = ProbabilitySpec::parse("0.25");
  CHECK(plain.c == Rational(1, 4));
  CHECK(plain.exponent == Rational(0));
  CHECK(plain.evaluate(10) == doctest::Approx(0.25));
  CHECK(ProbabilitySpec::parse("2*n^(-1/2)").evaluate(16) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ProbabilitySpec::parse("3/2").evaluate(5), InputError);
  CHECK_THROWS_AS(ProbabilitySpec::parse("-0.5"), InputError);
  CHECK_THROWS_AS(ProbabilitySpec::parse("abc"), InputError);
  CHECK_THROWS_AS(sample(spec(2, 10, "5*n^(-1/2)")), InputError);
}

TEST_CASE("trivial probabilities") {
  CHECK(sample(spec(2, 50, "0")).num_edges() == 0);
  CHECK(sample(spec(2, 30, "1")) == complete_hypergraph(2, 30));
  CHECK(sample(spec(3, 12, "1")) == complete_hypergraph(3, 12));
  CHECK(sample(spec(4, 9, "1")) == complete_hypergraph(4, 9));
  CHECK(sample(spec(3, 2, "1/2")).num_edges() == 0);
}

TEST_CASE("edge count concentrates") {
  // l = 2, n = 10^4, p = 1/n: C(n,2) p = 4999.5, sigma about 70.7.
  const double mean = 4999.5;
  const double sigma = std::sqrt(mean * (1 - 1e-4));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = sample(spec(2, 10000, "n^(-1)", seed));
    CHECK(std::abs(static_cast<double>(g.num_edges()) - mean) <= 5 * sigma);
  }
}

TEST_CASE("each l-set appears with probability p") {
  // Frequencies of all 20 triples of [6] over 4000 samples, p = 0.3.
  const int trials = 4000;
  const double p = 0.3;
  std::map<std::vector<Vertex>, int> seen;
  for (int t = 0; t < trials; ++t) {
    const auto g = sample(spec(3, 6, "0.3", static_cast<std::uint64_t>(t)));
    for (const auto& e : g.edge_list()) ++seen[e];
  }
  CHECK(seen.size() == 20);
  const double sigma = std::sqrt(trials * p * (1 - p));
  for (const auto& [e, count] : seen) CHECK(std::abs(count - trials * p) <= 5 * sigma);
}

TEST_CASE("sampling is reproducible") {
  CHECK(sample(spec(3, 40, "0.1", 9)) == sample(spec(3, 40, "0.1", 9)));
  CHECK_FALSE(sample(spec(3, 40, "0.1", 9)) == sample(spec(3, 40, "0.1", 10)));
  std::set<std::uint64_t> seeds;
  for (std::size_t i = 0; i < 100; ++i) seeds.insert(sample_seed(5, i));
  CHECK(seeds.size() == 100);
}

TEST_CASE("subcritical pipeline colors every sample") {
  PipelineOptions o;
  o.check_claims = true;
  const auto r = run_pipeline(spec(2, 2000, "0.1*n^(-2/5)", 3), named_graph("K4"), o, 4, "K4");
  CHECK(r.samples.size() == 4);
  CHECK(r.successes() == 4);
  std::size_t replays = 0;
  for (const auto& s : r.samples) {
    CHECK(s.verified);
    CHECK(s.coloring_hash.has_value());
    if (s.replay_checked) {
      ++replays;
      CHECK(s.replay_error.empty());
    }
  }
  CHECK(replays == 1);
  CHECK(r.max_block_density() <= Rational(5, 2));
}

TEST_CASE("blocks near the threshold satisfy the density bound and the claims") {
  PipelineOptions o;
  o.check_claims = true;
  const auto r = run_pipeline(spec(2, 1000, "n^(-2/5)", 7), named_graph("K4"), o, 3);
  std::size_t checked = 0;
  for (const auto& s : r.samples) {
    CHECK(s.success);
    CHECK(s.claim_violations.empty());
    CHECK(s.claim_skipped == 0);
    checked += s.claim_blocks;
  }
  CHECK(checked > 0);
  CHECK(r.max_block_vertices() > 0);
  CHECK(r.max_block_density() <= Rational(5, 2));
  std::size_t hist = 0;
  for (auto [v, count] : r.block_histogram()) hist += count;
  CHECK(hist == checked);
}

TEST_CASE("above the threshold failures are recorded") {
  PipelineOptions o;
  const auto r = run_pipeline(spec(2, 1000, "3/2*n^(-2/5)", 7), named_graph("K4"), o, 1);
  REQUIRE(r.samples.size() == 1);
  CHECK_FALSE(r.samples[0].success);
  CHECK_FALSE(r.samples[0].failure.empty());
  CHECK(r.samples[0].max_block_density > Rational(5, 2));
}

TEST_CASE("ramsey and proper variants") {
  PipelineOptions ramsey;
  ramsey.variant = PipelineVariant::ramsey;
  ramsey.check_claims = true;
  const auto h = run_pipeline(spec(3, 120, "1/2*n^(-1/3)", 2), named_graph("K4-3"), ramsey, 3);
  CHECK(h.successes() == 3);
  for (const auto& s : h.samples) {
    CHECK(s.copies > 0);
    CHECK(s.claim_violations.empty());
  }

  PipelineOptions proper;
  proper.variant = PipelineVariant::proper;
  const auto c = run_pipeline(spec(2, 3000, "3/4*n^(-5/6)", 4), cycle_graph(7), proper, 2);
  CHECK(c.successes() == 2);
  for (const auto& s : c.samples) CHECK(s.copies > 0);
}

TEST_CASE("reports are deterministic and independent of the thread count") {
  PipelineOptions o;
  o.check_claims = true;
  const auto base = spec(2, 1000, "n^(-2/5)", 11);
  set_num_threads(1);
  const auto one = report_json(run_pipeline(base, named_graph("K4"), o, 2), false);
  set_num_threads(4);
  const auto four = report_json(run_pipeline(base, named_graph("K4"), o, 2), false);
  set_num_threads(0);
  CHECK(one == four);
  CHECK(one.find("\"schema\": \"ramsey0.experiment/1\"") != std::string::npos);
  CHECK(one.find("seconds") == std::string::npos);
}

TEST_CASE("sweeps") {
  PipelineOptions o;
  const auto base = spec(2, 600, "n^(-2/5)", 21);
  CHECK(sweep(base, {}, named_graph("K4"), o, 3).empty());
  CHECK(sweep_csv({}) == "c,reps,successes,success_fraction,max_block_vertices,max_block_density\n");

  auto single = sweep(base, {Rational(1, 2)}, named_graph("K4"), o, 3);
  auto point = base;
  point.p.c = Rational(1, 2);
  const auto direct = run_pipeline(point, named_graph("K4"), o, 3);
  REQUIRE(single.size() == 1);
  CHECK(single[0].successes == direct.successes());
  CHECK(single[0].max_block_vertices == direct.max_block_vertices());
  CHECK(single[0].max_block_density == direct.max_block_density());

  auto rows = sweep(base, {Rational(1, 10), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)},
                    named_graph("K4"), o, 3);
  REQUIRE(rows.size() == 5);
  CHECK(rows.front().success_fraction == 1.0);
  CHECK(rows.back().success_fraction == 0.0);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].success_fraction <= rows[i - 1].success_fraction);
  CHECK(sweep_csv(rows).find("\n1/10,3,3,1,") != std::string::npos);
}
