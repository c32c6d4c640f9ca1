#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ramsey0/colorers.hpp"
#include "ramsey0/coloring.hpp"
#include "ramsey0/hypergraph.hpp"
#include "ramsey0/rational.hpp"

namespace ramsey0 {

/// Edge probability p = c * n^(-exponent). A plain probability has exponent 0.
struct ProbabilitySpec {
  Rational c{1};
  Rational exponent{0};

  /// Accepts "0.01", "1/100", "n^(-2/5)", "0.1*n^(-2/5)" or "1/10*n^(-1/3)".
  static ProbabilitySpec parse(const std::string& text);
  /// Throws InputError unless the value lies in [0, 1].
  long double evaluate(std::uint64_t n) const;
  std::string to_string() const;
};

struct SampleSpec {
  int ell = 2;
  Vertex n = 0;
  ProbabilitySpec p;
  std::uint64_t seed = 0;
};

/// G^(l)(n, p) by geometric skipping over the lexicographic order of l-sets,
/// so the work is proportional to the number of edges plus C(n, l-1).
Hypergraph sample(const SampleSpec& spec);

/// Seed of sample i of a run: splitmix64(master + (i + 1) * golden gamma).
std::uint64_t sample_seed(std::uint64_t master, std::size_t i);

enum class PipelineVariant { proper, bounded, ramsey };
const char* to_string(PipelineVariant v);
PipelineVariant parse_pipeline_variant(const std::string& text);

struct PipelineOptions {
  PipelineVariant variant = PipelineVariant::bounded;
  /// Colors of the ramsey variant.
  int r = 2;
  /// Build grow sequences of every block and run check_claims on them.
  bool check_claims = false;
  /// Larger blocks are counted in claim_skipped instead (the builder is
  /// quadratic in the block size).
  std::size_t claims_max_edges = 400;
  /// Replay the stripping events of one sample per run (chosen from the seed).
  bool replay_check = true;
  ColorerOptions colorer;
};

struct SampleReport {
  std::uint64_t seed = 0;
  std::size_t edges = 0;
  std::size_t copies = 0;
  std::size_t loop1_pairs = 0;
  std::size_t loop2_edges = 0;
  std::size_t blocks = 0;
  std::size_t max_block_vertices = 0;
  std::size_t max_block_edges = 0;
  /// Largest m(B) over the blocks; 0 without blocks.
  Rational max_block_density{0};
  /// Block vertex count -> number of blocks.
  std::map<std::size_t, std::size_t> block_histogram;
  std::map<std::string, std::size_t> stages;
  bool success = false;
  /// Coloring is valid and has no rainbow (or monochromatic) copy.
  bool verified = false;
  std::optional<std::uint64_t> coloring_hash;
  std::string failure;
  bool replay_checked = false;
  std::string replay_error;
  std::size_t claim_blocks = 0;
  std::size_t claim_skipped = 0;
  std::vector<std::string> claim_violations;
  double seconds = 0;
};

struct ExperimentReport {
  SampleSpec base;  // seed is the master seed
  std::string pattern;
  PipelineOptions options;
  std::vector<SampleReport> samples;

  std::size_t successes() const;
  double success_fraction() const;
  std::size_t max_block_vertices() const;
  Rational max_block_density() const;
  std::map<std::size_t, std::size_t> block_histogram() const;
};

/// Sample, strip, decompose, color the blocks and verify the whole coloring.
SampleReport run_sample(const SampleSpec& spec, const Hypergraph& f, const PipelineOptions& options,
                        bool replay = false);

/// `reps` samples with seeds derived from base.seed. Samples run one after
/// another because a single large sample can fill most of the memory.
ExperimentReport run_pipeline(const SampleSpec& base, const Hypergraph& f, const PipelineOptions& options,
                              std::size_t reps, const std::string& pattern_name = "");

struct SweepRow {
  Rational c;
  std::size_t reps = 0;
  std::size_t successes = 0;
  double success_fraction = 0;
  std::size_t max_block_vertices = 0;
  Rational max_block_density{0};
};

/// One run_pipeline per c with p = c * n^(-exponent) and the same master seed.
std::vector<SweepRow> sweep(const SampleSpec& base, const std::vector<Rational>& c_grid, const Hypergraph& f,
                            const PipelineOptions& options, std::size_t reps);

/// JSON document (schema "ramsey0.experiment/1"). Timings are left out when
/// `timings` is false so that equal runs give equal bytes.
std::string report_json(const ExperimentReport& report, bool timings = true);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);

}  // namespace ramsey0
