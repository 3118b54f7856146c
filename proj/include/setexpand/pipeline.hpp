#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>

#include "setexpand/config.hpp"
#include "setexpand/evaluation.hpp"
#include "setexpand/workspace.hpp"

namespace setexpand {

// Everything the expansion pipeline needs that is independent of the query:
// vocabulary, embeddings, and the generation/encoding backends.
struct PipelineContext {
  std::vector<Entity> entities;
  EmbeddingTable table;
  std::shared_ptr<NGramLM> fwd_lm;  // builtin backend only
  std::shared_ptr<NGramLM> rev_lm;
  std::unique_ptr<SequenceGenerator> generator;
  std::unique_ptr<ContextEncoder> encoder;
};

// Loads vocabulary and vectors, then wires up the configured backend. For the
// builtin backend, language models are loaded from the workspace when they
// match the configured order/backoff and trained from the corpus otherwise.
PipelineContext build_pipeline_context(const RunConfig& config, const Workspace& workspace,
                                       std::ostream* log = nullptr);

// Per-rng-seed products: all context patterns and the per-entity context
// vectors derived from them. Generated once and shared across queries.
struct RunArtifacts {
  PatternSet patterns;
  std::unordered_map<int, ContextVector> repr;
};

RunArtifacts build_artifacts(const PipelineContext& context, const GenerationConfig& gen,
                             int jobs);

// Runs enhancement and expansion for one query against prebuilt artifacts.
RankedList expand_query(const PipelineContext& context, const RunArtifacts& artifacts,
                        const Query& query, const RunConfig& config);

// Caches artifacts per rng seed (with an optional disk-backed pattern cache
// for the base seed) and evaluates benchmarks against them.
class PipelineRunner {
 public:
  PipelineRunner(const RunConfig& config, const Workspace& workspace,
                 std::ostream* log = nullptr);

  const PipelineContext& context() const { return context_; }
  const RunConfig& config() const { return config_; }

  // Patterns and context vectors for one rng seed. use_disk_cache reuses a
  // matching <workspace>/patterns.tsv and writes one when absent.
  const RunArtifacts& artifacts_for_seed(std::uint64_t rng_seed, bool use_disk_cache);

  // Honors eval.repeats by averaging AP over rng seeds rng_seed + t. Writes
  // ranked/<query>.tsv for the base seed when write_ranked is set. `eval` may
  // differ from the construction config only in thresholds, target size,
  // k_values, repeats, jobs, and output paths.
  Report run_benchmark(const Benchmark& benchmark, const RunConfig& eval, bool write_ranked);

 private:
  RunConfig config_;
  Workspace workspace_;
  std::ostream* log_;
  PipelineContext context_;
  std::map<std::uint64_t, RunArtifacts> artifact_cache_;
};

// Spec-level convenience: builds a fresh runner and evaluates the benchmark.
Report run_benchmark(const Benchmark& benchmark, const RunConfig& config,
                     std::ostream* log = nullptr);

}  // namespace setexpand
