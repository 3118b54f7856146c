#include "setexpand/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "setexpand/errors.hpp"
#include "setexpand/parallel.hpp"
#include "setexpand/remote.hpp"

namespace setexpand {

namespace {

void log_line(std::ostream* log, const std::string& msg) {
  if (log) *log << msg << '\n';
}

NGramLM load_or_train_lm(const RunConfig& config, const Workspace& ws, Direction direction,
                         std::ostream* log) {
  const auto path = direction == Direction::Forward ? ws.lm_fwd() : ws.lm_rev();
  if (std::filesystem::exists(path)) {
    NGramLM lm = NGramLM::load(path);
    if (lm.order() == config.order && lm.backoff() == config.backoff &&
        lm.direction() == direction) {
      log_line(log, "loaded " + path.string());
      return lm;
    }
    log_line(log, path.string() + " does not match configured order/backoff; retraining");
  }

  Corpus corpus;
  const auto normalized = direction == Direction::Forward ? ws.corpus_fwd() : ws.corpus_rev();
  if (std::filesystem::exists(normalized)) {
    corpus = load_normalized_corpus(normalized, direction);
  } else {
    if (config.corpus.empty()) {
      throw ValidationError("no corpus available: run ingest or set the corpus path");
    }
    corpus = load_corpus(config.corpus);
    if (direction == Direction::Reverse) corpus = reverse_corpus(corpus);
  }
  NGramLM lm = NGramLM::train(corpus, config.order, config.backoff);
  log_line(log, std::string("trained ") +
                    (direction == Direction::Forward ? "forward" : "reverse") + " model (" +
                    std::to_string(corpus.sentences.size()) + " sentences)");
  return lm;
}

std::string patterns_meta_string(const RunConfig& config, const GenerationConfig& gen,
                                 const std::vector<Entity>& entities) {
  std::uint64_t vocab_hash = 0xcbf29ce484222325ULL;
  for (const Entity& e : entities) {
    for (unsigned char ch : e.surface) {
      vocab_hash = (vocab_hash ^ ch) * 0x100000001b3ULL;
    }
    vocab_hash = (vocab_hash ^ 0x1f) * 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << "backend=" << config.backend << '\n'
      << "endpoint=" << config.endpoint << '\n'
      << "corpus=" << config.corpus << '\n'
      << "vocab=" << config.vocab << '\n'
      << "entities=" << entities.size() << '\n'
      << "vocab_hash=" << vocab_hash << '\n'
      << "order=" << config.order << '\n'
      << "backoff=" << config.backoff << '\n'
      << "top_k=" << gen.top_k << '\n'
      << "max_len=" << gen.max_len << '\n'
      << "m=" << gen.patterns_per_entity << '\n'
      << "rng_seed=" << gen.rng_seed << '\n';
  return out.str();
}

}  // namespace

PipelineContext build_pipeline_context(const RunConfig& config, const Workspace& workspace,
                                       std::ostream* log) {
  if (config.vocab.empty()) throw ValidationError("no entity vocabulary path configured");
  if (config.vectors.empty()) throw ValidationError("no word vector path configured");

  PipelineContext ctx;
  ctx.entities = load_entity_vocabulary(config.vocab);
  if (ctx.entities.empty()) throw ValidationError(config.vocab + ": vocabulary is empty");
  ctx.table = load_vectors(config.vectors);
  log_line(log, "loaded " + std::to_string(ctx.entities.size()) + " entities, " +
                    std::to_string(ctx.table.size()) + " vectors (dim " +
                    std::to_string(ctx.table.dim()) + ")");

  if (config.backend == "remote") {
    ctx.generator = std::make_unique<RemoteGenerator>(config.endpoint);
    ctx.encoder = std::make_unique<RemoteEncoder>(config.endpoint);
  } else {
    ctx.fwd_lm = std::make_shared<NGramLM>(
        load_or_train_lm(config, workspace, Direction::Forward, log));
    ctx.rev_lm = std::make_shared<NGramLM>(
        load_or_train_lm(config, workspace, Direction::Reverse, log));
    ctx.generator = std::make_unique<BuiltinGenerator>(*ctx.fwd_lm, *ctx.rev_lm);
    ctx.encoder = std::make_unique<TableEncoder>(ctx.table);
  }
  return ctx;
}

RunArtifacts build_artifacts(const PipelineContext& context, const GenerationConfig& gen,
                             int jobs) {
  RunArtifacts artifacts;
  std::vector<std::vector<ContextPattern>> generated(context.entities.size());
  parallel_for(context.entities.size(), jobs, [&](std::size_t i) {
    generated[i] = generate_patterns(context.entities[i], *context.generator, gen);
  });
  for (std::size_t i = 0; i < context.entities.size(); ++i) {
    artifacts.patterns.emplace(context.entities[i].id, std::move(generated[i]));
  }

  std::vector<ContextVector> vectors(context.entities.size());
  parallel_for(context.entities.size(), jobs, [&](std::size_t i) {
    const Entity& e = context.entities[i];
    vectors[i] = context_representation(e, artifacts.patterns.at(e.id), *context.encoder);
  });
  for (std::size_t i = 0; i < context.entities.size(); ++i) {
    artifacts.repr.emplace(context.entities[i].id, std::move(vectors[i]));
  }
  return artifacts;
}

RankedList expand_query(const PipelineContext& context, const RunArtifacts& artifacts,
                        const Query& query, const RunConfig& config) {
  std::unordered_map<int, const Entity*> by_id;
  for (const Entity& e : context.entities) by_id.emplace(e.id, &e);

  EntitySets sets;
  std::set<int> seed_ids(query.seed_ids.begin(), query.seed_ids.end());
  for (int id : query.seed_ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw ValidationError("query '" + query.id + "': unknown seed entity id " +
                            std::to_string(id));
    }
    sets.seed.push_back(*it->second);
  }
  for (const Entity& e : context.entities) {
    if (!seed_ids.count(e.id)) sets.candidate.push_back(e);
  }

  EntitySets enhanced = enhance(sets, config.thr, context.table);

  ExpansionState state;
  for (const Entity& e : enhanced.seed) state.seed.push_back({e, 0, std::nullopt});
  state.candidates = enhanced.candidate;
  state.repr = artifacts.repr;

  const int target = config.target_size > 0
                         ? config.target_size
                         : static_cast<int>(query.seed_ids.size()) + 50;
  return expand(std::move(state), target, query.id, config.jobs);
}

PipelineRunner::PipelineRunner(const RunConfig& config, const Workspace& workspace,
                               std::ostream* log)
    : config_(config),
      workspace_(workspace),
      log_(log),
      context_(build_pipeline_context(config, workspace, log)) {}

const RunArtifacts& PipelineRunner::artifacts_for_seed(std::uint64_t rng_seed,
                                                       bool use_disk_cache) {
  auto it = artifact_cache_.find(rng_seed);
  if (it != artifact_cache_.end()) return it->second;

  GenerationConfig gen = config_.gen;
  gen.rng_seed = rng_seed;

  const auto cache_path = workspace_.patterns(config_);
  const auto meta_path = workspace_.patterns_meta(config_);
  const std::string meta = patterns_meta_string(config_, gen, context_.entities);

  RunArtifacts artifacts;
  bool loaded = false;
  if (use_disk_cache && std::filesystem::exists(cache_path) &&
      std::filesystem::exists(meta_path)) {
    std::ifstream meta_in(meta_path);
    std::stringstream stored;
    stored << meta_in.rdbuf();
    if (stored.str() == meta) {
      artifacts.patterns = load_pattern_cache(cache_path);
      loaded = true;
      log_line(log_, "reusing pattern cache " + cache_path.string());
    } else {
      log_line(log_, "pattern cache " + cache_path.string() + " is stale; regenerating");
    }
  }

  if (!loaded) {
    RunArtifacts fresh = build_artifacts(context_, gen, config_.jobs);
    artifacts = std::move(fresh);
    if (use_disk_cache) {
      workspace_.ensure_exists();
      write_pattern_cache(artifacts.patterns, cache_path);
      std::ofstream meta_out(meta_path);
      meta_out << meta;
      log_line(log_, "wrote pattern cache " + cache_path.string() + " (" +
                         std::to_string(artifacts.patterns.size()) + " entities x " +
                         std::to_string(gen.patterns_per_entity) + " patterns)");
    }
  } else {
    // Patterns came from disk; context vectors are recomputed in memory.
    std::vector<ContextVector> vectors(context_.entities.size());
    parallel_for(context_.entities.size(), config_.jobs, [&](std::size_t i) {
      const Entity& e = context_.entities[i];
      auto pit = artifacts.patterns.find(e.id);
      if (pit == artifacts.patterns.end()) {
        throw ValidationError("pattern cache is missing entity id " + std::to_string(e.id) +
                              " ('" + e.surface + "')");
      }
      vectors[i] = context_representation(e, pit->second, *context_.encoder);
    });
    for (std::size_t i = 0; i < context_.entities.size(); ++i) {
      artifacts.repr.emplace(context_.entities[i].id, std::move(vectors[i]));
    }
  }

  auto [pos, _] = artifact_cache_.emplace(rng_seed, std::move(artifacts));
  return pos->second;
}

Report PipelineRunner::run_benchmark(const Benchmark& benchmark, const RunConfig& eval,
                                     bool write_ranked) {
  // The artifact cache is keyed by rng seed only; generation settings must
  // match the ones this runner was built with.
  if (eval.gen.top_k != config_.gen.top_k || eval.gen.max_len != config_.gen.max_len ||
      eval.gen.patterns_per_entity != config_.gen.patterns_per_entity ||
      eval.order != config_.order || eval.backoff != config_.backoff ||
      eval.backend != config_.backend || eval.endpoint != config_.endpoint) {
    throw ValidationError(
        "run_benchmark: generation settings differ from the runner's; build a new runner");
  }

  Report report;
  report.config_hash = config_hash(eval);
  report.rng_seed = eval.gen.rng_seed;
  report.repeats = eval.repeats;

  std::map<std::string, std::map<int, double>> ap_sums;

  for (int repeat = 0; repeat < eval.repeats; ++repeat) {
    const std::uint64_t seed = eval.gen.rng_seed + static_cast<std::uint64_t>(repeat);
    const RunArtifacts& artifacts = artifacts_for_seed(seed, repeat == 0);

    for (const Query& q : benchmark.queries) {
      try {
        RankedList ranked = expand_query(context_, artifacts, q, eval);
        if (ranked.exhausted) {
          log_line(log_, "query '" + q.id + "': candidates exhausted before target size");
        }
        if (write_ranked && repeat == 0) {
          workspace_.ensure_ranked_dir();
          write_ranked_list(ranked, workspace_.ranked(q.id));
        }
        auto cls = benchmark.classes.find(q.class_name);
        if (cls == benchmark.classes.end()) {
          throw ValidationError("unknown class '" + q.class_name + "'");
        }
        std::set<int> gold = cls->second;
        for (int id : q.seed_ids) gold.erase(id);
        if (gold.empty()) {
          throw ValidationError("no gold entities beyond the seeds");
        }
        for (int k : eval.k_values) {
          ap_sums[q.id][k] += average_precision_at_k(ranked, gold, k);
        }
      } catch (const Error& e) {
        throw ValidationError("query '" + q.id + "' (rng seed " + std::to_string(seed) +
                              "): " + e.what());
      }
    }
  }

  std::map<int, std::vector<double>> ap_by_k;
  for (const Query& q : benchmark.queries) {
    QueryResult result;
    result.id = q.id;
    for (int k : eval.k_values) {
      result.ap[k] = ap_sums[q.id][k] / static_cast<double>(eval.repeats);
      ap_by_k[k].push_back(result.ap[k]);
    }
    report.per_query.push_back(std::move(result));
  }
  for (auto& [k, values] : ap_by_k) report.map[k] = mean_in_canonical_order(std::move(values));
  return report;
}

Report run_benchmark(const Benchmark& benchmark, const RunConfig& config, std::ostream* log) {
  Workspace workspace = Workspace::resolve(config);
  PipelineRunner runner(config, workspace, log);
  return runner.run_benchmark(benchmark, config, /*write_ranked=*/false);
}

}  // namespace setexpand
