#include "setexpand/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <functional>
#include <ostream>

#include "setexpand/errors.hpp"
#include "setexpand/pipeline.hpp"

namespace setexpand::cli {

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << '\n';
    return 1;
  }
}

std::string now_string() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_threshold(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

Benchmark load_configured_benchmark(const PipelineContext& context, const RunConfig& config) {
  if (config.classes.empty() || config.queries.empty()) {
    throw ValidationError("benchmark requires 'classes' and 'queries' paths");
  }
  return load_benchmark(context.entities, config.classes, config.queries);
}

void run_one_eval(PipelineRunner& runner, const Benchmark& benchmark, const RunConfig& eval,
                  const std::filesystem::path& report_path, bool write_ranked, std::ostream& out) {
  Report report = runner.run_benchmark(benchmark, eval, write_ranked);
  report.write(report_path);
  out << "# thr_u=" << format_threshold(eval.thr.thr_u)
      << " thr_l=" << format_threshold(eval.thr.thr_l) << " rng_seed=" << eval.gen.rng_seed
      << " repeats=" << eval.repeats << " finished " << now_string() << '\n';
  report.print_table(out);
  out << "report written to " << report_path.string() << '\n';
}

}  // namespace

int run_ingest(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    if (config.corpus.empty()) throw ValidationError("ingest requires a corpus path");
    if (config.vocab.empty()) throw ValidationError("ingest requires a vocab path");

    const Workspace ws = Workspace::resolve(config);
    ws.ensure_exists();

    const auto entities = load_entity_vocabulary(config.vocab);
    Corpus corpus = load_corpus(config.corpus);
    Corpus reversed = reverse_corpus(corpus);
    write_normalized_corpus(corpus, ws.corpus_fwd());
    write_normalized_corpus(reversed, ws.corpus_rev());

    out << "ingested " << corpus.sentences.size() << " sentences, vocabulary of "
        << entities.size() << " entities\n";
    out << "wrote " << ws.corpus_fwd().string() << " and " << ws.corpus_rev().string() << '\n';
    return 0;
  });
}

int run_train_lm(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const Workspace ws = Workspace::resolve(config);
    if (!std::filesystem::exists(ws.corpus_fwd()) || !std::filesystem::exists(ws.corpus_rev())) {
      throw ValidationError("normalized corpus not found in " + ws.root().string() +
                            "; run ingest first");
    }
    Corpus fwd = load_normalized_corpus(ws.corpus_fwd(), Direction::Forward);
    Corpus rev = load_normalized_corpus(ws.corpus_rev(), Direction::Reverse);
    NGramLM fwd_lm = NGramLM::train(fwd, config.order, config.backoff);
    NGramLM rev_lm = NGramLM::train(rev, config.order, config.backoff);
    fwd_lm.save(ws.lm_fwd());
    rev_lm.save(ws.lm_rev());
    out << "trained order-" << config.order << " models over " << fwd.sentences.size()
        << " sentences (vocab " << fwd_lm.vocab().size() << ")\n";
    out << "wrote " << ws.lm_fwd().string() << " and " << ws.lm_rev().string() << '\n';
    return 0;
  });
}

int run_gen_patterns(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const Workspace ws = Workspace::resolve(config);
    PipelineRunner runner(config, ws, &out);
    runner.artifacts_for_seed(config.gen.rng_seed, /*use_disk_cache=*/true);
    return 0;
  });
}

int run_expand(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    if (config.query.empty()) throw ValidationError("expand requires a query id (--query)");

    const Workspace ws = Workspace::resolve(config);
    PipelineRunner runner(config, ws, &out);
    const Benchmark benchmark = load_configured_benchmark(runner.context(), config);

    const Query* query = nullptr;
    for (const Query& q : benchmark.queries) {
      if (q.id == config.query) {
        query = &q;
        break;
      }
    }
    if (!query) throw ValidationError("unknown query id '" + config.query + "'");

    const RunArtifacts& artifacts =
        runner.artifacts_for_seed(config.gen.rng_seed, /*use_disk_cache=*/true);
    RankedList ranked = expand_query(runner.context(), artifacts, *query, config);
    if (ranked.exhausted) {
      out << "warning: candidates exhausted before reaching the target size\n";
    }
    ws.ensure_ranked_dir();
    const auto path = ws.ranked(query->id);
    write_ranked_list(ranked, path);
    out << "expanded " << ranked.entries.size() << " entities for query '" << query->id
        << "'; wrote " << path.string() << '\n';
    return 0;
  });
}

int run_eval(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    const Workspace ws = Workspace::resolve(config);
    PipelineRunner runner(config, ws, &out);
    const Benchmark benchmark = load_configured_benchmark(runner.context(), config);

    if (config.sweep_thr_l.empty() && config.sweep_thr_u.empty()) {
      run_one_eval(runner, benchmark, config, ws.report(config), /*write_ranked=*/true, out);
      return 0;
    }

    ws.ensure_exists();
    for (double v : config.sweep_thr_l) {
      RunConfig eval = config;
      eval.thr.thr_l = v;
      eval.sweep_thr_l.clear();
      eval.sweep_thr_u.clear();
      const auto path = ws.root() / ("report_thr_l_" + format_threshold(v) + ".json");
      run_one_eval(runner, benchmark, eval, path, /*write_ranked=*/false, out);
    }
    for (double v : config.sweep_thr_u) {
      RunConfig eval = config;
      eval.thr.thr_u = v;
      eval.sweep_thr_l.clear();
      eval.sweep_thr_u.clear();
      const auto path = ws.root() / ("report_thr_u_" + format_threshold(v) + ".json");
      run_one_eval(runner, benchmark, eval, path, /*write_ranked=*/false, out);
    }
    return 0;
  });
}

}  // namespace setexpand::cli
