// Acceptance suite: runs every release criterion and prints one pass/fail
// line per criterion. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "setexpand/cli.hpp"
#include "setexpand/errors.hpp"
#include "setexpand/pipeline.hpp"
#include "setexpand/synthetic.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"

using namespace setexpand;
using testsupport::TempDir;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Reversal symmetry: reverse-trained counts mirror forward-trained counts
//    for every marker-free k-gram, over 100 random corpora.
void criterion_reversal_symmetry() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  long checked = 0;
  bool ok = true;
  std::string detail;

  for (int trial = 0; trial < 100 && ok; ++trial) {
    const Corpus corpus = testsupport::random_corpus(rng, 50, 20, 12);
    const int order = 2 + static_cast<int>(rng() % 3);
    const NGramLM fwd = train_lm(corpus, order, 0.4);
    const NGramLM rev = train_lm(reverse_corpus(corpus), order, 0.4);

    const auto has_marker = [](std::span<const Token> gram) {
      for (const Token& t : gram) {
        if (t == NGramLM::kBeginMarker || t == NGramLM::kEndMarker) return true;
      }
      return false;
    };
    const auto check_direction = [&](const NGramLM& a, const NGramLM& b) {
      a.for_each_gram([&](std::span<const Token> gram, std::uint64_t n) {
        if (has_marker(gram)) return;
        std::vector<Token> reversed(gram.rbegin(), gram.rend());
        if (b.count(reversed) != n) {
          ok = false;
          detail = "count mismatch for gram of size " + std::to_string(gram.size());
        }
        ++checked;
      });
    };
    check_direction(fwd, rev);
    check_direction(rev, fwd);
  }

  const double elapsed = seconds_since(start);
  if (ok && elapsed >= 5.0) {
    ok = false;
    detail = "runtime " + fmt(elapsed) + "s exceeds 5s";
  }
  if (ok) {
    detail = std::to_string(checked) + " k-gram counts matched exactly in " + fmt(elapsed) + "s";
  }
  report(1, "reversal count symmetry oracle", ok, detail);
}

// ---------------------------------------------------------------------------
// 2. MAP@K oracle equivalence on 1,000 random instances plus the hand case.
void criterion_map_oracle() {
  bool ok = true;
  std::string detail;

  RankedList hand;
  int rank = 1;
  for (int id : {1, 99, 2}) {
    hand.entries.push_back({rank++, testsupport::make_entity("e" + std::to_string(id), id),
                            0.5, 1});
  }
  const double hand_value = average_precision_at_k(hand, {1, 2}, 3);
  if (std::abs(hand_value - 5.0 / 6.0) > 1e-12) {
    ok = false;
    detail = "hand case AP = " + fmt(hand_value) + ", expected 5/6";
  }

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    const int universe = 40;
    std::vector<int> pool(universe);
    for (int i = 0; i < universe; ++i) pool[i] = i;
    std::shuffle(pool.begin(), pool.end(), rng);
    const int len = static_cast<int>(rng() % 30);
    RankedList ranked;
    std::vector<bool> hits;
    std::set<int> gold;
    const int gold_size = 1 + static_cast<int>(rng() % 12);
    while (static_cast<int>(gold.size()) < gold_size) {
      gold.insert(static_cast<int>(rng() % universe));
    }
    for (int i = 0; i < len; ++i) {
      ranked.entries.push_back(
          {i + 1, testsupport::make_entity("e" + std::to_string(pool[i]), pool[i]), 0.5, 1});
      hits.push_back(gold.count(pool[i]) > 0);
    }
    const int k = 1 + static_cast<int>(rng() % 35);
    const double module_value = average_precision_at_k(ranked, gold, k);
    const double oracle_value = testsupport::brute_average_precision(hits, gold_size, k);
    if (std::abs(module_value - oracle_value) > 1e-12) {
      ok = false;
      detail = "instance " + std::to_string(trial) + ": module " + fmt(module_value) +
               " vs oracle " + fmt(oracle_value);
    }
  }
  if (ok) detail = "1000 random instances + hand case agree to 1e-12";
  report(2, "MAP@K oracle equivalence", ok, detail);
}

// ---------------------------------------------------------------------------
// 3. Enhancement invariants over 200 random embedding assignments.
void criterion_enhancement_invariants() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  bool ok = true;
  std::string detail;

  auto ids_of = [](const std::vector<Entity>& entities) {
    std::set<int> ids;
    for (const auto& e : entities) ids.insert(e.id);
    return ids;
  };

  for (int trial = 0; trial < 200 && ok; ++trial) {
    const int n_seed = 1 + static_cast<int>(rng() % 4);
    const int n_cand = 1 + static_cast<int>(rng() % 16);
    EntitySets sets;
    std::vector<std::string> words;
    for (int i = 0; i < n_seed + n_cand; ++i) {
      const std::string w = "e" + std::to_string(i);
      words.push_back(w);
      (i < n_seed ? sets.seed : sets.candidate).push_back(testsupport::make_entity(w, i));
    }
    const EmbeddingTable table = testsupport::random_table(rng, words, 4);

    double a = unit(rng), b = unit(rng);
    if (a == b) continue;
    const Thresholds thr{std::max(a, b), std::min(a, b)};
    const EntitySets out = enhance(sets, thr, table);

    // Seed preservation, disjointness, candidate subset.
    for (std::size_t i = 0; i < sets.seed.size(); ++i) {
      if (out.seed.size() <= i || out.seed[i].id != sets.seed[i].id) {
        ok = false;
        detail = "original seed lost or reordered";
      }
    }
    const auto out_seed = ids_of(out.seed);
    const auto out_cand = ids_of(out.candidate);
    const auto orig_cand = ids_of(sets.candidate);
    for (int id : out_cand) {
      if (out_seed.count(id)) {
        ok = false;
        detail = "seed and candidate overlap";
      }
      if (!orig_cand.count(id)) {
        ok = false;
        detail = "candidate not drawn from the input";
      }
    }

    // Monotonicity in thr_u (seed shrinks, candidate grows) and thr_l
    // (candidate shrinks).
    const double lower = thr.thr_l;
    const double mid = std::min(thr.thr_u + 0.1, 1.0);
    if (mid > lower) {
      const EntitySets raised_u = enhance(sets, Thresholds{mid, lower}, table);
      for (int id : ids_of(raised_u.seed)) {
        if (!out_seed.count(id)) {
          ok = false;
          detail = "raising thr_u grew the seed set";
        }
      }
      for (int id : out_cand) {
        if (!ids_of(raised_u.candidate).count(id)) {
          ok = false;
          detail = "raising thr_u shrank the candidate set";
        }
      }
    }
    const double raised_l = std::min(thr.thr_l + 0.1, thr.thr_u - 1e-6);
    if (raised_l > thr.thr_l) {
      const EntitySets raised = enhance(sets, Thresholds{thr.thr_u, raised_l}, table);
      for (int id : ids_of(raised.candidate)) {
        if (!out_cand.count(id)) {
          ok = false;
          detail = "raising thr_l grew the candidate set";
        }
      }
    }
  }

  const double elapsed = seconds_since(start);
  if (ok && elapsed >= 5.0) {
    ok = false;
    detail = "runtime " + fmt(elapsed) + "s exceeds 5s";
  }
  if (ok) detail = "200 random assignments hold all invariants in " + fmt(elapsed) + "s";
  report(3, "enhancement invariant suite", ok, detail);
}

// ---------------------------------------------------------------------------
// 4. Full-pipeline determinism on the bundled fixture: identical config and
//    seed give byte-identical ranked lists and report, both when the pattern
//    cache is reused and when everything is regenerated from scratch.
void criterion_determinism() {
  bool ok = true;
  std::string detail;
  try {
    TempDir dir;
    const std::string fixtures = FIXTURE_DIR;
    RunConfig config;
    config.corpus = fixtures + "/corpus.txt";
    config.vectors = fixtures + "/vectors.txt";
    config.vocab = fixtures + "/vocab.txt";
    config.classes = fixtures + "/classes.tsv";
    config.queries = fixtures + "/queries.tsv";
    config.workspace = (dir.path() / "ws").string();
    config.gen.patterns_per_entity = 24;
    config.gen.top_k = 4;
    config.gen.max_len = 10;
    config.gen.rng_seed = 42;

    const Workspace ws = Workspace::resolve(config);
    std::ostringstream sink;
    const auto snapshot = [&] {
      std::map<std::string, std::string> bytes;
      bytes["report.json"] = testsupport::read_file(ws.report(config));
      for (const auto& entry : std::filesystem::directory_iterator(ws.ranked_dir())) {
        bytes[entry.path().filename().string()] = testsupport::read_file(entry.path());
      }
      return bytes;
    };

    if (cli::run_eval(config, sink, sink) != 0) throw Error("first eval failed");
    const auto first = snapshot();
    if (first.size() < 3) throw Error("expected a report and two ranked lists");

    if (cli::run_eval(config, sink, sink) != 0) throw Error("second eval failed");
    const auto second = snapshot();

    std::filesystem::remove_all(ws.root());
    if (cli::run_eval(config, sink, sink) != 0) throw Error("third eval failed");
    const auto third = snapshot();

    if (second != first) {
      ok = false;
      detail = "outputs changed on rerun with the cached patterns";
    } else if (third != first) {
      ok = false;
      detail = "outputs changed after regenerating from scratch";
    } else {
      detail = std::to_string(first.size()) + " artifacts byte-identical across three runs";
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(4, "expansion determinism on the bundled fixture", ok, detail);
}

// ---------------------------------------------------------------------------
// 5. End-to-end synthetic benchmark with planted classes. The brute-force
//    nearest-centroid oracle must reach MAP@10 = 1.0 on the true embeddings;
//    the pipeline must reach MAP@10 >= 0.90 and MAP@50 >= 0.80.
struct SyntheticRun {
  TempDir dir;
  SyntheticData data;
  RunConfig config;
};

void prepare_synthetic(SyntheticRun& run) {
  run.data = generate_synthetic(SyntheticSpec{});
  write_synthetic(run.data, run.dir.path() / "bench");
  run.config.corpus = (run.dir.path() / "bench/corpus.txt").string();
  run.config.vectors = (run.dir.path() / "bench/vectors.txt").string();
  run.config.vocab = (run.dir.path() / "bench/vocab.txt").string();
  run.config.classes = (run.dir.path() / "bench/classes.tsv").string();
  run.config.queries = (run.dir.path() / "bench/queries.tsv").string();
  run.config.workspace = (run.dir.path() / "ws").string();
  run.config.gen.rng_seed = 7;
  run.config.jobs = 1;
}

double oracle_nearest_centroid_map10(const SyntheticData& data) {
  double total = 0.0;
  for (const auto& q : data.queries) {
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(data.entity_vectors.cols());
    std::set<int> seeds(q.seed_entity_ids.begin(), q.seed_entity_ids.end());
    for (int id : seeds) centroid += data.entity_vectors.row(id).transpose();
    centroid /= static_cast<double>(seeds.size());

    std::vector<std::pair<double, int>> scored;
    for (int id = 0; id < data.entity_vectors.rows(); ++id) {
      if (seeds.count(id)) continue;
      scored.emplace_back(cosine(data.entity_vectors.row(id).transpose(), centroid), id);
    }
    std::sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return data.entity_words[static_cast<std::size_t>(a.second)] <
             data.entity_words[static_cast<std::size_t>(b.second)];
    });
    std::vector<bool> hits;
    for (const auto& [score, id] : scored) {
      hits.push_back(data.entity_class[static_cast<std::size_t>(id)] == q.class_index);
    }
    const int gold = data.spec.entities_per_class - static_cast<int>(seeds.size());
    total += testsupport::brute_average_precision(hits, gold, 10);
  }
  return total / static_cast<double>(data.queries.size());
}

void criterion_synthetic_benchmark(SyntheticRun& run) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  try {
    const double oracle = oracle_nearest_centroid_map10(run.data);
    if (oracle != 1.0) {
      ok = false;
      detail = "nearest-centroid oracle MAP@10 = " + fmt(oracle) + ", expected 1.0";
    } else {
      const Benchmark benchmark =
          load_benchmark(run.config.vocab, run.config.classes, run.config.queries);
      const Report result = run_benchmark(benchmark, run.config);
      const double map10 = result.map.at(10);
      const double map50 = result.map.at(50);
      const double elapsed = seconds_since(start);
      if (map10 < 0.90) {
        ok = false;
        detail = "MAP@10 = " + fmt(map10) + " < 0.90";
      } else if (map50 < 0.80) {
        ok = false;
        detail = "MAP@50 = " + fmt(map50) + " < 0.80";
      } else if (elapsed >= 60.0) {
        ok = false;
        detail = "runtime " + fmt(elapsed) + "s exceeds 60s";
      } else {
        detail = "oracle 1.0; pipeline MAP@10 = " + fmt(map10) + ", MAP@50 = " + fmt(map50) +
                 " in " + fmt(elapsed) + "s";
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(5, "end-to-end synthetic benchmark", ok, detail);
}

// ---------------------------------------------------------------------------
// 6. The README states that the full-scale reference figures require neural
//    backends and points to the remote protocol.
void criterion_readme_statement() {
  bool ok = true;
  std::string detail;
  const std::string readme = testsupport::read_file(README_PATH);
  if (readme.empty()) {
    ok = false;
    detail = "README not found at " README_PATH;
  } else {
    for (const char* needle : {"0.974", "0.990", "/generate", "/encode", "remote"}) {
      if (readme.find(needle) == std::string::npos) {
        ok = false;
        detail = std::string("README lacks '") + needle + "'";
        break;
      }
    }
  }
  if (ok) detail = "reference figures and the remote-backend path are documented";
  report(6, "README full-scale statement", ok, detail);
}

// ---------------------------------------------------------------------------
// 7. Greedy-forcing generation on hand-built toy corpora.
void criterion_greedy_forcing() {
  bool ok = true;
  std::string detail;
  try {
    GenerationConfig cfg;
    cfg.top_k = 1;
    cfg.max_len = 16;

    {
      const Corpus corpus = testsupport::corpus_from_sentences({{"a", "b", "c"}});
      const NGramLM lm = train_lm(corpus, 3, 0.4);
      std::mt19937_64 rng(1);
      const auto out = sample_continuation(lm, {"a"}, cfg, rng);
      if (out != std::vector<Token>{"b", "c"}) {
        ok = false;
        detail = "continuation of [a] was [" + join_tokens(out) + "]";
      }
    }
    {
      const Corpus corpus = testsupport::corpus_from_sentences({
          {"we", "love", "paris", "."},
          {"we", "love", "paris", "madly", "."},
          {"they", "said", "we", "love", "paris", "."},
      });
      const NGramLM rev = train_lm(reverse_corpus(corpus), 3, 0.4);
      std::mt19937_64 rng(1);
      const auto prev = generate_prev(rev, testsupport::make_entity("paris", 0), cfg, rng);
      if (prev != std::vector<Token>{"we", "love"}) {
        ok = false;
        detail = "prev-text was [" + join_tokens(prev) + "]";
      }
    }
    {
      const Corpus corpus =
          testsupport::corpus_from_sentences({{"beijing", "is", "the", "capital", "."}});
      const NGramLM fwd = train_lm(corpus, 3, 0.4);
      std::mt19937_64 rng(1);
      const auto next = generate_next(fwd, {}, testsupport::make_entity("beijing", 0), cfg, rng);
      if (next != std::vector<Token>{"is", "the", "capital", "."}) {
        ok = false;
        detail = "next-text was [" + join_tokens(next) + "]";
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  if (ok) detail = "all three hand-derived continuations reproduced exactly";
  report(7, "greedy-forcing generation", ok, detail);
}

// ---------------------------------------------------------------------------
// 8. Threshold sweep: six reports, and MAP@10 varies by < 0.05 across thr_l.
void criterion_threshold_sweep(SyntheticRun& run) {
  bool ok = true;
  std::string detail;
  try {
    RunConfig config = run.config;
    config.workspace = (run.dir.path() / "sweep_ws").string();
    config.sweep_thr_l = {0.15, 0.25, 0.35};
    config.sweep_thr_u = {0.55, 0.65, 0.75};

    std::ostringstream sink;
    if (cli::run_eval(config, sink, sink) != 0) throw Error("sweep eval failed");

    const Workspace ws = Workspace::resolve(config);
    std::vector<double> map10_by_thr_l;
    int reports = 0;
    for (const char* name :
         {"report_thr_l_0.15.json", "report_thr_l_0.25.json", "report_thr_l_0.35.json",
          "report_thr_u_0.55.json", "report_thr_u_0.65.json", "report_thr_u_0.75.json"}) {
      const auto path = ws.root() / name;
      if (!std::filesystem::exists(path)) throw Error("missing sweep report " + path.string());
      ++reports;
      const auto parsed = nlohmann::json::parse(testsupport::read_file(path));
      if (std::string(name).find("thr_l") != std::string::npos) {
        map10_by_thr_l.push_back(parsed["map"]["10"].get<double>());
      }
    }
    const auto [lo, hi] = std::minmax_element(map10_by_thr_l.begin(), map10_by_thr_l.end());
    const double spread = *hi - *lo;
    if (reports != 6) {
      ok = false;
      detail = "expected 6 reports, found " + std::to_string(reports);
    } else if (spread >= 0.05) {
      ok = false;
      detail = "MAP@10 spread across thr_l = " + fmt(spread) + " >= 0.05";
    } else {
      detail = "6 reports; MAP@10 spread across thr_l = " + fmt(spread);
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(8, "threshold sweep mechanism", ok, detail);
}

}  // namespace

int main() {
  criterion_reversal_symmetry();
  criterion_map_oracle();
  criterion_enhancement_invariants();
  criterion_determinism();
  SyntheticRun synthetic;
  prepare_synthetic(synthetic);
  criterion_synthetic_benchmark(synthetic);
  criterion_readme_statement();
  criterion_greedy_forcing();
  criterion_threshold_sweep(synthetic);

  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
