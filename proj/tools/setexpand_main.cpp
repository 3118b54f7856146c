#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "setexpand/cli.hpp"
#include "setexpand/errors.hpp"

using setexpand::RunConfig;

namespace {

struct FlagOverrides {
  std::vector<std::pair<std::string, std::string>> values;

  void add(CLI::App* cmd, const std::string& flag, const std::string& key,
           const std::string& description) {
    cmd->add_option_function<std::string>(
         flag, [this, key](const std::string& v) { values.emplace_back(key, v); }, description)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }
};

void add_common_flags(CLI::App* cmd, FlagOverrides& overrides, std::string& config_path) {
  cmd->add_option("--config", config_path, "configuration file (key = value lines)");
  overrides.add(cmd, "--corpus", "corpus", "raw corpus file, one document per line");
  overrides.add(cmd, "--vectors", "vectors", "word vectors in GloVe text format");
  overrides.add(cmd, "--vocab", "vocab", "entity vocabulary, one surface form per line");
  overrides.add(cmd, "--classes", "classes", "benchmark classes file");
  overrides.add(cmd, "--queries", "queries", "benchmark queries file");
  overrides.add(cmd, "--workspace", "workspace",
                "workspace directory (SETEXPAND_WORKSPACE overrides)");
  overrides.add(cmd, "--patterns", "patterns", "pattern cache path");
  overrides.add(cmd, "--output", "output", "report output path");
  overrides.add(cmd, "--thr-u", "thr_u", "upper enhancement threshold");
  overrides.add(cmd, "--thr-l", "thr_l", "lower enhancement threshold");
  overrides.add(cmd, "--order", "order", "n-gram model order");
  overrides.add(cmd, "--backoff", "backoff", "stupid-backoff factor in (0,1)");
  overrides.add(cmd, "--top-k", "top_k", "top-K sampling cutoff");
  overrides.add(cmd, "--max-len", "max_len", "maximum generated tokens per side");
  overrides.add(cmd, "--m", "m", "context patterns per entity");
  overrides.add(cmd, "--rng-seed", "rng_seed", "sampling seed");
  overrides.add(cmd, "--backend", "backend", "generation/encoding backend: builtin or remote");
  overrides.add(cmd, "--endpoint", "endpoint", "remote backend base URL");
  overrides.add(cmd, "--target-size", "target_size", "target seed set size (0 = seeds + 50)");
  overrides.add(cmd, "--k-values", "k_values", "comma-separated K list for MAP@K");
  overrides.add(cmd, "--repeats", "repeats", "rng repeats to average over");
  overrides.add(cmd, "--jobs", "jobs", "worker thread cap");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpus-based entity set expansion with generated context patterns"};
  app.require_subcommand(1);

  std::string config_path;
  FlagOverrides overrides;

  CLI::App* ingest = app.add_subcommand("ingest", "normalize the corpus and write its reverse");
  CLI::App* train = app.add_subcommand("train-lm", "train the forward and reverse models");
  CLI::App* gen = app.add_subcommand("gen-patterns", "generate the context pattern cache");
  CLI::App* expand = app.add_subcommand("expand", "expand one query into a ranked list");
  CLI::App* eval = app.add_subcommand("eval", "run the benchmark and write MAP@K reports");

  for (CLI::App* cmd : {ingest, train, gen, expand, eval}) {
    add_common_flags(cmd, overrides, config_path);
  }
  overrides.add(expand, "--query", "query", "query id to expand");
  overrides.add(eval, "--sweep-thr-l", "sweep_thr_l", "comma-separated thr_l sweep values");
  overrides.add(eval, "--sweep-thr-u", "sweep_thr_u", "comma-separated thr_u sweep values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) config = setexpand::load_config_file(config_path);
    for (const auto& [key, value] : overrides.values) {
      setexpand::apply_config_value(config, key, value, "flag");
    }
  } catch (const setexpand::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (ingest->parsed()) return setexpand::cli::run_ingest(config, std::cout, std::cerr);
  if (train->parsed()) return setexpand::cli::run_train_lm(config, std::cout, std::cerr);
  if (gen->parsed()) return setexpand::cli::run_gen_patterns(config, std::cout, std::cerr);
  if (expand->parsed()) return setexpand::cli::run_expand(config, std::cout, std::cerr);
  if (eval->parsed()) return setexpand::cli::run_eval(config, std::cout, std::cerr);
  return 2;
}
