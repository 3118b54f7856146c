#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "setexpand/enhancement.hpp"
#include "setexpand/ngram_lm.hpp"

namespace setexpand {

// Full pipeline configuration. Every field has a config-file key of the same
// name; command-line flags override file values.
struct RunConfig {
  // input paths
  std::string corpus;
  std::string vectors;
  std::string vocab;
  std::string classes;
  std::string queries;
  // workspace / outputs
  std::string workspace = "workspace";
  std::string patterns;  // pattern cache path; default <workspace>/patterns.tsv
  std::string output;    // report path; default <workspace>/report.json
  std::string query;     // query id for the expand command

  Thresholds thr{0.65, 0.25};

  int order = 3;
  double backoff = 0.4;
  GenerationConfig gen{};  // top_k, max_len, m, rng_seed

  std::string backend = "builtin";  // builtin | remote
  std::string endpoint;             // base URL serving /generate and /encode

  int target_size = 0;  // 0 = query seed count + 50
  std::vector<int> k_values{10, 20, 50};
  int repeats = 1;
  int jobs = 1;

  std::vector<double> sweep_thr_l;
  std::vector<double> sweep_thr_u;

  void validate() const;
};

// `key = value` lines; '#' starts a comment; blank lines ignored. Unknown
// keys are rejected.
RunConfig load_config_file(const std::filesystem::path& path);

// Applies one key/value pair; `where` prefixes error messages.
void apply_config_value(RunConfig& config, const std::string& key, const std::string& value,
                        const std::string& where);

std::string canonical_config_dump(const RunConfig& config);

// FNV-1a 64 over the canonical dump, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace setexpand
