#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "setexpand/corpus.hpp"
#include "setexpand/expansion.hpp"

namespace setexpand {

struct Query {
  std::string id;
  std::string class_name;
  std::vector<int> seed_ids;
};

// Ground-truth entity ids per semantic class plus the seed queries drawn
// from them.
struct Benchmark {
  std::map<std::string, std::set<int>> classes;
  std::vector<Query> queries;
};

// AP over the first k entries, normalized by min(k, |gold|). The caller is
// responsible for excluding query seeds from both the list and the gold set.
double average_precision_at_k(const RankedList& ranked, const std::set<int>& gold, int k);

double map_at_k(const Benchmark& benchmark, const std::map<std::string, RankedList>& results,
                int k);

// Mean with order-independent rounding (summation in sorted order).
double mean_in_canonical_order(std::vector<double> values);

// classes file: `class-name TAB id[,id...]`; queries file:
// `query-id TAB class-name TAB id,id,id`. '#' lines are comments. Every id
// must exist in the vocabulary and every seed must lie in its class gold set.
Benchmark load_benchmark(const std::vector<Entity>& vocabulary,
                         const std::filesystem::path& classes_path,
                         const std::filesystem::path& queries_path);
Benchmark load_benchmark(const std::filesystem::path& vocab_path,
                         const std::filesystem::path& classes_path,
                         const std::filesystem::path& queries_path);

struct QueryResult {
  std::string id;
  std::map<int, double> ap;  // K -> AP@K
};

struct Report {
  std::map<int, double> map;  // K -> MAP@K
  std::vector<QueryResult> per_query;
  std::string config_hash;
  std::uint64_t rng_seed = 0;
  int repeats = 1;

  nlohmann::ordered_json to_json() const;
  void write(const std::filesystem::path& path) const;
  void print_table(std::ostream& out) const;
};

}  // namespace setexpand
