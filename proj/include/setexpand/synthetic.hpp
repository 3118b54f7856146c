#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace setexpand {

// Synthetic benchmark with planted semantic classes. Entity embeddings are
// built from orthogonal axes so every pairwise cosine is exact by
// construction:
//   - same class:                 kGlobalWeight^2 + kClassWeight^2  (0.52)
//   - same group, other class:    kGlobalWeight^2                   (0.40)
//   - other group:                0
// Classes 0..2 form one group and 3..4 the other. With the default
// thresholds (and the documented sweep ranges) enhancement therefore prunes
// exactly the other-group entities, retains same-group distractors, and
// promotes nothing; ranking the distractors out is the context encoder's
// job. Context words are class-exclusive, so a nearest-centroid ranking on
// the true embeddings separates classes with strict margin.
struct SyntheticSpec {
  int classes = 5;
  int entities_per_class = 20;
  int ctx_words_per_class = 8;
  int sentences_per_entity = 10;
  int queries_per_class = 3;
  int seeds_per_query = 3;
  std::uint64_t seed = 1234;

  static constexpr double kGlobalWeightSq = 0.40;  // shared within a class group
  static constexpr double kClassWeightSq = 0.12;   // shared within one class
  static constexpr double kCtxClassWeightSq = 0.80;

  int groups() const { return 2; }
  int group_of(int class_index) const { return class_index < (classes + 1) / 2 ? 0 : 1; }
};

struct SyntheticQuery {
  std::string id;
  int class_index = 0;
  std::vector<int> seed_entity_ids;
};

struct SyntheticData {
  SyntheticSpec spec;
  std::vector<std::string> entity_words;   // index == entity id
  std::vector<int> entity_class;           // index == entity id
  std::vector<std::string> class_names;
  std::vector<std::string> corpus_lines;
  Eigen::MatrixXd entity_vectors;          // one row per entity, ground truth
  std::vector<std::pair<std::string, Eigen::VectorXd>> word_vectors;  // table contents
  std::vector<SyntheticQuery> queries;
};

SyntheticData generate_synthetic(const SyntheticSpec& spec);

// Writes corpus.txt, vectors.txt, vocab.txt, classes.tsv, queries.tsv and a
// ready-to-run benchmark.conf into dir.
void write_synthetic(const SyntheticData& data, const std::filesystem::path& dir);

}  // namespace setexpand
