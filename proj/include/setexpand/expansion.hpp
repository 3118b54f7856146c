#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "setexpand/encoding.hpp"

namespace setexpand {

struct SeedMember {
  Entity entity;
  int iteration_added = 0;                 // 0 for initial/enhanced seeds
  std::optional<double> score = std::nullopt;  // nullopt for initial/enhanced seeds
};

struct ExpansionState {
  std::vector<SeedMember> seed;
  std::vector<Entity> candidates;
  std::unordered_map<int, ContextVector> repr;  // entity id -> context vector
  int iteration = 0;
};

struct RankedEntry {
  int rank = 0;  // 1-based
  Entity entity;
  double score = 0.0;
  int iteration = 0;
};

// Expansion output in addition order; the seeds the expansion started from
// are not listed. exhausted marks runs that ran out of candidates early.
struct RankedList {
  std::string query_id;
  std::vector<RankedEntry> entries;
  bool exhausted = false;
};

// Mean cosine between the candidate's context vector and each current seed's.
double context_score(const Entity& candidate, const std::vector<SeedMember>& seed,
                     const std::unordered_map<int, ContextVector>& repr);

// Moves the top min(3, |candidates|) scorers into the seed set. Ties break by
// ascending surface form, then ascending id.
ExpansionState expand_step(ExpansionState state, int jobs = 1);

// Repeats expand_step until the seed reaches target_size or candidates run
// out; the final step's additions are truncated by score so the seed lands on
// target_size exactly when possible.
RankedList expand(ExpansionState state, int target_size, const std::string& query_id = "",
                  int jobs = 1);

// One line per entry: rank TAB surface TAB score(6 decimals) TAB iteration.
void write_ranked_list(const RankedList& ranked, const std::filesystem::path& path);

}  // namespace setexpand
