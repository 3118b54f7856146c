#pragma once

#include <vector>

#include "setexpand/corpus.hpp"
#include "setexpand/embeddings.hpp"

namespace setexpand {

struct Thresholds {
  double thr_u = 0.65;
  double thr_l = 0.25;
  void validate() const;
};

// Seed/candidate pair. Disjoint, no duplicates within either list.
struct EntitySets {
  std::vector<Entity> seed;
  std::vector<Entity> candidate;
  void validate() const;
};

// Mean cosine between the candidate's representation and each seed's.
double entity_score(const Entity& candidate, const std::vector<Entity>& seed,
                    const EmbeddingTable& table);

// Promotes candidates scoring >= thr_u into the seed set (appended in
// score-descending order after the original seeds) and keeps only candidates
// with thr_l <= score < thr_u. All scores are taken against the original
// seed set; original seeds are never removed.
EntitySets enhance(const EntitySets& sets, const Thresholds& thr, const EmbeddingTable& table);

}  // namespace setexpand
