#include "setexpand/enhancement.hpp"

#include <algorithm>
#include <unordered_set>

#include "setexpand/errors.hpp"

namespace setexpand {

void Thresholds::validate() const {
  if (!(thr_u > thr_l)) {
    throw ConfigError("thresholds: thr_u (" + std::to_string(thr_u) +
                      ") must be greater than thr_l (" + std::to_string(thr_l) + ")");
  }
  if (thr_u < -1.0 || thr_u > 1.0 || thr_l < -1.0 || thr_l > 1.0) {
    throw ConfigError("thresholds: values must lie in [-1, 1]");
  }
}

void EntitySets::validate() const {
  std::unordered_set<int> seed_ids;
  for (const Entity& e : seed) {
    if (!seed_ids.insert(e.id).second) {
      throw ValidationError("entity sets: duplicate seed entity '" + e.surface + "'");
    }
  }
  std::unordered_set<int> cand_ids;
  for (const Entity& e : candidate) {
    if (!cand_ids.insert(e.id).second) {
      throw ValidationError("entity sets: duplicate candidate entity '" + e.surface + "'");
    }
    if (seed_ids.count(e.id)) {
      throw ValidationError("entity sets: entity '" + e.surface +
                            "' appears in both seed and candidate sets");
    }
  }
}

double entity_score(const Entity& candidate, const std::vector<Entity>& seed,
                    const EmbeddingTable& table) {
  if (seed.empty()) throw ValidationError("entity_score: empty seed set");
  const Vector rc = entity_representation(candidate, table).vector;
  double sum = 0.0;
  for (const Entity& s : seed) {
    sum += cosine(rc, entity_representation(s, table).vector);
  }
  return sum / static_cast<double>(seed.size());
}

EntitySets enhance(const EntitySets& sets, const Thresholds& thr, const EmbeddingTable& table) {
  thr.validate();
  sets.validate();

  struct Scored {
    const Entity* entity;
    double score;
  };
  std::vector<Scored> promoted;
  EntitySets out;
  out.seed = sets.seed;

  for (const Entity& c : sets.candidate) {
    const double s = entity_score(c, sets.seed, table);
    if (s >= thr.thr_u) {
      promoted.push_back({&c, s});
    } else if (s >= thr.thr_l) {
      out.candidate.push_back(c);
    }
  }
  std::sort(promoted.begin(), promoted.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.entity->surface != b.entity->surface) return a.entity->surface < b.entity->surface;
    return a.entity->id < b.entity->id;
  });
  for (const Scored& p : promoted) out.seed.push_back(*p.entity);
  return out;
}

}  // namespace setexpand
