#include "setexpand/expansion.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "setexpand/errors.hpp"
#include "setexpand/parallel.hpp"

namespace setexpand {

namespace {

const ContextVector& repr_of(const Entity& e, const std::unordered_map<int, ContextVector>& repr) {
  auto it = repr.find(e.id);
  if (it == repr.end()) {
    throw ValidationError("expansion: missing context representation for entity '" + e.surface +
                          "' (id " + std::to_string(e.id) + ")");
  }
  return it->second;
}

}  // namespace

double context_score(const Entity& candidate, const std::vector<SeedMember>& seed,
                     const std::unordered_map<int, ContextVector>& repr) {
  if (seed.empty()) throw ValidationError("context_score: empty seed set");
  const ContextVector& rc = repr_of(candidate, repr);
  double sum = 0.0;
  for (const SeedMember& s : seed) {
    sum += cosine(rc.components, repr_of(s.entity, repr).components);
  }
  return sum / static_cast<double>(seed.size());
}

ExpansionState expand_step(ExpansionState state, int jobs) {
  if (state.candidates.empty()) throw ValidationError("expand_step: empty candidate set");

  std::vector<double> scores(state.candidates.size());
  parallel_for(state.candidates.size(), jobs, [&](std::size_t i) {
    scores[i] = context_score(state.candidates[i], state.seed, state.repr);
  });

  std::vector<std::size_t> order(state.candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    const Entity& ea = state.candidates[a];
    const Entity& eb = state.candidates[b];
    if (ea.surface != eb.surface) return ea.surface < eb.surface;
    return ea.id < eb.id;
  });

  const std::size_t take = std::min<std::size_t>(3, state.candidates.size());
  state.iteration += 1;
  std::vector<bool> moved(state.candidates.size(), false);
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t idx = order[i];
    state.seed.push_back({state.candidates[idx], state.iteration, scores[idx]});
    moved[idx] = true;
  }
  std::vector<Entity> remaining;
  remaining.reserve(state.candidates.size() - take);
  for (std::size_t i = 0; i < state.candidates.size(); ++i) {
    if (!moved[i]) remaining.push_back(std::move(state.candidates[i]));
  }
  state.candidates = std::move(remaining);
  return state;
}

RankedList expand(ExpansionState state, int target_size, const std::string& query_id, int jobs) {
  if (target_size <= static_cast<int>(state.seed.size())) {
    throw ValidationError("expand: target size " + std::to_string(target_size) +
                          " does not exceed current seed size " +
                          std::to_string(state.seed.size()));
  }
  const std::size_t initial = state.seed.size();

  RankedList ranked;
  ranked.query_id = query_id;
  while (static_cast<int>(state.seed.size()) < target_size) {
    if (state.candidates.empty()) {
      ranked.exhausted = true;
      break;
    }
    state = expand_step(std::move(state), jobs);
  }
  // Trim surplus additions from the final step; within one step members are
  // already appended in score-descending order.
  if (static_cast<int>(state.seed.size()) > target_size) {
    state.seed.resize(static_cast<std::size_t>(target_size));
  }

  for (std::size_t i = initial; i < state.seed.size(); ++i) {
    const SeedMember& m = state.seed[i];
    ranked.entries.push_back({static_cast<int>(i - initial + 1), m.entity,
                              m.score.value_or(0.0), m.iteration_added});
  }
  return ranked;
}

void write_ranked_list(const RankedList& ranked, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  char score[32];
  for (const RankedEntry& e : ranked.entries) {
    std::snprintf(score, sizeof score, "%.6f", e.score);
    out << e.rank << '\t' << e.entity.surface << '\t' << score << '\t' << e.iteration << '\n';
  }
  if (!out) throw Error("I/O error while writing " + path.string());
}

}  // namespace setexpand
