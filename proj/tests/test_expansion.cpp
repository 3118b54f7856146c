#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "setexpand/errors.hpp"
#include "setexpand/expansion.hpp"
#include "support/builders.hpp"
#include "support/tempdir.hpp"

using namespace setexpand;
using testsupport::make_entity;

namespace {

ContextVector cv(int id, std::initializer_list<double> values) {
  ContextVector out;
  out.components = Vector(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) out.components(i++) = v;
  out.source_entity = id;
  out.pattern_count = 1;
  return out;
}

// Seeds cluster on the first axis; candidate ids 10.. with decreasing
// first-axis alignment.
ExpansionState ladder_state(int n_candidates) {
  ExpansionState state;
  state.seed.push_back({make_entity("s0", 0), 0, std::nullopt});
  state.repr[0] = cv(0, {1, 0});
  for (int i = 0; i < n_candidates; ++i) {
    const int id = 10 + i;
    const Entity e = make_entity("cand" + std::string(1, static_cast<char>('a' + i)), id);
    state.candidates.push_back(e);
    const double angle = 0.1 * (i + 1);
    state.repr[id] = cv(id, {std::cos(angle), std::sin(angle)});
  }
  return state;
}

}  // namespace

TEST_CASE("context_score hand cases") {
  std::unordered_map<int, ContextVector> repr;
  repr[0] = cv(0, {1, 0});
  repr[1] = cv(1, {0, 1});
  repr[2] = cv(2, {1, 0});
  repr[3] = cv(3, {0, 0});

  const std::vector<SeedMember> one_seed{{make_entity("s", 0), 0, std::nullopt}};
  CHECK(context_score(make_entity("c", 2), one_seed, repr) == doctest::Approx(1.0));

  const std::vector<SeedMember> two_seeds{{make_entity("s0", 0), 0, std::nullopt},
                                          {make_entity("s1", 1), 0, std::nullopt}};
  CHECK(context_score(make_entity("c", 2), two_seeds, repr) == doctest::Approx(0.5));
  CHECK(context_score(make_entity("z", 3), two_seeds, repr) == 0.0);
}

TEST_CASE("context_score names the entity with a missing representation") {
  std::unordered_map<int, ContextVector> repr;
  repr[0] = cv(0, {1, 0});
  const std::vector<SeedMember> seed{{make_entity("s", 0), 0, std::nullopt}};
  CHECK_THROWS_WITH_AS(context_score(make_entity("ghost", 42), seed, repr),
                       doctest::Contains("ghost"), ValidationError);
}

TEST_CASE("expand_step moves exactly min(3, candidates) entities") {
  ExpansionState five = expand_step(ladder_state(5));
  CHECK(five.seed.size() == 4);
  CHECK(five.candidates.size() == 2);
  CHECK(five.iteration == 1);
  for (std::size_t i = 1; i < five.seed.size(); ++i) {
    CHECK(five.seed[i].iteration_added == 1);
    CHECK(five.seed[i].score.has_value());
  }

  ExpansionState two = expand_step(ladder_state(2));
  CHECK(two.seed.size() == 3);
  CHECK(two.candidates.empty());
}

TEST_CASE("expand_step picks the top scorers") {
  // Candidates are ordered by decreasing similarity to the seed.
  ExpansionState state = expand_step(ladder_state(6));
  CHECK(state.seed[1].entity.surface == "canda");
  CHECK(state.seed[2].entity.surface == "candb");
  CHECK(state.seed[3].entity.surface == "candc");
  CHECK(state.seed[1].score.value() > state.seed[2].score.value());
}

TEST_CASE("equal scores break ties alphabetically, then by id") {
  ExpansionState state;
  state.seed.push_back({make_entity("s", 0), 0, std::nullopt});
  state.repr[0] = cv(0, {1, 0});
  for (const auto& [name, id] : std::vector<std::pair<std::string, int>>{
           {"zeta", 10}, {"alpha", 11}, {"mid", 12}, {"beta", 13}}) {
    state.candidates.push_back(make_entity(name, id));
    state.repr[id] = cv(id, {1, 0});  // all tie at score 1
  }
  const ExpansionState out = expand_step(std::move(state));
  CHECK(out.seed[1].entity.surface == "alpha");
  CHECK(out.seed[2].entity.surface == "beta");
  CHECK(out.seed[3].entity.surface == "mid");
  CHECK(out.candidates[0].surface == "zeta");
}

TEST_CASE("expand_step on an empty candidate set fails") {
  ExpansionState state;
  state.seed.push_back({make_entity("s", 0), 0, std::nullopt});
  state.repr[0] = cv(0, {1, 0});
  CHECK_THROWS_AS(expand_step(std::move(state)), ValidationError);
}

TEST_CASE("expand truncates the final iteration to hit the target size exactly") {
  const RankedList ranked = expand(ladder_state(6), 2, "q");
  REQUIRE(ranked.entries.size() == 1);  // target 2 = 1 seed + 1 addition
  CHECK(ranked.entries[0].rank == 1);
  CHECK(ranked.entries[0].entity.surface == "canda");
  CHECK_FALSE(ranked.exhausted);
}

TEST_CASE("expand returns a short list with a warning when candidates run out") {
  const RankedList ranked = expand(ladder_state(4), 20, "q");
  CHECK(ranked.entries.size() == 4);
  CHECK(ranked.exhausted);
}

TEST_CASE("expand rejects a target not exceeding the current seed size") {
  CHECK_THROWS_AS(expand(ladder_state(3), 1, "q"), ValidationError);
}

TEST_CASE("ranked entries originate in the candidate set, without duplicates") {
  const RankedList ranked = expand(ladder_state(8), 7, "q");
  REQUIRE(ranked.entries.size() == 6);
  std::set<int> seen;
  for (const auto& e : ranked.entries) {
    CHECK(e.entity.id >= 10);
    CHECK(seen.insert(e.entity.id).second);
  }
  for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
    CHECK(ranked.entries[i].rank == static_cast<int>(i) + 1);
  }
  // Addition order: iterations ascending, score descending within each.
  for (std::size_t i = 1; i < ranked.entries.size(); ++i) {
    const auto& prev = ranked.entries[i - 1];
    const auto& cur = ranked.entries[i];
    CHECK(prev.iteration <= cur.iteration);
    if (prev.iteration == cur.iteration) CHECK(prev.score >= cur.score);
  }
}

TEST_CASE("recorded scores replay against the seed set of their iteration") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    ExpansionState state;
    const int n_seed = 1 + static_cast<int>(rng() % 3);
    const int n_cand = 4 + static_cast<int>(rng() % 10);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int id = 0;
    for (int i = 0; i < n_seed; ++i, ++id) {
      state.seed.push_back({make_entity("s" + std::to_string(i), id), 0, std::nullopt});
      state.repr[id] = cv(id, {gauss(rng), gauss(rng), gauss(rng)});
    }
    for (int i = 0; i < n_cand; ++i, ++id) {
      state.candidates.push_back(make_entity("c" + std::to_string(i), id));
      state.repr[id] = cv(id, {gauss(rng), gauss(rng), gauss(rng)});
    }

    const ExpansionState start = state;
    const RankedList ranked = expand(std::move(state), n_seed + n_cand, "q");

    // Replay: rebuild the seed set as it stood at each iteration.
    std::vector<SeedMember> replay_seed = start.seed;
    int iteration = 1;
    std::size_t i = 0;
    while (i < ranked.entries.size()) {
      std::vector<RankedEntry> batch;
      while (i < ranked.entries.size() && ranked.entries[i].iteration == iteration) {
        batch.push_back(ranked.entries[i]);
        ++i;
      }
      for (const auto& entry : batch) {
        CHECK(context_score(entry.entity, replay_seed, start.repr) ==
              doctest::Approx(entry.score).epsilon(1e-12));
      }
      for (const auto& entry : batch) {
        replay_seed.push_back({entry.entity, entry.iteration, entry.score});
      }
      ++iteration;
    }
  }
}

TEST_CASE("candidate scoring is identical across job counts") {
  ExpansionState base = ladder_state(9);
  const RankedList serial = expand(base, 8, "q", 1);
  const RankedList parallel = expand(base, 8, "q", 4);
  REQUIRE(serial.entries.size() == parallel.entries.size());
  for (std::size_t i = 0; i < serial.entries.size(); ++i) {
    CHECK(serial.entries[i].entity.id == parallel.entries[i].entity.id);
    CHECK(serial.entries[i].score == parallel.entries[i].score);
  }
}

TEST_CASE("write_ranked_list emits rank, surface, fixed-point score, iteration") {
  testsupport::TempDir dir;
  RankedList ranked;
  ranked.query_id = "q";
  ranked.entries = {{1, make_entity("Texas", 4), 0.875, 1},
                    {2, make_entity("Ohio", 2), 0.25, 1}};
  const auto path = dir.path() / "ranked.tsv";
  write_ranked_list(ranked, path);
  CHECK(testsupport::read_file(path) == "1\tTexas\t0.875000\t1\n2\tOhio\t0.250000\t1\n");
}
