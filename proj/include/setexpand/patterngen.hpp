#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "setexpand/corpus.hpp"
#include "setexpand/ngram_lm.hpp"

namespace setexpand {

// prev-text + mask slot + next-text around an entity mention, both sides in
// left-to-right reading order.
struct ContextPattern {
  static constexpr const char* kMask = "[MASK]";

  std::vector<Token> prev;
  std::vector<Token> next;

  std::vector<Token> render() const;
  std::string render_text() const;
};

ContextPattern assemble_pattern(std::vector<Token> prev, std::vector<Token> next);

// Generates leftward context: seeds the reverse model with the entity's
// tokens reversed, then flips the sampled continuation back into reading
// order. The entity tokens themselves are not part of the output.
std::vector<Token> generate_prev(const NGramLM& rev_lm, const Entity& entity,
                                 const GenerationConfig& cfg, std::mt19937_64& rng);

// Generates rightward context guided by prev-text plus the entity.
std::vector<Token> generate_next(const NGramLM& fwd_lm, const std::vector<Token>& prev,
                                 const Entity& entity, const GenerationConfig& cfg,
                                 std::mt19937_64& rng);

// One generator surface for the built-in n-gram models and remote neural
// backends alike. stream_seed fully determines the sample.
class SequenceGenerator {
 public:
  virtual ~SequenceGenerator() = default;
  virtual std::vector<Token> continue_sequence(Direction direction,
                                               const std::vector<Token>& prefix,
                                               const GenerationConfig& cfg,
                                               std::uint64_t stream_seed) = 0;
};

class BuiltinGenerator final : public SequenceGenerator {
 public:
  BuiltinGenerator(const NGramLM& fwd_lm, const NGramLM& rev_lm);

  std::vector<Token> continue_sequence(Direction direction, const std::vector<Token>& prefix,
                                       const GenerationConfig& cfg,
                                       std::uint64_t stream_seed) override;

 private:
  const NGramLM* fwd_;
  const NGramLM* rev_;
  DistributionCache fwd_cache_;
  DistributionCache rev_cache_;
};

// m independent samples per entity. Stream seeds are derived from
// (cfg.rng_seed, entity id, pattern index), so results are reproducible and
// independent of generation order. Repeats are allowed.
std::vector<ContextPattern> generate_patterns(const Entity& entity, SequenceGenerator& generator,
                                              const GenerationConfig& cfg);
std::vector<ContextPattern> generate_patterns(const Entity& entity, const NGramLM& rev_lm,
                                              const NGramLM& fwd_lm, const GenerationConfig& cfg);

// Pattern cache: one record per line,
// entity_id TAB pattern_index TAB prev(space-joined) TAB next(space-joined).
using PatternSet = std::map<int, std::vector<ContextPattern>>;

void write_pattern_cache(const PatternSet& patterns, const std::filesystem::path& path);
PatternSet load_pattern_cache(const std::filesystem::path& path);

}  // namespace setexpand
