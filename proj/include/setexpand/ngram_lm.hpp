#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <mutex>
#include <random>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "setexpand/corpus.hpp"

namespace setexpand {

struct GenerationConfig {
  int top_k = 8;
  int max_len = 16;
  int patterns_per_entity = 130;  // m
  std::uint64_t rng_seed = 0;
  void validate() const;
};

// Direction-tagged order-n counts model with stupid backoff. Sentences are
// padded with order-1 begin markers and one end marker before counting, so
// every stored k-gram's prefix and suffix (k-1)-grams are stored too.
class NGramLM {
 public:
  static constexpr const char* kBeginMarker = "<s>";
  static constexpr const char* kEndMarker = "</s>";

  NGramLM() = default;

  static NGramLM train(const Corpus& corpus, int order, double backoff);

  int order() const { return order_; }
  double backoff() const { return backoff_; }
  Direction direction() const { return direction_; }
  const std::set<Token>& vocab() const { return vocab_; }
  std::uint64_t total_tokens() const { return total_tokens_; }

  std::uint64_t count(std::span<const Token> gram) const;

  // Longest suffix of the last order-1 context tokens that is a stored gram.
  std::vector<Token> resolve_context(std::span<const Token> context) const;

  // Renormalized stupid-backoff distribution over vocab plus the end marker,
  // sorted by probability descending then token ascending.
  std::vector<std::pair<Token, double>> next_token_distribution(
      std::span<const Token> context) const;

  void for_each_gram(const std::function<void(std::span<const Token>, std::uint64_t)>& fn) const;

  void save(const std::filesystem::path& path) const;
  static NGramLM load(const std::filesystem::path& path);

 private:
  double backoff_score(std::span<const Token> context, const Token& word) const;

  int order_ = 0;
  double backoff_ = 0.4;
  Direction direction_ = Direction::Forward;
  std::unordered_map<std::string, std::uint64_t> counts_;  // key: '\n'-joined gram
  std::set<Token> vocab_;
  std::uint64_t total_tokens_ = 0;  // unigram occurrences including markers
};

NGramLM train_lm(const Corpus& corpus, int order, double backoff);

// Memoizes next_token_distribution per resolved context. Values are
// identical to the uncached path; safe for concurrent use.
class DistributionCache {
 public:
  explicit DistributionCache(const NGramLM& lm) : lm_(&lm) {}
  const std::vector<std::pair<Token, double>>& distribution(std::span<const Token> context);

 private:
  const NGramLM* lm_;
  std::unordered_map<std::string, std::vector<std::pair<Token, double>>> memo_;
  std::mutex mutex_;
};

// Top-K sampling: restrict each step to the top_k most probable tokens,
// renormalize, sample. Stops at the end marker or after max_len tokens.
// Deterministic given the rng state.
std::vector<Token> sample_continuation(const NGramLM& lm, const std::vector<Token>& prefix,
                                       const GenerationConfig& cfg, std::mt19937_64& rng,
                                       DistributionCache* cache = nullptr);

// Uniform draw in [0,1) with exactly 53 random bits; portable across platforms.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Stream derivation for reproducible, order-independent parallel sampling.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c);

}  // namespace setexpand
