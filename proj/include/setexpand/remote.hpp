#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "setexpand/encoding.hpp"
#include "setexpand/patterngen.hpp"

namespace setexpand {

// POST <endpoint>/generate with
//   {"direction":"forward"|"reverse","prefix":[string],"top_k":int,
//    "max_len":int,"seed":int}
// and expect {"tokens":[string]} back.
std::vector<Token> remote_generate(const std::string& endpoint, Direction direction,
                                   const std::vector<Token>& prefix, const GenerationConfig& cfg,
                                   std::uint64_t stream_seed);

// POST <endpoint>/encode with {"tokens":[string],"mask_index":int} and expect
// {"vector":[number]} back.
Vector remote_encode(const std::string& endpoint, const ContextPattern& pattern);

class RemoteGenerator final : public SequenceGenerator {
 public:
  explicit RemoteGenerator(std::string endpoint) : endpoint_(std::move(endpoint)) {}

  std::vector<Token> continue_sequence(Direction direction, const std::vector<Token>& prefix,
                                       const GenerationConfig& cfg,
                                       std::uint64_t stream_seed) override {
    return remote_generate(endpoint_, direction, prefix, cfg, stream_seed);
  }

 private:
  std::string endpoint_;
};

// Rejects responses whose vector dimension drifts within one run.
class RemoteEncoder final : public ContextEncoder {
 public:
  explicit RemoteEncoder(std::string endpoint) : endpoint_(std::move(endpoint)) {}

  Vector encode(const ContextPattern& pattern) override;

 private:
  std::string endpoint_;
  std::mutex mutex_;
  std::optional<Eigen::Index> dim_;
};

}  // namespace setexpand
