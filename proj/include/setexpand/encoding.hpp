#pragma once

#include <vector>

#include "setexpand/embeddings.hpp"
#include "setexpand/patterngen.hpp"

namespace setexpand {

// Per-entity context representation: the mean over that entity's m pattern
// encodings.
struct ContextVector {
  Vector components;
  int source_entity = -1;
  int pattern_count = 0;
};

// One encoder surface for the built-in bag-of-context encoder and remote
// neural encoders alike.
class ContextEncoder {
 public:
  virtual ~ContextEncoder() = default;
  virtual Vector encode(const ContextPattern& pattern) = 0;
};

// Unweighted mean of the embedding vectors of all prev/next tokens found in
// the table; the mask is excluded and fully out-of-vocabulary patterns encode
// to the zero vector.
Vector encode_pattern(const ContextPattern& pattern, const EmbeddingTable& table);

class TableEncoder final : public ContextEncoder {
 public:
  explicit TableEncoder(const EmbeddingTable& table) : table_(&table) {}
  Vector encode(const ContextPattern& pattern) override {
    return encode_pattern(pattern, *table_);
  }

 private:
  const EmbeddingTable* table_;
};

ContextVector context_representation(const Entity& entity,
                                     const std::vector<ContextPattern>& patterns,
                                     ContextEncoder& encoder);
ContextVector context_representation(const Entity& entity,
                                     const std::vector<ContextPattern>& patterns,
                                     const EmbeddingTable& table);

}  // namespace setexpand
