#include "setexpand/encoding.hpp"

#include "setexpand/errors.hpp"

namespace setexpand {

Vector encode_pattern(const ContextPattern& pattern, const EmbeddingTable& table) {
  Vector sum = Vector::Zero(table.dim());
  int present = 0;
  auto accumulate = [&](const std::vector<Token>& tokens) {
    for (const Token& t : tokens) {
      if (auto i = table.find(t)) {
        sum += table.row(*i).transpose();
        ++present;
      }
    }
  };
  accumulate(pattern.prev);
  accumulate(pattern.next);
  if (present == 0) return Vector::Zero(table.dim());
  return sum / present;
}

ContextVector context_representation(const Entity& entity,
                                     const std::vector<ContextPattern>& patterns,
                                     ContextEncoder& encoder) {
  if (patterns.empty()) {
    throw ValidationError("context_representation: no patterns for entity '" + entity.surface +
                          "'");
  }
  Vector sum = encoder.encode(patterns[0]);
  for (std::size_t i = 1; i < patterns.size(); ++i) {
    Vector v = encoder.encode(patterns[i]);
    if (v.size() != sum.size()) {
      throw ConsistencyError("context_representation: encoder dimension changed from " +
                             std::to_string(sum.size()) + " to " + std::to_string(v.size()));
    }
    sum += v;
  }
  ContextVector out;
  out.components = sum / static_cast<double>(patterns.size());
  out.source_entity = entity.id;
  out.pattern_count = static_cast<int>(patterns.size());
  return out;
}

ContextVector context_representation(const Entity& entity,
                                     const std::vector<ContextPattern>& patterns,
                                     const EmbeddingTable& table) {
  TableEncoder encoder(table);
  return context_representation(entity, patterns, encoder);
}

}  // namespace setexpand
