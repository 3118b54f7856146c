#include "setexpand/patterngen.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "setexpand/errors.hpp"

namespace setexpand {

std::vector<Token> ContextPattern::render() const {
  std::vector<Token> out;
  out.reserve(prev.size() + 1 + next.size());
  out.insert(out.end(), prev.begin(), prev.end());
  out.push_back(kMask);
  out.insert(out.end(), next.begin(), next.end());
  return out;
}

std::string ContextPattern::render_text() const { return join_tokens(render()); }

ContextPattern assemble_pattern(std::vector<Token> prev, std::vector<Token> next) {
  return ContextPattern{std::move(prev), std::move(next)};
}

std::vector<Token> generate_prev(const NGramLM& rev_lm, const Entity& entity,
                                 const GenerationConfig& cfg, std::mt19937_64& rng) {
  if (rev_lm.direction() != Direction::Reverse) {
    throw ValidationError("generate_prev: model is not reverse-direction");
  }
  std::vector<Token> seeded(entity.tokens.rbegin(), entity.tokens.rend());
  std::vector<Token> continuation = sample_continuation(rev_lm, seeded, cfg, rng);
  std::reverse(continuation.begin(), continuation.end());
  return continuation;
}

std::vector<Token> generate_next(const NGramLM& fwd_lm, const std::vector<Token>& prev,
                                 const Entity& entity, const GenerationConfig& cfg,
                                 std::mt19937_64& rng) {
  if (fwd_lm.direction() != Direction::Forward) {
    throw ValidationError("generate_next: model is not forward-direction");
  }
  std::vector<Token> seeded = prev;
  seeded.insert(seeded.end(), entity.tokens.begin(), entity.tokens.end());
  return sample_continuation(fwd_lm, seeded, cfg, rng);
}

BuiltinGenerator::BuiltinGenerator(const NGramLM& fwd_lm, const NGramLM& rev_lm)
    : fwd_(&fwd_lm), rev_(&rev_lm), fwd_cache_(fwd_lm), rev_cache_(rev_lm) {
  if (fwd_lm.direction() != Direction::Forward) {
    throw ValidationError("builtin generator: forward model has wrong direction");
  }
  if (rev_lm.direction() != Direction::Reverse) {
    throw ValidationError("builtin generator: reverse model has wrong direction");
  }
}

std::vector<Token> BuiltinGenerator::continue_sequence(Direction direction,
                                                       const std::vector<Token>& prefix,
                                                       const GenerationConfig& cfg,
                                                       std::uint64_t stream_seed) {
  const bool forward = direction == Direction::Forward;
  const NGramLM& lm = forward ? *fwd_ : *rev_;
  DistributionCache& cache = forward ? fwd_cache_ : rev_cache_;
  std::mt19937_64 rng(stream_seed);
  return sample_continuation(lm, prefix, cfg, rng, &cache);
}

namespace {

ContextPattern pattern_at_index(const Entity& entity, SequenceGenerator& generator,
                                const GenerationConfig& cfg, int index) {
  const auto id = static_cast<std::uint64_t>(entity.id);
  const auto idx = static_cast<std::uint64_t>(index);

  std::vector<Token> rev_seed(entity.tokens.rbegin(), entity.tokens.rend());
  std::vector<Token> prev = generator.continue_sequence(
      Direction::Reverse, rev_seed, cfg, derive_stream_seed(cfg.rng_seed, id, idx, 0));
  std::reverse(prev.begin(), prev.end());

  std::vector<Token> guide = prev;
  guide.insert(guide.end(), entity.tokens.begin(), entity.tokens.end());
  std::vector<Token> next = generator.continue_sequence(
      Direction::Forward, guide, cfg, derive_stream_seed(cfg.rng_seed, id, idx, 1));

  return assemble_pattern(std::move(prev), std::move(next));
}

}  // namespace

std::vector<ContextPattern> generate_patterns(const Entity& entity, SequenceGenerator& generator,
                                              const GenerationConfig& cfg) {
  cfg.validate();
  std::vector<ContextPattern> patterns;
  patterns.reserve(static_cast<std::size_t>(cfg.patterns_per_entity));
  for (int i = 0; i < cfg.patterns_per_entity; ++i) {
    patterns.push_back(pattern_at_index(entity, generator, cfg, i));
  }
  return patterns;
}

std::vector<ContextPattern> generate_patterns(const Entity& entity, const NGramLM& rev_lm,
                                              const NGramLM& fwd_lm,
                                              const GenerationConfig& cfg) {
  BuiltinGenerator generator(fwd_lm, rev_lm);
  return generate_patterns(entity, generator, cfg);
}

void write_pattern_cache(const PatternSet& patterns, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& [entity_id, list] : patterns) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      out << entity_id << '\t' << i << '\t' << join_tokens(list[i].prev) << '\t'
          << join_tokens(list[i].next) << '\n';
    }
  }
  if (!out) throw Error("I/O error while writing " + path.string());
}

PatternSet load_pattern_cache(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  PatternSet patterns;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string where = path.string() + ":" + std::to_string(lineno);

    std::vector<std::string> fields;
    std::size_t start = 0;
    for (int f = 0; f < 3; ++f) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) throw FormatError(where + ": expected 4 tab-separated fields");
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    fields.push_back(line.substr(start));

    int entity_id = 0;
    std::size_t index = 0;
    try {
      entity_id = std::stoi(fields[0]);
      index = static_cast<std::size_t>(std::stoul(fields[1]));
    } catch (const std::exception&) {
      throw FormatError(where + ": malformed entity id or pattern index");
    }
    auto& list = patterns[entity_id];
    if (index != list.size()) {
      throw FormatError(where + ": pattern index " + fields[1] + " out of order (expected " +
                        std::to_string(list.size()) + ")");
    }
    std::istringstream prev_in(fields[2]), next_in(fields[3]);
    ContextPattern p;
    Token t;
    while (prev_in >> t) p.prev.push_back(t);
    while (next_in >> t) p.next.push_back(t);
    list.push_back(std::move(p));
  }
  if (in.bad()) throw Error("I/O error while reading " + path.string());
  return patterns;
}

}  // namespace setexpand
