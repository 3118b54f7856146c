#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace setexpand {

// Normalized word unit: lowercased, never empty, never contains whitespace.
using Token = std::string;
using Sentence = std::vector<Token>;

enum class Direction { Forward, Reverse };

struct Corpus {
  std::vector<Sentence> sentences;
  std::unordered_set<Token> vocab;  // union of tokens over all sentences
  Direction direction = Direction::Forward;
};

// A surface form plus its normalized token sequence. Ids are assigned in
// vocabulary file order starting at 0 and are unique within one vocabulary.
struct Entity {
  std::string surface;
  std::vector<Token> tokens;
  int id = -1;
};

// Lowercases, splits on whitespace, and detaches . , ; : ! ? ( ) " ' as
// single-character tokens. Total: blank input gives an empty list.
std::vector<Token> tokenize(std::string_view text);

bool valid_utf8(std::string_view text);

std::string join_tokens(const std::vector<Token>& tokens, char sep = ' ');

// Reads one document per line, splits into sentences at . ! ? (terminator
// kept as the final token of its sentence), drops blank sentences.
Corpus load_corpus(const std::filesystem::path& path);

// Reads an already-normalized corpus: one sentence per line, tokens
// space-separated. No sentence splitting, no re-normalization.
Corpus load_normalized_corpus(const std::filesystem::path& path, Direction direction);

void write_normalized_corpus(const Corpus& corpus, const std::filesystem::path& path);

// Token-level reversal of every sentence. Rejects an already-reversed input.
Corpus reverse_corpus(const Corpus& corpus);

// One surface form per line; '#'-prefixed lines are comments. Duplicate
// surfaces after normalization are rejected with the offending line number.
std::vector<Entity> load_entity_vocabulary(const std::filesystem::path& path);

}  // namespace setexpand
