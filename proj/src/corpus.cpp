#include "setexpand/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "setexpand/errors.hpp"

namespace setexpand {

namespace {

constexpr std::string_view kDetached = ".,;:!?()\"'";
constexpr std::string_view kTerminators = ".!?";

bool is_detached_punct(char c) { return kDetached.find(c) != std::string_view::npos; }

bool is_terminator(const Token& t) {
  return t.size() == 1 && kTerminators.find(t[0]) != std::string_view::npos;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };
  for (char c : text) {
    unsigned char uc = static_cast<unsigned char>(c);
    if (uc < 0x80 && std::isspace(uc)) {
      flush();
    } else if (uc < 0x80 && is_detached_punct(c)) {
      flush();
      tokens.emplace_back(1, c);
    } else {
      // ASCII-only lowercasing; multi-byte sequences pass through untouched.
      current.push_back(uc < 0x80 ? static_cast<char>(std::tolower(uc)) : c);
    }
  }
  flush();
  return tokens;
}

bool valid_utf8(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    std::size_t len;
    unsigned cp;
    if (c < 0x80) {
      i += 1;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > text.size()) return false;
    for (std::size_t j = 1; j < len; ++j) {
      unsigned char cc = static_cast<unsigned char>(text[i + j]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (len == 2 && cp < 0x80) return false;    // overlong
    if (len == 3 && cp < 0x800) return false;   // overlong
    if (len == 4 && cp < 0x10000) return false; // overlong
    if (cp > 0x10FFFF) return false;
    if (cp >= 0xD800 && cp <= 0xDFFF) return false;  // surrogate
    i += len;
  }
  return true;
}

std::string join_tokens(const std::vector<Token>& tokens, char sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(sep);
    out += tokens[i];
  }
  return out;
}

namespace {

void add_sentence(Corpus& corpus, Sentence sentence) {
  if (sentence.empty()) return;
  for (const Token& t : sentence) corpus.vocab.insert(t);
  corpus.sentences.push_back(std::move(sentence));
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

}  // namespace

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in = open_or_throw(path);
  Corpus corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!valid_utf8(line)) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": invalid UTF-8");
    }
    Sentence current;
    for (Token& t : tokenize(line)) {
      bool ends = is_terminator(t);
      current.push_back(std::move(t));
      if (ends) {
        add_sentence(corpus, std::move(current));
        current.clear();
      }
    }
    add_sentence(corpus, std::move(current));  // trailing sentence without terminator
  }
  if (in.bad()) throw Error("I/O error while reading " + path.string());
  return corpus;
}

Corpus load_normalized_corpus(const std::filesystem::path& path, Direction direction) {
  std::ifstream in = open_or_throw(path);
  Corpus corpus;
  corpus.direction = direction;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!valid_utf8(line)) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": invalid UTF-8");
    }
    Sentence sentence;
    std::istringstream iss(line);
    Token t;
    while (iss >> t) sentence.push_back(std::move(t));
    add_sentence(corpus, std::move(sentence));
  }
  if (in.bad()) throw Error("I/O error while reading " + path.string());
  return corpus;
}

void write_normalized_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  for (const Sentence& s : corpus.sentences) out << join_tokens(s) << '\n';
  if (!out) throw Error("I/O error while writing " + path.string());
}

Corpus reverse_corpus(const Corpus& corpus) {
  if (corpus.direction != Direction::Forward) {
    throw ValidationError("reverse_corpus: input is already reversed");
  }
  Corpus reversed;
  reversed.direction = Direction::Reverse;
  reversed.vocab = corpus.vocab;
  reversed.sentences.reserve(corpus.sentences.size());
  for (const Sentence& s : corpus.sentences) {
    reversed.sentences.emplace_back(s.rbegin(), s.rend());
  }
  return reversed;
}

std::vector<Entity> load_entity_vocabulary(const std::filesystem::path& path) {
  std::ifstream in = open_or_throw(path);
  std::vector<Entity> entities;
  std::unordered_map<std::string, std::size_t> seen;  // normalized key -> line
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!valid_utf8(line)) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": invalid UTF-8");
    }
    if (!line.empty() && line[0] == '#') continue;
    std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) continue;
    std::string key = join_tokens(tokens);
    auto [it, inserted] = seen.emplace(key, lineno);
    if (!inserted) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                            ": duplicate entity '" + key + "' (first seen at line " +
                            std::to_string(it->second) + ")");
    }
    Entity e;
    e.surface = line;
    auto b = e.surface.find_first_not_of(" \t");
    auto en = e.surface.find_last_not_of(" \t");
    e.surface = b == std::string::npos ? std::string() : e.surface.substr(b, en - b + 1);
    e.tokens = std::move(tokens);
    e.id = static_cast<int>(entities.size());
    entities.push_back(std::move(e));
  }
  if (in.bad()) throw Error("I/O error while reading " + path.string());
  return entities;
}

}  // namespace setexpand
