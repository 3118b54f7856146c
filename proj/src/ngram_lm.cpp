#include "setexpand/ngram_lm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "setexpand/errors.hpp"

namespace setexpand {

void GenerationConfig::validate() const {
  if (top_k < 1) throw ConfigError("generation: top_k must be >= 1");
  if (max_len < 0) throw ConfigError("generation: max_len must be >= 0");
  if (patterns_per_entity < 1) throw ConfigError("generation: m must be >= 1");
}

namespace {

std::string gram_key(std::span<const Token> gram) {
  std::string key;
  for (std::size_t i = 0; i < gram.size(); ++i) {
    if (i > 0) key.push_back('\n');
    key += gram[i];
  }
  return key;
}

}  // namespace

NGramLM NGramLM::train(const Corpus& corpus, int order, double backoff) {
  if (order < 2) throw ConfigError("train_lm: order must be >= 2");
  if (!(backoff > 0.0 && backoff < 1.0)) {
    throw ConfigError("train_lm: backoff must lie in (0, 1)");
  }
  if (corpus.sentences.empty()) throw ValidationError("train_lm: empty corpus");
  if (corpus.vocab.count(kBeginMarker) || corpus.vocab.count(kEndMarker)) {
    throw ValidationError(std::string("train_lm: corpus contains the reserved marker token '") +
                          (corpus.vocab.count(kBeginMarker) ? kBeginMarker : kEndMarker) + "'");
  }

  NGramLM lm;
  lm.order_ = order;
  lm.backoff_ = backoff;
  lm.direction_ = corpus.direction;
  lm.vocab_.insert(corpus.vocab.begin(), corpus.vocab.end());

  std::vector<Token> padded;
  for (const Sentence& sentence : corpus.sentences) {
    padded.clear();
    padded.insert(padded.end(), static_cast<std::size_t>(order - 1), kBeginMarker);
    padded.insert(padded.end(), sentence.begin(), sentence.end());
    padded.push_back(kEndMarker);
    lm.total_tokens_ += padded.size();
    for (std::size_t start = 0; start < padded.size(); ++start) {
      std::string key;
      for (std::size_t k = 1; k <= static_cast<std::size_t>(order) && start + k <= padded.size();
           ++k) {
        if (k > 1) key.push_back('\n');
        key += padded[start + k - 1];
        ++lm.counts_[key];
      }
    }
  }
  return lm;
}

NGramLM train_lm(const Corpus& corpus, int order, double backoff) {
  return NGramLM::train(corpus, order, backoff);
}

std::uint64_t NGramLM::count(std::span<const Token> gram) const {
  auto it = counts_.find(gram_key(gram));
  return it == counts_.end() ? 0 : it->second;
}

std::vector<Token> NGramLM::resolve_context(std::span<const Token> context) const {
  const std::size_t max_ctx = static_cast<std::size_t>(order_ - 1);
  std::size_t len = std::min(context.size(), max_ctx);
  std::span<const Token> tail = context.subspan(context.size() - len, len);
  while (!tail.empty() && count(tail) == 0) {
    tail = tail.subspan(1);
  }
  return {tail.begin(), tail.end()};
}

double NGramLM::backoff_score(std::span<const Token> context, const Token& word) const {
  if (context.empty()) {
    return static_cast<double>(count(std::span<const Token>(&word, 1))) /
           static_cast<double>(total_tokens_);
  }
  std::vector<Token> gram(context.begin(), context.end());
  gram.push_back(word);
  const std::uint64_t joint = count(gram);
  if (joint > 0) {
    return static_cast<double>(joint) / static_cast<double>(count(context));
  }
  return backoff_ * backoff_score(context.subspan(1), word);
}

std::vector<std::pair<Token, double>> NGramLM::next_token_distribution(
    std::span<const Token> context) const {
  const std::vector<Token> ctx = resolve_context(context);

  std::vector<std::pair<Token, double>> dist;
  dist.reserve(vocab_.size() + 1);
  double total = 0.0;
  auto add = [&](const Token& w) {
    const double s = backoff_score(ctx, w);
    total += s;
    dist.emplace_back(w, s);
  };
  for (const Token& w : vocab_) add(w);
  add(kEndMarker);

  for (auto& [w, s] : dist) s /= total;
  std::sort(dist.begin(), dist.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return dist;
}

void NGramLM::for_each_gram(
    const std::function<void(std::span<const Token>, std::uint64_t)>& fn) const {
  std::vector<Token> gram;
  for (const auto& [key, n] : counts_) {
    gram.clear();
    std::size_t start = 0;
    while (true) {
      std::size_t nl = key.find('\n', start);
      if (nl == std::string::npos) {
        gram.push_back(key.substr(start));
        break;
      }
      gram.push_back(key.substr(start, nl - start));
      start = nl + 1;
    }
    fn(gram, n);
  }
}

void NGramLM::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  char backoff_repr[64];
  std::snprintf(backoff_repr, sizeof backoff_repr, "%.17g", backoff_);
  out << "order\t" << order_ << '\n';
  out << "backoff\t" << backoff_repr << '\n';
  out << "direction\t" << (direction_ == Direction::Forward ? "forward" : "reverse") << '\n';
  out << "total_tokens\t" << total_tokens_ << '\n';

  std::map<std::string, std::uint64_t> sorted(counts_.begin(), counts_.end());
  for (const auto& [key, n] : sorted) {
    std::string spaced = key;
    std::replace(spaced.begin(), spaced.end(), '\n', ' ');
    out << spaced << '\t' << n << '\n';
  }
  if (!out) throw Error("I/O error while writing " + path.string());
}

NGramLM NGramLM::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  NGramLM lm;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> FormatError {
    return FormatError(path.string() + ":" + std::to_string(lineno) + ": " + msg);
  };

  int header_fields = 0;
  while (header_fields < 4 && std::getline(in, line)) {
    ++lineno;
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw fail("expected 'key\\tvalue' header line");
    const std::string key = line.substr(0, tab);
    const std::string value = line.substr(tab + 1);
    try {
      if (key == "order") {
        lm.order_ = std::stoi(value);
      } else if (key == "backoff") {
        lm.backoff_ = std::stod(value);
      } else if (key == "direction") {
        if (value == "forward") {
          lm.direction_ = Direction::Forward;
        } else if (value == "reverse") {
          lm.direction_ = Direction::Reverse;
        } else {
          throw fail("unknown direction '" + value + "'");
        }
      } else if (key == "total_tokens") {
        lm.total_tokens_ = std::stoull(value);
      } else {
        throw fail("unknown header key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw fail("malformed header value '" + value + "'");
    }
    ++header_fields;
  }
  if (header_fields < 4) throw fail("truncated model header");
  if (lm.order_ < 2) throw fail("model order must be >= 2");

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw fail("expected 'gram\\tcount'");
    std::uint64_t n = 0;
    try {
      n = std::stoull(line.substr(tab + 1));
    } catch (const std::invalid_argument&) {
      throw fail("malformed count");
    }
    std::string key = line.substr(0, tab);
    const bool unigram = key.find(' ') == std::string::npos;
    if (unigram && key != kBeginMarker && key != kEndMarker) lm.vocab_.insert(key);
    std::replace(key.begin(), key.end(), ' ', '\n');
    lm.counts_[key] = n;
  }
  if (in.bad()) throw Error("I/O error while reading " + path.string());
  return lm;
}

const std::vector<std::pair<Token, double>>& DistributionCache::distribution(
    std::span<const Token> context) {
  std::string key;
  for (const Token& t : lm_->resolve_context(context)) {
    if (!key.empty()) key.push_back('\n');
    key += t;
  }
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = memo_.find(key);
  if (it == memo_.end()) {
    it = memo_.emplace(std::move(key), lm_->next_token_distribution(context)).first;
  }
  return it->second;
}

std::vector<Token> sample_continuation(const NGramLM& lm, const std::vector<Token>& prefix,
                                       const GenerationConfig& cfg, std::mt19937_64& rng,
                                       DistributionCache* cache) {
  std::vector<Token> context = prefix;
  std::vector<Token> emitted;
  std::vector<std::pair<Token, double>> local;
  while (static_cast<int>(emitted.size()) < cfg.max_len) {
    const std::vector<std::pair<Token, double>>* dist_ptr;
    if (cache) {
      dist_ptr = &cache->distribution(context);
    } else {
      local = lm.next_token_distribution(context);
      dist_ptr = &local;
    }
    const auto& dist = *dist_ptr;
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(cfg.top_k), dist.size());
    double mass = 0.0;
    for (std::size_t i = 0; i < k; ++i) mass += dist[i].second;

    const double u = uniform01(rng) * mass;
    double cum = 0.0;
    std::size_t chosen = k - 1;
    for (std::size_t i = 0; i < k; ++i) {
      cum += dist[i].second;
      if (u < cum) {
        chosen = i;
        break;
      }
    }
    const Token& token = dist[chosen].first;
    if (token == NGramLM::kEndMarker) break;
    emitted.push_back(token);
    context.push_back(token);
  }
  return emitted;
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
  auto mix = [](std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  std::uint64_t h = seed;
  h = mix(h + 0x9e3779b97f4a7c15ULL * (a + 1));
  h = mix(h + 0x9e3779b97f4a7c15ULL * (b + 1));
  h = mix(h + 0x9e3779b97f4a7c15ULL * (c + 1));
  return h;
}

}  // namespace setexpand
