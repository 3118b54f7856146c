#include "setexpand/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "setexpand/errors.hpp"

namespace setexpand {

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  if (spec.classes < 2 || spec.entities_per_class < spec.seeds_per_query + 1) {
    throw ConfigError("synthetic: need >= 2 classes and more entities per class than seeds");
  }
  SyntheticData data;
  data.spec = spec;
  std::mt19937_64 rng(spec.seed);

  const int n_entities = spec.classes * spec.entities_per_class;
  const int n_ctx = spec.classes * spec.ctx_words_per_class;
  // Axis layout: [groups | classes | entity-private | ctx-private].
  const int dim = spec.groups() + spec.classes + n_entities + n_ctx;
  const int class_axis0 = spec.groups();
  const int entity_axis0 = class_axis0 + spec.classes;
  const int ctx_axis0 = entity_axis0 + n_entities;

  const double gw = std::sqrt(SyntheticSpec::kGlobalWeightSq);
  const double cw = std::sqrt(SyntheticSpec::kClassWeightSq);
  const double ew = std::sqrt(1.0 - SyntheticSpec::kGlobalWeightSq - SyntheticSpec::kClassWeightSq);
  const double ctx_cw = std::sqrt(SyntheticSpec::kCtxClassWeightSq);
  const double ctx_ow = std::sqrt(1.0 - SyntheticSpec::kCtxClassWeightSq);

  data.entity_vectors.setZero(n_entities, dim);
  char buf[64];
  for (int c = 0; c < spec.classes; ++c) {
    std::snprintf(buf, sizeof buf, "class%d", c);
    data.class_names.push_back(buf);
    for (int j = 0; j < spec.entities_per_class; ++j) {
      const int id = c * spec.entities_per_class + j;
      std::snprintf(buf, sizeof buf, "c%de%02d", c, j);
      data.entity_words.push_back(buf);
      data.entity_class.push_back(c);
      data.entity_vectors(id, spec.group_of(c)) = gw;
      data.entity_vectors(id, class_axis0 + c) = cw;
      data.entity_vectors(id, entity_axis0 + id) = ew;
      data.word_vectors.emplace_back(data.entity_words.back(),
                                     data.entity_vectors.row(id).transpose());
    }
  }

  std::vector<std::vector<std::string>> ctx_words(static_cast<std::size_t>(spec.classes));
  for (int c = 0; c < spec.classes; ++c) {
    for (int j = 0; j < spec.ctx_words_per_class; ++j) {
      std::snprintf(buf, sizeof buf, "c%dw%d", c, j);
      ctx_words[static_cast<std::size_t>(c)].push_back(buf);
      Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
      v(class_axis0 + c) = ctx_cw;
      v(ctx_axis0 + c * spec.ctx_words_per_class + j) = ctx_ow;
      data.word_vectors.emplace_back(buf, std::move(v));
    }
  }

  for (int id = 0; id < n_entities; ++id) {
    const auto& words = ctx_words[static_cast<std::size_t>(data.entity_class[id])];
    for (int s = 0; s < spec.sentences_per_entity; ++s) {
      const int before = 2 + static_cast<int>(rng() % 2);
      const int after = 2 + static_cast<int>(rng() % 2);
      std::string line;
      for (int w = 0; w < before; ++w) {
        line += words[rng() % words.size()];
        line += ' ';
      }
      line += data.entity_words[id];
      for (int w = 0; w < after; ++w) {
        line += ' ';
        line += words[rng() % words.size()];
      }
      line += " .";
      data.corpus_lines.push_back(std::move(line));
    }
  }

  for (int c = 0; c < spec.classes; ++c) {
    for (int t = 0; t < spec.queries_per_class; ++t) {
      SyntheticQuery q;
      std::snprintf(buf, sizeof buf, "q%d_%d", c, t);
      q.id = buf;
      q.class_index = c;
      std::set<int> chosen;
      while (static_cast<int>(chosen.size()) < spec.seeds_per_query) {
        chosen.insert(c * spec.entities_per_class +
                      static_cast<int>(rng() % spec.entities_per_class));
      }
      q.seed_entity_ids.assign(chosen.begin(), chosen.end());
      data.queries.push_back(std::move(q));
    }
  }
  return data;
}

void write_synthetic(const SyntheticData& data, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string());

  auto open = [&](const char* name) {
    std::ofstream out(dir / name);
    if (!out) throw Error("cannot write " + (dir / name).string());
    return out;
  };

  {
    auto out = open("corpus.txt");
    for (const auto& line : data.corpus_lines) out << line << '\n';
  }
  {
    auto out = open("vocab.txt");
    out << "# synthetic entity vocabulary\n";
    for (const auto& w : data.entity_words) out << w << '\n';
  }
  {
    auto out = open("vectors.txt");
    char num[64];
    for (const auto& [word, v] : data.word_vectors) {
      out << word;
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        std::snprintf(num, sizeof num, "%.9g", v(i));
        out << ' ' << num;
      }
      out << '\n';
    }
  }
  {
    auto out = open("classes.tsv");
    for (int c = 0; c < data.spec.classes; ++c) {
      out << data.class_names[static_cast<std::size_t>(c)] << '\t';
      bool first = true;
      for (std::size_t id = 0; id < data.entity_words.size(); ++id) {
        if (data.entity_class[id] != c) continue;
        if (!first) out << ',';
        out << id;
        first = false;
      }
      out << '\n';
    }
  }
  {
    auto out = open("queries.tsv");
    for (const auto& q : data.queries) {
      out << q.id << '\t' << data.class_names[static_cast<std::size_t>(q.class_index)] << '\t';
      for (std::size_t i = 0; i < q.seed_entity_ids.size(); ++i) {
        if (i) out << ',';
        out << q.seed_entity_ids[i];
      }
      out << '\n';
    }
  }
  {
    auto out = open("benchmark.conf");
    out << "corpus = " << (dir / "corpus.txt").string() << '\n'
        << "vectors = " << (dir / "vectors.txt").string() << '\n'
        << "vocab = " << (dir / "vocab.txt").string() << '\n'
        << "classes = " << (dir / "classes.tsv").string() << '\n'
        << "queries = " << (dir / "queries.tsv").string() << '\n'
        << "workspace = " << (dir / "workspace").string() << '\n';
  }
}

}  // namespace setexpand
