#include "setexpand/evaluation.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "setexpand/errors.hpp"

namespace setexpand {

double average_precision_at_k(const RankedList& ranked, const std::set<int>& gold, int k) {
  if (k < 1) throw ValidationError("average_precision_at_k: k must be >= 1");
  if (gold.empty()) throw ValidationError("average_precision_at_k: empty gold set");

  const int depth = std::min<int>(k, static_cast<int>(ranked.entries.size()));
  int hits = 0;
  double precision_sum = 0.0;
  for (int i = 0; i < depth; ++i) {
    if (gold.count(ranked.entries[static_cast<std::size_t>(i)].entity.id)) {
      ++hits;
      precision_sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return precision_sum / std::min<double>(k, static_cast<double>(gold.size()));
}

double mean_in_canonical_order(std::vector<double> values) {
  // Summing in sorted order makes the mean independent of input order.
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double map_at_k(const Benchmark& benchmark, const std::map<std::string, RankedList>& results,
                int k) {
  if (benchmark.queries.empty()) throw ValidationError("map_at_k: benchmark has no queries");
  std::vector<double> ap_values;
  for (const Query& q : benchmark.queries) {
    auto it = results.find(q.id);
    if (it == results.end()) {
      throw ValidationError("map_at_k: missing result for query '" + q.id + "'");
    }
    auto cls = benchmark.classes.find(q.class_name);
    if (cls == benchmark.classes.end()) {
      throw ValidationError("map_at_k: unknown class '" + q.class_name + "'");
    }
    std::set<int> gold = cls->second;
    for (int id : q.seed_ids) gold.erase(id);
    if (gold.empty()) {
      throw ValidationError("map_at_k: query '" + q.id + "' has no gold entities beyond seeds");
    }
    ap_values.push_back(average_precision_at_k(it->second, gold, k));
  }
  return mean_in_canonical_order(std::move(ap_values));
}

namespace {

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_id(const std::string& field, const std::string& where) {
  try {
    std::size_t consumed = 0;
    int id = std::stoi(field, &consumed);
    if (consumed != field.size()) throw std::invalid_argument(field);
    return id;
  } catch (const std::exception&) {
    throw FormatError(where + ": malformed entity id '" + field + "'");
  }
}

}  // namespace

Benchmark load_benchmark(const std::vector<Entity>& vocabulary,
                         const std::filesystem::path& classes_path,
                         const std::filesystem::path& queries_path) {
  std::set<int> known_ids;
  for (const Entity& e : vocabulary) known_ids.insert(e.id);

  Benchmark benchmark;

  {
    std::ifstream in(classes_path);
    if (!in) throw Error("cannot open " + classes_path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      const std::string where = classes_path.string() + ":" + std::to_string(lineno);
      auto fields = split_on(line, '\t');
      if (fields.size() != 2) throw FormatError(where + ": expected 'class TAB id,id,...'");
      std::set<int>& gold = benchmark.classes[fields[0]];
      for (const std::string& f : split_on(fields[1], ',')) {
        int id = parse_id(f, where);
        if (!known_ids.count(id)) {
          throw ValidationError(where + ": entity id " + std::to_string(id) +
                                " not present in the vocabulary");
        }
        gold.insert(id);
      }
      if (gold.empty()) throw ValidationError(where + ": class '" + fields[0] + "' is empty");
    }
  }

  {
    std::ifstream in(queries_path);
    if (!in) throw Error("cannot open " + queries_path.string());
    std::string line;
    std::size_t lineno = 0;
    std::set<std::string> seen_ids;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      const std::string where = queries_path.string() + ":" + std::to_string(lineno);
      auto fields = split_on(line, '\t');
      if (fields.size() != 3) {
        throw FormatError(where + ": expected 'query-id TAB class TAB id,id,...'");
      }
      Query q;
      q.id = fields[0];
      q.class_name = fields[1];
      if (!seen_ids.insert(q.id).second) {
        throw ValidationError(where + ": duplicate query id '" + q.id + "'");
      }
      auto cls = benchmark.classes.find(q.class_name);
      if (cls == benchmark.classes.end()) {
        throw ValidationError(where + ": unknown class '" + q.class_name + "'");
      }
      for (const std::string& f : split_on(fields[2], ',')) {
        int id = parse_id(f, where);
        if (!known_ids.count(id)) {
          throw ValidationError(where + ": entity id " + std::to_string(id) +
                                " not present in the vocabulary");
        }
        if (!cls->second.count(id)) {
          throw ValidationError(where + ": seed id " + std::to_string(id) +
                                " is not in the gold set of class '" + q.class_name + "'");
        }
        if (std::find(q.seed_ids.begin(), q.seed_ids.end(), id) != q.seed_ids.end()) {
          throw ValidationError(where + ": duplicate seed id " + std::to_string(id));
        }
        q.seed_ids.push_back(id);
      }
      if (q.seed_ids.empty()) throw ValidationError(where + ": query has no seed entities");
      benchmark.queries.push_back(std::move(q));
    }
  }

  if (benchmark.queries.empty()) {
    throw ValidationError(queries_path.string() + ": benchmark has no queries");
  }
  return benchmark;
}

Benchmark load_benchmark(const std::filesystem::path& vocab_path,
                         const std::filesystem::path& classes_path,
                         const std::filesystem::path& queries_path) {
  return load_benchmark(load_entity_vocabulary(vocab_path), classes_path, queries_path);
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json map_json;
  for (const auto& [k, v] : map) map_json[std::to_string(k)] = v;
  j["map"] = std::move(map_json);
  j["per_query"] = nlohmann::ordered_json::array();
  for (const QueryResult& q : per_query) {
    nlohmann::ordered_json ap;
    for (const auto& [k, v] : q.ap) ap[std::to_string(k)] = v;
    j["per_query"].push_back({{"id", q.id}, {"ap", std::move(ap)}});
  }
  j["config_hash"] = config_hash;
  j["rng_seed"] = rng_seed;
  j["repeats"] = repeats;
  return j;
}

void Report::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json().dump(2) << '\n';
  if (!out) throw Error("I/O error while writing " + path.string());
}

void Report::print_table(std::ostream& out) const {
  out << std::fixed << std::setprecision(4);
  out << "query";
  for (const auto& [k, _] : map) out << '\t' << "AP@" << k;
  out << '\n';
  for (const QueryResult& q : per_query) {
    out << q.id;
    for (const auto& [k, _] : map) {
      auto it = q.ap.find(k);
      out << '\t' << (it == q.ap.end() ? 0.0 : it->second);
    }
    out << '\n';
  }
  out << "MAP";
  for (const auto& [_, v] : map) out << '\t' << v;
  out << '\n';
  out.unsetf(std::ios::floatfield);
}

}  // namespace setexpand
