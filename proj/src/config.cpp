#include "setexpand/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "setexpand/errors.hpp"

namespace setexpand {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& value, const std::string& where) {
  T out{};
  const std::string v = trim(value);
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError(where + ": malformed number '" + value + "'");
  }
  return out;
}

template <typename T>
std::vector<T> parse_number_list(const std::string& value, const std::string& where) {
  std::vector<T> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError(where + ": empty list element");
    out.push_back(parse_number<T>(item, where));
  }
  if (out.empty()) throw ConfigError(where + ": empty list");
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void apply_config_value(RunConfig& config, const std::string& key, const std::string& value,
                        const std::string& where) {
  if (key == "corpus") {
    config.corpus = value;
  } else if (key == "vectors") {
    config.vectors = value;
  } else if (key == "vocab") {
    config.vocab = value;
  } else if (key == "classes") {
    config.classes = value;
  } else if (key == "queries") {
    config.queries = value;
  } else if (key == "workspace") {
    config.workspace = value;
  } else if (key == "patterns") {
    config.patterns = value;
  } else if (key == "output") {
    config.output = value;
  } else if (key == "query") {
    config.query = value;
  } else if (key == "thr_u") {
    config.thr.thr_u = parse_number<double>(value, where);
  } else if (key == "thr_l") {
    config.thr.thr_l = parse_number<double>(value, where);
  } else if (key == "order") {
    config.order = parse_number<int>(value, where);
  } else if (key == "backoff") {
    config.backoff = parse_number<double>(value, where);
  } else if (key == "top_k") {
    config.gen.top_k = parse_number<int>(value, where);
  } else if (key == "max_len") {
    config.gen.max_len = parse_number<int>(value, where);
  } else if (key == "m") {
    config.gen.patterns_per_entity = parse_number<int>(value, where);
  } else if (key == "rng_seed") {
    config.gen.rng_seed = parse_number<std::uint64_t>(value, where);
  } else if (key == "backend") {
    config.backend = trim(value);
  } else if (key == "endpoint") {
    config.endpoint = trim(value);
  } else if (key == "target_size") {
    config.target_size = parse_number<int>(value, where);
  } else if (key == "k_values") {
    config.k_values = parse_number_list<int>(value, where);
  } else if (key == "repeats") {
    config.repeats = parse_number<int>(value, where);
  } else if (key == "jobs") {
    config.jobs = parse_number<int>(value, where);
  } else if (key == "sweep_thr_l") {
    config.sweep_thr_l = parse_number_list<double>(value, where);
  } else if (key == "sweep_thr_u") {
    config.sweep_thr_u = parse_number_list<double>(value, where);
  } else {
    throw ConfigError(where + ": unknown configuration key '" + key + "'");
  }
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  RunConfig config;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    apply_config_value(config, key, value, where);
  }
  if (in.bad()) throw ConfigError("I/O error while reading " + path.string());
  return config;
}

void RunConfig::validate() const {
  thr.validate();
  if (order < 2) throw ConfigError("config: order must be >= 2");
  if (!(backoff > 0.0 && backoff < 1.0)) throw ConfigError("config: backoff must lie in (0, 1)");
  if (gen.top_k < 1) throw ConfigError("config: top_k must be >= 1");
  if (gen.max_len < 1) throw ConfigError("config: max_len must be >= 1");
  if (gen.patterns_per_entity < 1) throw ConfigError("config: m must be >= 1");
  if (backend != "builtin" && backend != "remote") {
    throw ConfigError("config: backend must be 'builtin' or 'remote'");
  }
  if (backend == "remote" && endpoint.empty()) {
    throw ConfigError("config: remote backend requires an endpoint");
  }
  if (target_size < 0) throw ConfigError("config: target_size must be >= 0");
  if (k_values.empty()) throw ConfigError("config: k_values must be non-empty");
  for (int k : k_values) {
    if (k < 1) throw ConfigError("config: k_values entries must be >= 1");
  }
  if (repeats < 1) throw ConfigError("config: repeats must be >= 1");
  if (jobs < 1) throw ConfigError("config: jobs must be >= 1");
  for (double v : sweep_thr_l) {
    if (!(v < thr.thr_u)) {
      throw ConfigError("config: sweep_thr_l value " + format_double(v) +
                        " is not below thr_u");
    }
  }
  for (double v : sweep_thr_u) {
    if (!(v > thr.thr_l)) {
      throw ConfigError("config: sweep_thr_u value " + format_double(v) +
                        " is not above thr_l");
    }
  }
}

std::string canonical_config_dump(const RunConfig& c) {
  std::ostringstream out;
  auto list_d = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += format_double(v[i]);
    }
    return s;
  };
  auto list_i = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v[i]);
    }
    return s;
  };
  out << "backend=" << c.backend << '\n'
      << "backoff=" << format_double(c.backoff) << '\n'
      << "classes=" << c.classes << '\n'
      << "corpus=" << c.corpus << '\n'
      << "endpoint=" << c.endpoint << '\n'
      << "jobs=" << c.jobs << '\n'
      << "k_values=" << list_i(c.k_values) << '\n'
      << "m=" << c.gen.patterns_per_entity << '\n'
      << "max_len=" << c.gen.max_len << '\n'
      << "order=" << c.order << '\n'
      << "output=" << c.output << '\n'
      << "patterns=" << c.patterns << '\n'
      << "queries=" << c.queries << '\n'
      << "query=" << c.query << '\n'
      << "repeats=" << c.repeats << '\n'
      << "rng_seed=" << c.gen.rng_seed << '\n'
      << "sweep_thr_l=" << list_d(c.sweep_thr_l) << '\n'
      << "sweep_thr_u=" << list_d(c.sweep_thr_u) << '\n'
      << "target_size=" << c.target_size << '\n'
      << "thr_l=" << format_double(c.thr.thr_l) << '\n'
      << "thr_u=" << format_double(c.thr.thr_u) << '\n'
      << "top_k=" << c.gen.top_k << '\n'
      << "vectors=" << c.vectors << '\n'
      << "vocab=" << c.vocab << '\n'
      << "workspace=" << c.workspace << '\n';
  return out.str();
}

std::string config_hash(const RunConfig& config) {
  const std::string dump = canonical_config_dump(config);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace setexpand
