#include "setexpand/embeddings.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

namespace setexpand {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

Scalar parse_component(std::string_view field, const std::string& where) {
  Scalar value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw FormatError(where + ": non-numeric component '" + std::string(field) + "'");
  }
  if (!std::isfinite(value)) {
    throw FormatError(where + ": non-finite component '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

void EmbeddingTable::insert(const std::string& word, const Vector& v) {
  if (dim_ == 0) {
    dim_ = v.size();
  } else if (v.size() != dim_) {
    throw FormatError("embedding dimension mismatch for '" + word + "'");
  }
  auto it = index_.find(word);
  if (it != index_.end()) {
    data_.row(it->second) = v.transpose();
    return;
  }
  data_.conservativeResize(data_.rows() + 1, dim_);
  data_.row(data_.rows() - 1) = v.transpose();
  index_.emplace(word, data_.rows() - 1);
}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());

  std::vector<Scalar> flat;
  std::vector<std::string> words;
  std::unordered_map<std::string, Eigen::Index> index;
  Eigen::Index dim = 0;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string where = path.string() + ":" + std::to_string(lineno);
    auto fields = split_fields(line);
    if (fields.empty()) throw FormatError(where + ": blank line in vector file");
    if (fields.size() < 2) throw FormatError(where + ": expected word plus components");
    if (dim == 0) {
      dim = static_cast<Eigen::Index>(fields.size()) - 1;
    } else if (static_cast<Eigen::Index>(fields.size()) - 1 != dim) {
      throw FormatError(where + ": expected " + std::to_string(dim) + " components, got " +
                        std::to_string(fields.size() - 1));
    }
    std::string word(fields[0]);
    std::vector<Scalar> components(dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
      components[c] = parse_component(fields[1 + static_cast<std::size_t>(c)], where);
    }
    auto it = index.find(word);
    if (it != index.end()) {
      // Later line wins.
      std::copy(components.begin(), components.end(),
                flat.begin() + it->second * dim);
    } else {
      index.emplace(std::move(word), static_cast<Eigen::Index>(words.size()));
      words.push_back(std::string(fields[0]));
      flat.insert(flat.end(), components.begin(), components.end());
    }
  }
  if (in.bad()) throw Error("I/O error while reading " + path.string());
  if (dim == 0) throw FormatError(path.string() + ": empty vector file, dimension undeterminable");

  EmbeddingTable table;
  table.dim_ = dim;
  const Eigen::Index rows = static_cast<Eigen::Index>(index.size());
  table.data_.resize(rows, dim);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      table.data_(r, c) = flat[static_cast<std::size_t>(r * dim + c)];
    }
  }
  table.index_ = std::move(index);
  return table;
}

EmbeddingTable load_vectors(const std::filesystem::path& path) {
  return EmbeddingTable::load(path);
}

EntityRepresentation entity_representation(const Entity& entity, const EmbeddingTable& table) {
  if (entity.tokens.size() > 1) {
    if (auto i = table.find(join_tokens(entity.tokens, '_'))) {
      return {Vector(table.row(*i).transpose()), false};
    }
  }
  Vector sum = Vector::Zero(table.dim());
  int present = 0;
  for (const Token& t : entity.tokens) {
    if (auto i = table.find(t)) {
      sum += table.row(*i).transpose();
      ++present;
    }
  }
  if (present == 0) return {Vector::Zero(table.dim()), true};
  return {Vector(sum / present), false};
}

}  // namespace setexpand
