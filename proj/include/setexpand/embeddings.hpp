#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>

#include "setexpand/corpus.hpp"
#include "setexpand/errors.hpp"

namespace setexpand {

using Scalar = double;
using Vector = Eigen::VectorXd;

// Cosine similarity between two same-length vector expressions. Zero-norm
// inputs score 0 so out-of-vocabulary representations rank below everything.
template <typename DerivedA, typename DerivedB>
Scalar cosine(const Eigen::MatrixBase<DerivedA>& u, const Eigen::MatrixBase<DerivedB>& v) {
  if (u.size() != v.size()) {
    throw ValidationError("cosine: dimension mismatch (" + std::to_string(u.size()) +
                          " vs " + std::to_string(v.size()) + ")");
  }
  const Scalar nu = u.norm();
  const Scalar nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return u.dot(v) / (nu * nv);
}

// Word -> dense vector map in GloVe text format: one word plus dim
// whitespace-separated decimal components per line, no header.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;

  static EmbeddingTable load(const std::filesystem::path& path);

  Eigen::Index dim() const { return dim_; }
  std::size_t size() const { return index_.size(); }
  bool contains(const std::string& word) const { return index_.count(word) > 0; }

  std::optional<Eigen::Index> find(const std::string& word) const {
    auto it = index_.find(word);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  auto row(Eigen::Index i) const { return data_.row(i); }

  std::optional<Vector> vector_of(const std::string& word) const {
    auto i = find(word);
    if (!i) return std::nullopt;
    return Vector(data_.row(*i).transpose());
  }

  void insert(const std::string& word, const Vector& v);

 private:
  Eigen::Index dim_ = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> data_;
  std::unordered_map<std::string, Eigen::Index> index_;
};

EmbeddingTable load_vectors(const std::filesystem::path& path);

struct EntityRepresentation {
  Vector vector;
  bool oov = false;  // no lookup succeeded; vector is all zeros
};

// Direct lookup of the underscore-joined token concatenation when present,
// otherwise the mean of the in-vocabulary token vectors.
EntityRepresentation entity_representation(const Entity& entity, const EmbeddingTable& table);

}  // namespace setexpand
