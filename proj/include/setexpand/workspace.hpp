#pragma once

#include <filesystem>
#include <string>

#include "setexpand/config.hpp"

namespace setexpand {

// On-disk layout shared by the pipeline commands:
//   corpus.fwd, corpus.rev, lm.fwd, lm.rev, patterns.tsv, patterns.meta,
//   ranked/<query>.tsv, report.json
class Workspace {
 public:
  // Precedence: SETEXPAND_WORKSPACE env var, then the configured path.
  static Workspace resolve(const RunConfig& config);

  explicit Workspace(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path corpus_fwd() const { return root_ / "corpus.fwd"; }
  std::filesystem::path corpus_rev() const { return root_ / "corpus.rev"; }
  std::filesystem::path lm_fwd() const { return root_ / "lm.fwd"; }
  std::filesystem::path lm_rev() const { return root_ / "lm.rev"; }
  std::filesystem::path patterns(const RunConfig& config) const;
  std::filesystem::path patterns_meta(const RunConfig& config) const;
  std::filesystem::path ranked_dir() const { return root_ / "ranked"; }
  std::filesystem::path ranked(const std::string& query_id) const;
  std::filesystem::path report(const RunConfig& config) const;

  void ensure_exists() const;
  void ensure_ranked_dir() const;

 private:
  std::filesystem::path root_;
};

}  // namespace setexpand
