#include "setexpand/workspace.hpp"

#include <cstdlib>

#include "setexpand/errors.hpp"

namespace setexpand {

Workspace Workspace::resolve(const RunConfig& config) {
  if (const char* env = std::getenv("SETEXPAND_WORKSPACE"); env != nullptr && *env != '\0') {
    return Workspace(env);
  }
  return Workspace(config.workspace);
}

std::filesystem::path Workspace::patterns(const RunConfig& config) const {
  if (!config.patterns.empty()) return config.patterns;
  return root_ / "patterns.tsv";
}

std::filesystem::path Workspace::patterns_meta(const RunConfig& config) const {
  std::filesystem::path p = patterns(config);
  p += ".meta";
  return p;
}

std::filesystem::path Workspace::ranked(const std::string& query_id) const {
  return ranked_dir() / (query_id + ".tsv");
}

std::filesystem::path Workspace::report(const RunConfig& config) const {
  if (!config.output.empty()) return config.output;
  return root_ / "report.json";
}

void Workspace::ensure_exists() const {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw Error("cannot create workspace directory " + root_.string());
}

void Workspace::ensure_ranked_dir() const {
  ensure_exists();
  std::error_code ec;
  std::filesystem::create_directories(ranked_dir(), ec);
  if (ec) throw Error("cannot create " + ranked_dir().string());
}

}  // namespace setexpand
