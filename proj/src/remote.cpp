#include "setexpand/remote.hpp"

#include <httplib.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "setexpand/errors.hpp"

namespace setexpand {

namespace {

using nlohmann::json;

json post_json(const std::string& endpoint, const std::string& path, const json& request) {
  httplib::Client client(endpoint);
  client.set_connection_timeout(10);
  client.set_read_timeout(60);
  auto result = client.Post(path, request.dump(), "application/json");
  if (!result) {
    throw BackendError(endpoint + path, 0,
                       "request failed: " + httplib::to_string(result.error()));
  }
  if (result->status != 200) {
    throw BackendError(endpoint + path, result->status, "non-200 response");
  }
  json body = json::parse(result->body, nullptr, false);
  if (body.is_discarded()) {
    throw BackendError(endpoint + path, result->status, "response is not valid JSON");
  }
  return body;
}

}  // namespace

std::vector<Token> remote_generate(const std::string& endpoint, Direction direction,
                                   const std::vector<Token>& prefix, const GenerationConfig& cfg,
                                   std::uint64_t stream_seed) {
  json request = {
      {"direction", direction == Direction::Forward ? "forward" : "reverse"},
      {"prefix", prefix},
      {"top_k", cfg.top_k},
      {"max_len", cfg.max_len},
      {"seed", stream_seed},
  };
  json body = post_json(endpoint, "/generate", request);
  if (!body.contains("tokens") || !body["tokens"].is_array()) {
    throw BackendError(endpoint + "/generate", 200, "response body lacks a 'tokens' array");
  }
  std::vector<Token> tokens;
  for (const auto& t : body["tokens"]) {
    if (!t.is_string()) {
      throw BackendError(endpoint + "/generate", 200, "'tokens' entry is not a string");
    }
    Token token = t.get<Token>();
    if (token.empty() || token.find_first_of(" \t\r\n") != std::string::npos) {
      throw BackendError(endpoint + "/generate", 200,
                         "'tokens' entry is empty or contains whitespace");
    }
    tokens.push_back(std::move(token));
  }
  if (static_cast<int>(tokens.size()) > cfg.max_len) {
    throw BackendError(endpoint + "/generate", 200, "continuation exceeds max_len");
  }
  return tokens;
}

Vector remote_encode(const std::string& endpoint, const ContextPattern& pattern) {
  json request = {
      {"tokens", pattern.render()},
      {"mask_index", pattern.prev.size()},
  };
  json body = post_json(endpoint, "/encode", request);
  if (!body.contains("vector") || !body["vector"].is_array() || body["vector"].empty()) {
    throw BackendError(endpoint + "/encode", 200, "response body lacks a 'vector' array");
  }
  Vector v(body["vector"].size());
  Eigen::Index i = 0;
  for (const auto& c : body["vector"]) {
    if (!c.is_number()) {
      throw BackendError(endpoint + "/encode", 200, "'vector' entry is not a number");
    }
    const double value = c.get<double>();
    if (!std::isfinite(value)) {
      throw BackendError(endpoint + "/encode", 200, "'vector' entry is not finite");
    }
    v(i++) = value;
  }
  return v;
}

Vector RemoteEncoder::encode(const ContextPattern& pattern) {
  Vector v = remote_encode(endpoint_, pattern);
  std::lock_guard<std::mutex> lock(mutex_);
  if (!dim_) {
    dim_ = v.size();
  } else if (*dim_ != v.size()) {
    throw ConsistencyError("remote encoder " + endpoint_ + ": vector dimension drifted from " +
                           std::to_string(*dim_) + " to " + std::to_string(v.size()));
  }
  return v;
}

}  // namespace setexpand
