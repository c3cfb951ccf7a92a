#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "cds/models/language_model.hpp"
#include "cds/models/wire.hpp"

namespace cds {

struct Endpoint {
  std::string host = "127.0.0.1";
  int port = 0;

  // Accepts "host:port" or "http://host:port".
  static Endpoint parse(std::string_view address);
  std::string to_string() const;
};

struct RemoteOptions {
  int top_k = wire::kDefaultTopK;
  // Additional attempts after the first failed one.
  int retries = 2;
  std::chrono::milliseconds timeout{10000};
  std::chrono::milliseconds retry_backoff{50};
};

class TransportError : public std::runtime_error {
 public:
  TransportError(const std::string& what, int attempts)
      : std::runtime_error(what), attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

// Minimal JSON client with retry on connection failures and 5xx replies.
// 4xx replies and unparseable bodies raise wire::ProtocolError.
class JsonClient {
 public:
  JsonClient(Endpoint endpoint, RemoteOptions options);

  nlohmann::json get(const std::string& path) const;
  nlohmann::json post(const std::string& path, const nlohmann::json& body) const;

  const Endpoint& endpoint() const { return endpoint_; }
  const RemoteOptions& options() const { return options_; }

 private:
  Endpoint endpoint_;
  RemoteOptions options_;
};

// A language model served over the wire protocol. The vocabulary is
// negotiated once at construction; each next_distribution call is an
// independent request, so instances are safe to share between threads.
class RemoteModel final : public LanguageModel {
 public:
  RemoteModel(Endpoint endpoint, RemoteOptions options = {});
  // Verifies that the server's vocabulary equals `expected`.
  RemoteModel(Endpoint endpoint, const Vocabulary& expected, RemoteOptions options = {});

  // Throws std::invalid_argument on an empty context, TransportError and
  // wire::ProtocolError as described above.
  TokenDistribution next_distribution(std::span<const TokenId> context) const override;
  const Vocabulary& vocabulary() const override { return vocab_; }

 private:
  JsonClient client_;
  Vocabulary vocab_;
};

}  // namespace cds
