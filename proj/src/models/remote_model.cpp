#include "cds/models/remote_model.hpp"

#include <thread>

#include <httplib.h>

namespace cds {

using nlohmann::json;

Endpoint Endpoint::parse(std::string_view address) {
  std::string_view rest = address;
  if (rest.starts_with("http://")) rest.remove_prefix(7);
  while (rest.ends_with('/')) rest.remove_suffix(1);
  const auto colon = rest.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == rest.size()) {
    throw std::invalid_argument("endpoint '" + std::string(address) + "' is not of the form host:port");
  }
  Endpoint e;
  e.host = std::string(rest.substr(0, colon));
  try {
    std::size_t used = 0;
    const std::string port(rest.substr(colon + 1));
    e.port = std::stoi(port, &used);
    if (used != port.size() || e.port <= 0 || e.port > 65535) throw std::invalid_argument("port");
  } catch (const std::exception&) {
    throw std::invalid_argument("endpoint '" + std::string(address) + "' has an invalid port");
  }
  return e;
}

std::string Endpoint::to_string() const { return "http://" + host + ":" + std::to_string(port); }

JsonClient::JsonClient(Endpoint endpoint, RemoteOptions options)
    : endpoint_(std::move(endpoint)), options_(options) {}

namespace {

template <typename Request>
json with_retries(const Endpoint& endpoint, const RemoteOptions& options, const std::string& path,
                  Request&& request) {
  const int attempts = 1 + std::max(options.retries, 0);
  std::string last_error;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    httplib::Client client(endpoint.host, endpoint.port);
    const auto secs = options.timeout.count() / 1000;
    const auto usecs = (options.timeout.count() % 1000) * 1000;
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);

    auto result = request(client);
    if (!result) {
      last_error = httplib::to_string(result.error());
    } else if (result->status >= 500) {
      last_error = "HTTP " + std::to_string(result->status);
    } else if (result->status >= 400) {
      throw wire::ProtocolError(endpoint.to_string() + path + ": HTTP " + std::to_string(result->status) + " " +
                                result->body);
    } else {
      try {
        return json::parse(result->body);
      } catch (const json::parse_error& e) {
        throw wire::ProtocolError(endpoint.to_string() + path + ": malformed JSON response: " + e.what());
      }
    }
    if (attempt < attempts) std::this_thread::sleep_for(options.retry_backoff);
  }
  throw TransportError(endpoint.to_string() + path + ": " + last_error + " after " + std::to_string(attempts) +
                           " attempt(s)",
                       attempts);
}

}  // namespace

json JsonClient::get(const std::string& path) const {
  return with_retries(endpoint_, options_, path, [&](httplib::Client& c) { return c.Get(path); });
}

json JsonClient::post(const std::string& path, const json& body) const {
  const std::string payload = body.dump();
  return with_retries(endpoint_, options_, path,
                      [&](httplib::Client& c) { return c.Post(path, payload, "application/json"); });
}

RemoteModel::RemoteModel(Endpoint endpoint, RemoteOptions options)
    : client_(std::move(endpoint), options), vocab_(wire::decode_vocabulary(client_.get("/v1/vocab"))) {}

RemoteModel::RemoteModel(Endpoint endpoint, const Vocabulary& expected, RemoteOptions options)
    : RemoteModel(std::move(endpoint), options) {
  if (vocab_.tokens() != expected.tokens() || vocab_.stop_ids() != expected.stop_ids()) {
    throw wire::ProtocolError("vocabulary mismatch: server at " + client_.endpoint().to_string() +
                              " serves a different vocabulary");
  }
}

TokenDistribution RemoteModel::next_distribution(std::span<const TokenId> context) const {
  if (context.empty()) throw std::invalid_argument("remote model: context must not be empty");
  json tokens = json::array();
  for (TokenId id : context) tokens.push_back(vocab_.token(id));
  const json request{{"context_tokens", std::move(tokens)}, {"top_k", client_.options().top_k}};
  return wire::decode_distribution(client_.post("/v1/distribution", request), vocab_);
}

}  // namespace cds
