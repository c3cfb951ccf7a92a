#include "cds/models/wire.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cds::wire {

using nlohmann::json;

json encode_vocabulary(const Vocabulary& vocab) {
  return json{{"tokens", vocab.tokens()}, {"stop_ids", vocab.stop_ids()}};
}

Vocabulary decode_vocabulary(const json& body) {
  try {
    auto tokens = body.at("tokens").get<std::vector<std::string>>();
    auto stops = body.at("stop_ids").get<std::vector<TokenId>>();
    return Vocabulary(std::move(tokens), std::move(stops));
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("vocab response: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ProtocolError(std::string("vocab response: ") + e.what());
  }
}

json encode_distribution(const TokenDistribution& dist, const Vocabulary& vocab, int top_k) {
  auto probs = dist.probs();
  std::vector<TokenId> order(probs.size());
  std::iota(order.begin(), order.end(), TokenId{0});
  std::stable_sort(order.begin(), order.end(), [&](TokenId a, TokenId b) { return probs[a] > probs[b]; });

  json entries = json::array();
  double listed = 0.0;
  const auto k = static_cast<std::size_t>(std::max(top_k, 0));
  for (std::size_t i = 0; i < order.size() && entries.size() < k; ++i) {
    const double p = probs[order[i]];
    if (p <= 0.0) break;
    entries.push_back({{"token", vocab.token(order[i])}, {"logprob", std::log(p)}});
    listed += p;
  }
  const double residual = 1.0 - listed;
  return json{{"entries", std::move(entries)}, {"residual_logprob", residual > 0.0 ? std::log(residual) : kLogZero}};
}

TokenDistribution decode_distribution(const json& body, const Vocabulary& vocab) {
  if (!body.is_object() || !body.contains("entries") || !body.at("entries").is_array()) {
    throw ProtocolError("distribution response: missing 'entries' array");
  }
  std::vector<double> probs(vocab.size(), 0.0);
  std::vector<bool> listed(vocab.size(), false);
  std::size_t listed_count = 0;
  for (const auto& entry : body.at("entries")) {
    if (!entry.is_object() || !entry.contains("token") || !entry.contains("logprob") ||
        !entry.at("token").is_string() || !entry.at("logprob").is_number()) {
      throw ProtocolError("distribution response: malformed entry " + entry.dump());
    }
    const auto token = entry.at("token").get<std::string>();
    auto id = vocab.find(token);
    if (!id) throw ProtocolError("vocabulary mismatch: server returned unknown token '" + token + "'");
    if (listed[*id]) throw ProtocolError("distribution response: duplicate token '" + token + "'");
    const double logprob = entry.at("logprob").get<double>();
    if (std::isnan(logprob) || logprob > 1e-6) {
      throw ProtocolError("distribution response: invalid logprob for '" + token + "'");
    }
    listed[*id] = true;
    ++listed_count;
    probs[*id] = std::exp(std::min(logprob, 0.0));
  }
  double residual = 0.0;
  if (body.contains("residual_logprob")) {
    const auto& r = body.at("residual_logprob");
    if (!r.is_number()) throw ProtocolError("distribution response: residual_logprob is not a number");
    const double lr = r.get<double>();
    if (std::isnan(lr) || lr > 1e-6) throw ProtocolError("distribution response: invalid residual_logprob");
    residual = std::exp(std::min(lr, 0.0));
  }
  const std::size_t unlisted = vocab.size() - listed_count;
  if (unlisted > 0 && residual > 0.0) {
    const double share = residual / static_cast<double>(unlisted);
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (!listed[i]) probs[i] = share;
    }
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (!(total > 0.0)) throw ProtocolError("distribution response: no probability mass");
  return TokenDistribution::normalized(std::move(probs));
}

}  // namespace cds::wire
