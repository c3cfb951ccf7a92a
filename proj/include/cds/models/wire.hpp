#pragma once

// JSON-over-HTTP protocol shared with model servers.
//
//   GET  /v1/vocab         -> {"tokens": [str...], "stop_ids": [int...]}
//   POST /v1/distribution  {"context_tokens": [str...] | "context_text": str, "top_k": int}
//                          -> {"entries": [{"token": str, "logprob": num}...],
//                              "residual_logprob": num}
//   POST /v1/classify      {"prefix": str} -> {"label": "Yes" | "No"}
//
// Log-probabilities are natural logs. The residual mass belongs to every
// vocabulary entry not listed and is spread uniformly over them.

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "cds/core/distribution.hpp"

namespace cds::wire {

inline constexpr int kDefaultTopK = 128;
// Stands in for log(0), which JSON cannot carry.
inline constexpr double kLogZero = -1.0e300;

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json encode_vocabulary(const Vocabulary& vocab);
Vocabulary decode_vocabulary(const nlohmann::json& body);

// Top-k entries by probability (ties by lower id), zero-mass entries omitted.
nlohmann::json encode_distribution(const TokenDistribution& dist, const Vocabulary& vocab, int top_k);

// Rebuilds a full distribution and renormalizes it. Unknown or duplicated
// token strings and malformed shapes raise ProtocolError.
TokenDistribution decode_distribution(const nlohmann::json& body, const Vocabulary& vocab);

}  // namespace cds::wire
