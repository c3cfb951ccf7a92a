#include "cds/core/vocabulary.hpp"

#include <stdexcept>

namespace cds {

Vocabulary::Vocabulary(std::vector<std::string> tokens, std::vector<TokenId> stop_ids,
                       std::optional<TokenId> unknown_id)
    : tokens_(std::move(tokens)), stop_ids_(std::move(stop_ids)), unknown_id_(unknown_id) {
  if (tokens_.empty()) throw std::invalid_argument("vocabulary: no tokens");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    auto [it, inserted] = index_.emplace(tokens_[i], static_cast<TokenId>(i));
    if (!inserted) throw std::invalid_argument("vocabulary: duplicate token '" + tokens_[i] + "'");
  }
  if (stop_ids_.empty()) throw std::invalid_argument("vocabulary: at least one stop token is required");
  for (TokenId id : stop_ids_) {
    if (!contains(id)) throw std::invalid_argument("vocabulary: stop id out of range");
  }
  if (unknown_id_ && !contains(*unknown_id_)) {
    throw std::invalid_argument("vocabulary: unknown-token id out of range");
  }
}

Vocabulary Vocabulary::from_strings(std::vector<std::string> tokens,
                                    const std::vector<std::string>& stop_tokens,
                                    std::optional<std::string> unknown_token) {
  auto position = [&](const std::string& s) -> TokenId {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i] == s) return static_cast<TokenId>(i);
    }
    throw std::invalid_argument("vocabulary: special token '" + s + "' not in token list");
  };
  std::vector<TokenId> stops;
  stops.reserve(stop_tokens.size());
  for (const auto& s : stop_tokens) stops.push_back(position(s));
  std::optional<TokenId> unk;
  if (unknown_token) unk = position(*unknown_token);
  return Vocabulary(std::move(tokens), std::move(stops), unk);
}

const std::string& Vocabulary::token(TokenId id) const {
  if (!contains(id)) throw std::out_of_range("vocabulary: token id " + std::to_string(id) + " out of range");
  return tokens_[id];
}

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TokenId Vocabulary::id(std::string_view token) const {
  if (auto found = find(token)) return *found;
  throw std::invalid_argument("vocabulary: unknown token '" + std::string(token) + "'");
}

bool Vocabulary::is_stop(TokenId id) const {
  for (TokenId s : stop_ids_) {
    if (s == id) return true;
  }
  return false;
}

void Vocabulary::check(const TokenSequence& sequence) const {
  for (TokenId id : sequence) {
    if (!contains(id)) {
      throw std::invalid_argument("token id " + std::to_string(id) + " is not in the vocabulary (size " +
                                  std::to_string(size()) + ")");
    }
  }
}

}  // namespace cds
