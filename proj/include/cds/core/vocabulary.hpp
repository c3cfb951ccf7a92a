#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cds {

using TokenId = std::uint32_t;
using TokenSequence = std::vector<TokenId>;

// Closed, ordered token inventory. Ids are positions in the token list.
// At least one STOP id is required; the first one acts as end-of-sequence.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> tokens, std::vector<TokenId> stop_ids,
             std::optional<TokenId> unknown_id = std::nullopt);

  // Convenience: resolve stop and unknown tokens by string.
  static Vocabulary from_strings(std::vector<std::string> tokens,
                                 const std::vector<std::string>& stop_tokens,
                                 std::optional<std::string> unknown_token = std::nullopt);

  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  bool contains(TokenId id) const { return id < tokens_.size(); }

  const std::string& token(TokenId id) const;
  std::optional<TokenId> find(std::string_view token) const;
  // Throws std::invalid_argument for unknown strings.
  TokenId id(std::string_view token) const;

  bool is_stop(TokenId id) const;
  const std::vector<TokenId>& stop_ids() const { return stop_ids_; }
  TokenId eos() const { return stop_ids_.front(); }
  std::optional<TokenId> unknown_id() const { return unknown_id_; }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // Throws std::invalid_argument if any id is out of range.
  void check(const TokenSequence& sequence) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_ && a.stop_ids_ == b.stop_ids_ && a.unknown_id_ == b.unknown_id_;
  }

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, TokenId, std::less<>> index_;
  std::vector<TokenId> stop_ids_;
  std::optional<TokenId> unknown_id_;
};

}  // namespace cds
