#pragma once

#include <span>
#include <string>
#include <string_view>

#include "cds/core/distribution.hpp"
#include "cds/core/vocabulary.hpp"

namespace cds {

// Anything that maps a token context to a next-token distribution over its
// own vocabulary. Implementations must be deterministic in the context and
// safe to call concurrently through a const reference.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual TokenDistribution next_distribution(std::span<const TokenId> context) const = 0;
  virtual const Vocabulary& vocabulary() const = 0;
};

// Whitespace tokenization over a closed vocabulary. Words outside the
// vocabulary map to its unknown token, or throw when it has none.
class WhitespaceTokenizer {
 public:
  explicit WhitespaceTokenizer(const Vocabulary& vocab) : vocab_(&vocab) {}

  TokenSequence encode(std::string_view text) const;
  // Joins token strings with single spaces; STOP tokens are dropped unless
  // keep_stop is set.
  std::string decode(std::span<const TokenId> tokens, bool keep_stop = false) const;
  std::vector<std::string> strings(std::span<const TokenId> tokens) const;

 private:
  const Vocabulary* vocab_;
};

}  // namespace cds
