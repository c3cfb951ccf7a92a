#pragma once

#include <map>

#include "cds/models/language_model.hpp"

namespace cds {

// Deterministic lookup model: the distribution stored for the longest suffix
// of the context wins, otherwise the fallback is returned.
class TableModel final : public LanguageModel {
 public:
  TableModel(Vocabulary vocab, TokenDistribution fallback);

  // Stores (or replaces) the distribution for a context suffix.
  void set(TokenSequence suffix, TokenDistribution dist);

  TokenDistribution next_distribution(std::span<const TokenId> context) const override;
  const Vocabulary& vocabulary() const override { return vocab_; }

  const TokenDistribution& fallback() const { return fallback_; }
  const std::map<TokenSequence, TokenDistribution>& entries() const { return table_; }

 private:
  Vocabulary vocab_;
  TokenDistribution fallback_;
  std::map<TokenSequence, TokenDistribution> table_;
  std::size_t longest_suffix_ = 0;
};

}  // namespace cds
