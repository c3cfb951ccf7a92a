#pragma once

#include <cstdint>
#include <limits>
#include <map>

#include "cds/models/language_model.hpp"

namespace cds {

// Additively smoothed n-gram model:
//   P(w | ctx) = (count(ctx, w) + alpha) / (count(ctx) + alpha * V).
// Contexts are the last order-1 tokens, left-padded with kBeginOfSequence.
// An unseen context with alpha = 0 yields the uniform distribution.
class NGramModel final : public LanguageModel {
 public:
  static constexpr TokenId kBeginOfSequence = std::numeric_limits<TokenId>::max();

  using Counts = std::map<TokenSequence, std::map<TokenId, std::uint64_t>>;

  NGramModel(Vocabulary vocab, int order, double smoothing, Counts counts);

  TokenDistribution next_distribution(std::span<const TokenId> context) const override;
  const Vocabulary& vocabulary() const override { return vocab_; }

  int order() const { return order_; }
  double smoothing() const { return smoothing_; }
  const Counts& counts() const { return counts_; }

  // The padded (order-1)-token key used for a context.
  TokenSequence context_key(std::span<const TokenId> context) const;

 private:
  Vocabulary vocab_;
  int order_;
  double smoothing_;
  Counts counts_;
};

// Counts every order-length window of each sequence, with order-1 begin
// padding. Sequences are used as given (append a STOP token beforehand to
// model sentence ends). Throws std::invalid_argument on an empty corpus,
// order < 1, negative smoothing or foreign ids.
NGramModel ngram_train(std::span<const TokenSequence> corpus, Vocabulary vocab, int order, double smoothing);

}  // namespace cds
