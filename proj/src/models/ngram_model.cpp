#include "cds/models/ngram_model.hpp"

#include <cmath>
#include <stdexcept>

namespace cds {

NGramModel::NGramModel(Vocabulary vocab, int order, double smoothing, Counts counts)
    : vocab_(std::move(vocab)), order_(order), smoothing_(smoothing), counts_(std::move(counts)) {
  if (order_ < 1) throw std::invalid_argument("ngram: order must be >= 1");
  if (!(smoothing_ >= 0.0) || !std::isfinite(smoothing_)) {
    throw std::invalid_argument("ngram: smoothing must be finite and >= 0");
  }
  for (const auto& [context, row] : counts_) {
    if (context.size() != static_cast<std::size_t>(order_ - 1)) {
      throw std::invalid_argument("ngram: context length does not match order");
    }
    for (TokenId id : context) {
      if (id != kBeginOfSequence && !vocab_.contains(id)) throw std::invalid_argument("ngram: foreign context id");
    }
    for (const auto& [id, count] : row) {
      if (!vocab_.contains(id)) throw std::invalid_argument("ngram: foreign token id");
    }
  }
}

TokenSequence NGramModel::context_key(std::span<const TokenId> context) const {
  const std::size_t width = static_cast<std::size_t>(order_ - 1);
  TokenSequence key(width, kBeginOfSequence);
  const std::size_t take = std::min(width, context.size());
  std::copy(context.end() - static_cast<std::ptrdiff_t>(take), context.end(),
            key.begin() + static_cast<std::ptrdiff_t>(width - take));
  return key;
}

TokenDistribution NGramModel::next_distribution(std::span<const TokenId> context) const {
  for (TokenId id : context) {
    if (!vocab_.contains(id)) throw std::invalid_argument("ngram: context token out of range");
  }
  const std::size_t v = vocab_.size();
  auto it = counts_.find(context_key(context));
  // Unseen context: alpha / (alpha * V) when smoothed, and uniform by
  // convention when alpha = 0.
  if (it == counts_.end()) return TokenDistribution::uniform(v);
  double total = 0.0;
  for (const auto& [id, count] : it->second) total += static_cast<double>(count);
  const double denom = total + smoothing_ * static_cast<double>(v);
  std::vector<double> p(v, smoothing_ / denom);
  for (const auto& [id, count] : it->second) p[id] = (static_cast<double>(count) + smoothing_) / denom;
  return TokenDistribution(std::move(p));
}

NGramModel ngram_train(std::span<const TokenSequence> corpus, Vocabulary vocab, int order, double smoothing) {
  if (corpus.empty()) throw std::invalid_argument("ngram_train: empty corpus");
  if (order < 1) throw std::invalid_argument("ngram_train: order must be >= 1");
  const std::size_t width = static_cast<std::size_t>(order - 1);
  NGramModel::Counts counts;
  for (const auto& sentence : corpus) {
    vocab.check(sentence);
    TokenSequence padded(width, NGramModel::kBeginOfSequence);
    padded.insert(padded.end(), sentence.begin(), sentence.end());
    for (std::size_t i = width; i < padded.size(); ++i) {
      TokenSequence context(padded.begin() + static_cast<std::ptrdiff_t>(i - width),
                            padded.begin() + static_cast<std::ptrdiff_t>(i));
      ++counts[std::move(context)][padded[i]];
    }
  }
  return NGramModel(std::move(vocab), order, smoothing, std::move(counts));
}

}  // namespace cds
