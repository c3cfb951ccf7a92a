#include "cds/models/table_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace cds {

TableModel::TableModel(Vocabulary vocab, TokenDistribution fallback)
    : vocab_(std::move(vocab)), fallback_(std::move(fallback)) {
  if (fallback_.size() != vocab_.size()) {
    throw std::invalid_argument("table model: fallback distribution size does not match vocabulary");
  }
}

void TableModel::set(TokenSequence suffix, TokenDistribution dist) {
  if (suffix.empty()) throw std::invalid_argument("table model: empty suffix (use the fallback)");
  vocab_.check(suffix);
  if (dist.size() != vocab_.size()) {
    throw std::invalid_argument("table model: distribution size does not match vocabulary");
  }
  longest_suffix_ = std::max(longest_suffix_, suffix.size());
  table_.insert_or_assign(std::move(suffix), std::move(dist));
}

TokenDistribution TableModel::next_distribution(std::span<const TokenId> context) const {
  for (TokenId id : context) {
    if (!vocab_.contains(id)) {
      throw std::invalid_argument("table model: context token " + std::to_string(id) + " out of range");
    }
  }
  const std::size_t max_len = std::min(longest_suffix_, context.size());
  TokenSequence key;
  for (std::size_t len = max_len; len > 0; --len) {
    key.assign(context.end() - static_cast<std::ptrdiff_t>(len), context.end());
    if (auto it = table_.find(key); it != table_.end()) return it->second;
  }
  return fallback_;
}

}  // namespace cds
