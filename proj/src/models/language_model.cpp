#include "cds/models/language_model.hpp"

#include <stdexcept>

#include "cds/core/text.hpp"

namespace cds {

TokenSequence WhitespaceTokenizer::encode(std::string_view text) const {
  TokenSequence out;
  for (const auto& word : split_whitespace(text)) {
    if (auto id = vocab_->find(word)) {
      out.push_back(*id);
    } else if (auto unk = vocab_->unknown_id()) {
      out.push_back(*unk);
    } else {
      throw std::invalid_argument("tokenizer: '" + word + "' is not in the vocabulary");
    }
  }
  return out;
}

std::string WhitespaceTokenizer::decode(std::span<const TokenId> tokens, bool keep_stop) const {
  std::vector<std::string> words;
  for (TokenId id : tokens) {
    if (!keep_stop && vocab_->is_stop(id)) continue;
    words.push_back(vocab_->token(id));
  }
  return join(words);
}

std::vector<std::string> WhitespaceTokenizer::strings(std::span<const TokenId> tokens) const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (TokenId id : tokens) out.push_back(vocab_->token(id));
  return out;
}

}  // namespace cds
