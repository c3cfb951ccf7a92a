#include "cds/classifier/heuristic.hpp"

#include <cctype>

namespace cds {
namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string_view strip_punctuation(std::string_view token) {
  while (!token.empty() && !is_alnum(token.front())) token.remove_prefix(1);
  while (!token.empty() && !is_alnum(token.back())) token.remove_suffix(1);
  return token;
}

}  // namespace

bool has_digit(std::string_view token) {
  for (char c : token) {
    if (std::isdigit(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

bool is_capitalized(std::string_view token) {
  for (char c : token) {
    if (std::isalpha(static_cast<unsigned char>(c))) return std::isupper(static_cast<unsigned char>(c)) != 0;
    if (std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return false;
}

bool ends_sentence(std::string_view token) {
  while (!token.empty() && (token.back() == '"' || token.back() == '\'' || token.back() == ')')) {
    token.remove_suffix(1);
  }
  return !token.empty() && (token.back() == '.' || token.back() == '!' || token.back() == '?');
}

bool HeuristicClassifier::base_rule(std::span<const std::string> tokens, std::size_t index) const {
  const std::string& token = tokens[index];
  if (rules_.digits && has_digit(token)) return true;
  if (rules_.capitalized_mid_sentence && is_capitalized(token)) {
    const bool sentence_start = index == 0 || ends_sentence(tokens[index - 1]);
    const bool exception = rules_.capitalized_exceptions.count(std::string(strip_punctuation(token))) > 0;
    if (!sentence_start && !exception) return true;
  }
  return false;
}

DecisionLabel HeuristicClassifier::decide(std::string_view /*question*/,
                                          std::span<const std::string> partial_response) const {
  if (partial_response.empty()) return DecisionLabel::No;
  const std::size_t last = partial_response.size() - 1;
  if (base_rule(partial_response, last)) return DecisionLabel::Yes;
  if (rules_.continuations && last > 0 && rules_.continuation_words.count(partial_response[last]) > 0 &&
      base_rule(partial_response, last - 1)) {
    return DecisionLabel::Yes;
  }
  return DecisionLabel::No;
}

}  // namespace cds
