#pragma once

#include <set>
#include <string>

#include "cds/classifier/classifier.hpp"

namespace cds {

// Surface rules for critical tokens: numbers, and capitalized words that do
// not start a sentence (names, places, titles). A short lowercase connector
// directly after such a token ("Bank of ...") continues the span.
struct HeuristicRules {
  bool digits = true;
  bool capitalized_mid_sentence = true;
  bool continuations = true;
  std::set<std::string> continuation_words{"of", "de", "del", "der", "van", "von", "da", "du", "la", "le", "bin"};
  std::set<std::string> capitalized_exceptions{"I"};
};

// CT-mode rule classifier. The decision looks at the last token and at most
// one token to its left.
class HeuristicClassifier final : public CriticalTokenClassifier {
 public:
  explicit HeuristicClassifier(HeuristicRules rules = {}) : rules_(std::move(rules)) {}

  DecisionLabel decide(std::string_view question, std::span<const std::string> partial_response) const override;
  ClassifierMode mode() const override { return ClassifierMode::CT; }

  const HeuristicRules& rules() const { return rules_; }

 private:
  // Digit/capital rules for the token at `index`, ignoring continuations.
  bool base_rule(std::span<const std::string> tokens, std::size_t index) const;

  HeuristicRules rules_;
};

// Shared token shape helpers.
bool has_digit(std::string_view token);
// First letter (after leading punctuation) is uppercase.
bool is_capitalized(std::string_view token);
// Token ends a sentence (".", "!", "?" possibly followed by quotes/brackets).
bool ends_sentence(std::string_view token);

}  // namespace cds
