#include "cds/classifier/classifier.hpp"

#include <stdexcept>

#include "cds/core/text.hpp"

namespace cds {

std::string_view to_string(ClassifierMode mode) { return mode == ClassifierMode::CT ? "CT" : "NT"; }

ClassifierMode parse_classifier_mode(std::string_view text) {
  if (text == "CT" || text == "ct") return ClassifierMode::CT;
  if (text == "NT" || text == "nt") return ClassifierMode::NT;
  throw std::invalid_argument("unknown classifier mode '" + std::string(text) + "' (expected CT or NT)");
}

DecisionLabel parse_decision_label(std::string_view text) {
  if (text == "Yes") return DecisionLabel::Yes;
  if (text == "No") return DecisionLabel::No;
  throw std::invalid_argument("unknown decision label '" + std::string(text) + "' (expected Yes or No)");
}

std::string build_classifier_prefix(std::string_view question, std::span<const std::string> partial_response) {
  std::string out = "Question: ";
  out += question;
  out += " Answer: ";
  out += join(partial_response);
  return out;
}

}  // namespace cds
