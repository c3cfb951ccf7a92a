#include "cds/classifier/remote_classifier.hpp"

namespace cds {

RemoteClassifier::RemoteClassifier(Endpoint endpoint, ClassifierMode mode, RemoteOptions options)
    : client_(std::move(endpoint), options), mode_(mode) {}

DecisionLabel RemoteClassifier::decide(std::string_view question,
                                       std::span<const std::string> partial_response) const {
  const auto reply = client_.post("/v1/classify", {{"prefix", build_classifier_prefix(question, partial_response)}});
  if (!reply.is_object() || !reply.contains("label") || !reply.at("label").is_string()) {
    throw wire::ProtocolError("classify response: missing 'label'");
  }
  try {
    return parse_decision_label(reply.at("label").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw wire::ProtocolError(std::string("classify response: ") + e.what());
  }
}

}  // namespace cds
