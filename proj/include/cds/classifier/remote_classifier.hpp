#pragma once

#include "cds/classifier/classifier.hpp"
#include "cds/models/remote_model.hpp"

namespace cds {

// Classifier served over POST /v1/classify {"prefix": str} -> {"label": "Yes"|"No"}.
class RemoteClassifier final : public CriticalTokenClassifier {
 public:
  RemoteClassifier(Endpoint endpoint, ClassifierMode mode = ClassifierMode::CT, RemoteOptions options = {});

  DecisionLabel decide(std::string_view question, std::span<const std::string> partial_response) const override;
  ClassifierMode mode() const override { return mode_; }

 private:
  JsonClient client_;
  ClassifierMode mode_;
};

}  // namespace cds
