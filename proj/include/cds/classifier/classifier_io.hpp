#pragma once

#include <filesystem>
#include <memory>
#include <string_view>

#include <nlohmann/json.hpp>

#include "cds/classifier/feature_classifier.hpp"
#include "cds/classifier/heuristic.hpp"

namespace cds {

inline constexpr std::string_view kClassifierFormat = "cds-classifier/1";

// {"format": "cds-classifier/1", "mode": "CT"|"NT", "kind": "feature"|"heuristic"|"constant", ...}
nlohmann::json to_json(const FeatureClassifier& classifier);
nlohmann::json to_json(const HeuristicClassifier& classifier);

std::unique_ptr<CriticalTokenClassifier> classifier_from_json(const nlohmann::json& doc);
std::unique_ptr<CriticalTokenClassifier> load_classifier(const std::filesystem::path& path);

}  // namespace cds
