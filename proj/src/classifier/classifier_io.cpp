#include "cds/classifier/classifier_io.hpp"

#include <fstream>
#include <stdexcept>

namespace cds {

using nlohmann::json;

json to_json(const FeatureClassifier& classifier) {
  json weights = json::object();
  for (const auto& [name, w] : classifier.weights()) weights[name] = w;
  return json{{"format", kClassifierFormat},      {"kind", "feature"},
              {"mode", to_string(classifier.mode())}, {"window", classifier.window()},
              {"bias", classifier.bias()},        {"weights", std::move(weights)}};
}

json to_json(const HeuristicClassifier& classifier) {
  const auto& r = classifier.rules();
  return json{{"format", kClassifierFormat},
              {"kind", "heuristic"},
              {"mode", to_string(classifier.mode())},
              {"rules",
               {{"digits", r.digits},
                {"capitalized_mid_sentence", r.capitalized_mid_sentence},
                {"continuations", r.continuations},
                {"continuation_words", r.continuation_words},
                {"capitalized_exceptions", r.capitalized_exceptions}}}};
}

std::unique_ptr<CriticalTokenClassifier> classifier_from_json(const json& doc) {
  if (!doc.is_object() || doc.value("format", "") != kClassifierFormat) {
    throw std::invalid_argument("classifier file: expected \"format\": \"" + std::string(kClassifierFormat) + "\"");
  }
  try {
    const auto kind = doc.at("kind").get<std::string>();
    const auto mode = parse_classifier_mode(doc.value("mode", "CT"));
    if (kind == "feature") {
      return std::make_unique<FeatureClassifier>(mode, doc.at("window").get<std::size_t>(),
                                                 doc.at("weights").get<std::unordered_map<std::string, double>>(),
                                                 doc.at("bias").get<double>());
    }
    if (kind == "heuristic") {
      if (mode != ClassifierMode::CT) throw std::invalid_argument("classifier file: heuristic rules are CT-only");
      HeuristicRules rules;
      if (doc.contains("rules")) {
        const auto& r = doc.at("rules");
        rules.digits = r.value("digits", rules.digits);
        rules.capitalized_mid_sentence = r.value("capitalized_mid_sentence", rules.capitalized_mid_sentence);
        rules.continuations = r.value("continuations", rules.continuations);
        if (r.contains("continuation_words")) {
          rules.continuation_words = r.at("continuation_words").get<std::set<std::string>>();
        }
        if (r.contains("capitalized_exceptions")) {
          rules.capitalized_exceptions = r.at("capitalized_exceptions").get<std::set<std::string>>();
        }
      }
      return std::make_unique<HeuristicClassifier>(std::move(rules));
    }
    if (kind == "constant") {
      return std::make_unique<ConstantClassifier>(parse_decision_label(doc.at("label").get<std::string>()), mode);
    }
    throw std::invalid_argument("classifier file: unknown kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("classifier file: ") + e.what());
  }
}

std::unique_ptr<CriticalTokenClassifier> load_classifier(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open classifier file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("classifier file " + path.string() + ": " + e.what());
  }
  return classifier_from_json(doc);
}

}  // namespace cds
