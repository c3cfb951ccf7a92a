#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cds/classifier/classifier.hpp"
#include "cds/decoding/decoding.hpp"
#include "cds/models/fewshot.hpp"
#include "cds/models/language_model.hpp"

namespace cds {

struct EngineSettings {
  std::string system_prompt;
  // `{system}` and `{question}` are substituted.
  std::string aligned_template = "{system}\nQuestion: {question}\nAnswer:";
  // Few-shot examples for the pretrained model's prefix.
  FewShotSpec fewshot;
  // Resolved against the leading model's vocabulary; empty means its own
  // stop set.
  std::vector<std::string> stop_tokens;
};

// Builds the three prefixes for a question and dispatches a strategy to the
// decoding functions. Roles a strategy does not use may be null.
class CdsEngine {
 public:
  CdsEngine(std::shared_ptr<const LanguageModel> aligned, std::shared_ptr<const LanguageModel> pretrained,
            std::shared_ptr<const CriticalTokenClassifier> classifier, EngineSettings settings);

  // Throws std::invalid_argument when `shots` exceeds the configured
  // examples. Prefixes of absent models are left empty.
  PrefixTriple prefixes(std::string_view question, std::size_t shots) const;

  // Uses config.shots for the pretrained prefix. config.stop_ids, when empty,
  // is filled from the settings' stop tokens. Throws std::invalid_argument
  // when a role required by the strategy is missing.
  GenerationResult run(std::string_view question, const StrategyConfig& config,
                       const StepObserver& observer = {}) const;

  // The vocabulary a strategy's output tokens are expressed in.
  const Vocabulary& output_vocabulary(Strategy strategy) const;
  // Detokenized response, STOP tokens dropped.
  std::string response_text(const GenerationResult& result, Strategy strategy) const;

  // Throws std::invalid_argument naming the missing role.
  void require_roles(Strategy strategy) const;

  const LanguageModel* aligned() const { return aligned_.get(); }
  const LanguageModel* pretrained() const { return pretrained_.get(); }
  const CriticalTokenClassifier* classifier() const { return classifier_.get(); }
  const EngineSettings& settings() const { return settings_; }

 private:
  std::shared_ptr<const LanguageModel> aligned_;
  std::shared_ptr<const LanguageModel> pretrained_;
  std::shared_ptr<const CriticalTokenClassifier> classifier_;
  EngineSettings settings_;
};

}  // namespace cds
