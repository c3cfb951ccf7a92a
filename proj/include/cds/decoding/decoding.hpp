#pragma once

#include <functional>
#include <stdexcept>

#include "cds/classifier/classifier.hpp"
#include "cds/core/trace.hpp"
#include "cds/decoding/strategy.hpp"
#include "cds/models/language_model.hpp"

namespace cds {

enum class Termination { StopToken, MaxTokens };

std::string_view to_string(Termination t);

struct GenerationResult {
  // Accepted tokens over the leading model's vocabulary, excluding the
  // initial prefix and including the terminal STOP when one was produced.
  TokenSequence tokens;
  GenerationTrace trace;
  Termination terminated_by = Termination::MaxTokens;
  PrefixTriple final_prefixes;
};

// Raised when a step cannot be completed; carries everything accepted so far.
class GenerationError : public std::runtime_error {
 public:
  GenerationError(const std::string& what, GenerationResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const GenerationResult& partial() const { return partial_; }

 private:
  GenerationResult partial_;
};

// Called after every accepted token with the updated prefixes.
using StepObserver = std::function<void(const PrefixTriple&, const TraceStep&)>;

// Single-model decoding: AlignedSampling/Greedy or PretrainedSampling/Greedy.
// Sampling draws once per step at the configured temperature; greedy takes
// the argmax.
GenerationResult generate(const LanguageModel& model, const TokenSequence& prefix, const StrategyConfig& config,
                          const StepObserver& observer = {});

// Classifier-routed collaboration. CT mode: sample a tentative token from the
// aligned model, classify it appended to the router context, and on Yes
// replace it by the pretrained model's greedy token. The accepted token is
// appended to all three prefixes. An aligned STOP ends generation even when
// the router says Yes. NT mode classifies before proposing and draws from the
// aligned model only on No.
GenerationResult model_cds(const LanguageModel& pretrained, const LanguageModel& aligned,
                           const CriticalTokenClassifier& classifier, PrefixTriple prefixes,
                           const StrategyConfig& config, const StepObserver& observer = {});

// Aligned entropy above gamma routes the step to the pretrained argmax;
// otherwise the aligned model samples.
GenerationResult entropy_cds(const LanguageModel& pretrained, const LanguageModel& aligned, PrefixTriple prefixes,
                             const StrategyConfig& config, const StepObserver& observer = {});

// Aligned entropy above gamma switches that step to aligned greedy.
GenerationResult self_cds(const LanguageModel& aligned, const TokenSequence& prefix, const StrategyConfig& config,
                          const StepObserver& observer = {});

// As model_cds, but a Yes step takes the argmax of
// lambda * p_pretrained + (1 - lambda) * p_aligned. Both models must share
// a vocabulary.
GenerationResult soft_mixing_cds(const LanguageModel& pretrained, const LanguageModel& aligned,
                                 const CriticalTokenClassifier& router, PrefixTriple prefixes,
                                 const StrategyConfig& config, const StepObserver& observer = {});

}  // namespace cds
