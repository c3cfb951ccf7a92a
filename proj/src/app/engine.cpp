#include "cds/app/engine.hpp"

#include <stdexcept>

#include "cds/core/text.hpp"

namespace cds {

CdsEngine::CdsEngine(std::shared_ptr<const LanguageModel> aligned, std::shared_ptr<const LanguageModel> pretrained,
                     std::shared_ptr<const CriticalTokenClassifier> classifier, EngineSettings settings)
    : aligned_(std::move(aligned)),
      pretrained_(std::move(pretrained)),
      classifier_(std::move(classifier)),
      settings_(std::move(settings)) {
  settings_.fewshot.validate();
}

PrefixTriple CdsEngine::prefixes(std::string_view question, std::size_t shots) const {
  if (shots > settings_.fewshot.shots.size()) {
    throw std::invalid_argument("requested " + std::to_string(shots) + " shots but only " +
                                std::to_string(settings_.fewshot.shots.size()) + " examples are configured");
  }
  PrefixTriple p;
  p.question = std::string(question);
  if (aligned_) {
    std::string text = replace_all(settings_.aligned_template, "{system}", settings_.system_prompt);
    text = replace_all(std::move(text), "{question}", question);
    p.aligned = WhitespaceTokenizer(aligned_->vocabulary()).encode(text);
  }
  if (pretrained_) {
    p.pretrained = render_fewshot_prefix(settings_.fewshot.first(shots), question,
                                         WhitespaceTokenizer(pretrained_->vocabulary()));
  }
  return p;
}

void CdsEngine::require_roles(Strategy strategy) const {
  const std::string name(to_string(strategy));
  if (uses_aligned(strategy) && !aligned_) throw std::invalid_argument(name + " needs an aligned model");
  if (uses_pretrained(strategy) && !pretrained_) throw std::invalid_argument(name + " needs a pretrained model");
  if (uses_classifier(strategy) && !classifier_) throw std::invalid_argument(name + " needs a classifier");
}

const Vocabulary& CdsEngine::output_vocabulary(Strategy strategy) const {
  require_roles(strategy);
  return uses_aligned(strategy) ? aligned_->vocabulary() : pretrained_->vocabulary();
}

GenerationResult CdsEngine::run(std::string_view question, const StrategyConfig& config,
                                const StepObserver& observer) const {
  require_roles(config.strategy);
  StrategyConfig cfg = config;
  if (cfg.stop_ids.empty()) {
    const Vocabulary& vocab = output_vocabulary(cfg.strategy);
    for (const auto& s : settings_.stop_tokens) cfg.stop_ids.push_back(vocab.id(s));
  }
  PrefixTriple p = prefixes(question, uses_pretrained(cfg.strategy) ? cfg.shots : 0);
  switch (cfg.strategy) {
    case Strategy::AlignedSampling:
    case Strategy::AlignedGreedy:
      return generate(*aligned_, p.aligned, cfg, observer);
    case Strategy::PretrainedSampling:
    case Strategy::PretrainedGreedy:
      return generate(*pretrained_, p.pretrained, cfg, observer);
    case Strategy::ModelCDS:
      return model_cds(*pretrained_, *aligned_, *classifier_, std::move(p), cfg, observer);
    case Strategy::EntropyCDS:
      return entropy_cds(*pretrained_, *aligned_, std::move(p), cfg, observer);
    case Strategy::SelfCDS:
      return self_cds(*aligned_, p.aligned, cfg, observer);
    case Strategy::SoftMixingCDS:
      return soft_mixing_cds(*pretrained_, *aligned_, *classifier_, std::move(p), cfg, observer);
  }
  throw std::logic_error("unhandled strategy");
}

std::string CdsEngine::response_text(const GenerationResult& result, Strategy strategy) const {
  return WhitespaceTokenizer(output_vocabulary(strategy)).decode(result.tokens);
}

}  // namespace cds
