#include "cds/decoding/decoding.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "cds/core/distribution.hpp"
#include "cds/core/rng.hpp"
#include "cds/models/bridge.hpp"

namespace cds {

std::string_view to_string(Termination t) { return t == Termination::StopToken ? "stop_token" : "max_tokens"; }

namespace {

constexpr double kNotEvaluated = std::numeric_limits<double>::quiet_NaN();

std::vector<TokenId> resolve_stops(const StrategyConfig& config, const Vocabulary& vocab) {
  if (config.stop_ids.empty()) return vocab.stop_ids();
  vocab.check(config.stop_ids);
  return config.stop_ids;
}

bool contains(const std::vector<TokenId>& ids, TokenId id) {
  for (TokenId s : ids) {
    if (s == id) return true;
  }
  return false;
}

// Bookkeeping for one two-model generation: the prefix triple, the trace, the
// random source and the token bridge between vocabularies.
class TwoModelSession {
 public:
  TwoModelSession(const LanguageModel& pretrained, const LanguageModel& aligned, PrefixTriple prefixes,
                  const StrategyConfig& config, const StepObserver& observer, bool require_shared_vocabulary)
      : pretrained_(pretrained),
        aligned_(aligned),
        config_(config),
        observer_(observer),
        to_aligned_(pretrained.vocabulary(), aligned.vocabulary()),
        to_pretrained_(aligned.vocabulary(), pretrained.vocabulary()),
        rng_(config.seed) {
    config_.validate();
    if (aligned.vocabulary().empty() || pretrained.vocabulary().empty()) {
      throw std::invalid_argument("generation: empty vocabulary");
    }
    if (!to_aligned_.identity()) {
      if (require_shared_vocabulary) {
        throw std::invalid_argument("generation: this strategy needs both models to share one vocabulary");
      }
      if (!config_.allow_vocabulary_bridge) {
        throw std::invalid_argument(
            "generation: models have different vocabularies; enable allow_vocabulary_bridge to bridge tokens");
      }
    }
    aligned.vocabulary().check(prefixes.aligned);
    aligned.vocabulary().check(prefixes.classifier);
    pretrained.vocabulary().check(prefixes.pretrained);
    stops_ = resolve_stops(config_, aligned.vocabulary());
    result_.final_prefixes = std::move(prefixes);
    result_.trace.counters.pretrained_context_charges = 1;
  }

  bool done() const { return stopped_ || result_.tokens.size() >= config_.max_tokens; }
  bool is_aligned_stop(TokenId id) const { return contains(stops_, id); }

  TokenDistribution aligned_next() {
    ++counters().aligned_calls;
    return aligned_.next_distribution(prefixes().aligned);
  }

  TokenDistribution pretrained_next() {
    ++counters().pretrained_calls;
    return pretrained_.next_distribution(prefixes().pretrained);
  }

  TokenId draw(const TokenDistribution& dist) { return sample(apply_temperature(dist, config_.temperature), rng_); }

  // Router call on the classifier context, with the tentative token appended
  // when there is one (CT protocol).
  DecisionLabel classify(const CriticalTokenClassifier& classifier, std::optional<TokenId> tentative) {
    const auto& vocab = aligned_.vocabulary();
    std::vector<std::string> view;
    view.reserve(prefixes().classifier.size() + 1);
    for (TokenId id : prefixes().classifier) view.push_back(vocab.token(id));
    if (tentative) view.push_back(vocab.token(*tentative));
    ++counters().classifier_calls;
    return classifier.decide(prefixes().question, view);
  }

  // Appends the accepted token (given in its source model's vocabulary) to
  // all three prefixes.
  void accept(TokenId token, ModelRole source, DecisionLabel decision, bool classified, double entropy) {
    TokenId aligned_id = token;
    TokenId pretrained_id = token;
    try {
      if (source == ModelRole::Pretrained) {
        aligned_id = to_aligned_.translate(token);
      } else {
        pretrained_id = to_pretrained_.translate(token);
      }
    } catch (const BridgeError& e) {
      throw GenerationError(std::string(e.what()) + " at position " + std::to_string(result_.tokens.size()),
                            finish());
    }
    auto& p = prefixes();
    p.aligned.push_back(aligned_id);
    p.pretrained.push_back(pretrained_id);
    p.classifier.push_back(aligned_id);

    TraceStep step{result_.tokens.size(), decision, classified, source, entropy, aligned_id};
    result_.tokens.push_back(aligned_id);
    result_.trace.steps.push_back(step);
    switch (source) {
      case ModelRole::Aligned:
        ++counters().aligned_tokens;
        break;
      case ModelRole::Pretrained:
        ++counters().pretrained_tokens;
        break;
      case ModelRole::Mixture:
        ++counters().mixture_tokens;
        break;
    }
    if (is_aligned_stop(aligned_id)) stopped_ = true;
    if (observer_) observer_(p, step);
  }

  GenerationResult finish() {
    GenerationResult out = result_;
    out.terminated_by = stopped_ ? Termination::StopToken : Termination::MaxTokens;
    out.trace.counters.rng_draws = rng_.draws();
    return out;
  }

 private:
  PrefixTriple& prefixes() { return result_.final_prefixes; }
  TraceCounters& counters() { return result_.trace.counters; }

  const LanguageModel& pretrained_;
  const LanguageModel& aligned_;
  StrategyConfig config_;
  const StepObserver& observer_;
  VocabularyBridge to_aligned_;
  VocabularyBridge to_pretrained_;
  Rng rng_;
  std::vector<TokenId> stops_;
  GenerationResult result_;
  bool stopped_ = false;
};

enum class Pick { Sample, Greedy, EntropySwitch };

GenerationResult single_model(const LanguageModel& model, const TokenSequence& prefix, const StrategyConfig& config,
                              ModelRole role, Pick pick, const StepObserver& observer) {
  config.validate();
  const auto& vocab = model.vocabulary();
  if (vocab.empty()) throw std::invalid_argument("generation: empty vocabulary");
  vocab.check(prefix);
  const auto stops = resolve_stops(config, vocab);
  const double gamma = config.gamma.value_or(std::numeric_limits<double>::infinity());

  Rng rng(config.seed);
  GenerationResult result;
  auto& counters = result.trace.counters;
  auto& context = role == ModelRole::Pretrained ? result.final_prefixes.pretrained : result.final_prefixes.aligned;
  context = prefix;
  if (role == ModelRole::Pretrained) counters.pretrained_context_charges = 1;

  bool stopped = false;
  while (!stopped && result.tokens.size() < config.max_tokens) {
    const TokenDistribution dist = model.next_distribution(context);
    if (role == ModelRole::Pretrained) {
      ++counters.pretrained_calls;
    } else {
      ++counters.aligned_calls;
    }
    const double h = entropy(dist);
    bool greedy = pick == Pick::Greedy;
    if (pick == Pick::EntropySwitch) greedy = h > gamma;
    const TokenId token = greedy ? argmax(dist) : sample(apply_temperature(dist, config.temperature), rng);

    context.push_back(token);
    if (role != ModelRole::Pretrained) result.final_prefixes.classifier.push_back(token);
    const DecisionLabel decision =
        pick == Pick::EntropySwitch && greedy ? DecisionLabel::Yes : DecisionLabel::No;
    TraceStep step{result.tokens.size(), decision, false, role, h, token};
    result.tokens.push_back(token);
    result.trace.steps.push_back(step);
    if (role == ModelRole::Pretrained) {
      ++counters.pretrained_tokens;
    } else {
      ++counters.aligned_tokens;
    }
    stopped = contains(stops, token);
    if (observer) observer(result.final_prefixes, step);
  }
  result.terminated_by = stopped ? Termination::StopToken : Termination::MaxTokens;
  counters.rng_draws = rng.draws();
  return result;
}

GenerationResult routed(const LanguageModel& pretrained, const LanguageModel& aligned,
                        const CriticalTokenClassifier& classifier, PrefixTriple prefixes, const StrategyConfig& config,
                        const StepObserver& observer, std::optional<double> mixing_ratio) {
  TwoModelSession s(pretrained, aligned, std::move(prefixes), config, observer, mixing_ratio.has_value());

  // The critical-path token for a Yes decision, given the aligned
  // distribution when it is already known.
  auto critical_token = [&](const std::optional<TokenDistribution>& aligned_dist) -> std::pair<TokenId, ModelRole> {
    const TokenDistribution pp = s.pretrained_next();
    if (!mixing_ratio) return {argmax(pp), ModelRole::Pretrained};
    const TokenDistribution pa = aligned_dist ? *aligned_dist : s.aligned_next();
    const TokenDistribution parts[] = {pp, pa};
    return {argmax(mix(parts, MixtureWeights({*mixing_ratio, 1.0 - *mixing_ratio}))), ModelRole::Mixture};
  };

  if (classifier.mode() == ClassifierMode::CT) {
    while (!s.done()) {
      const TokenDistribution pa = s.aligned_next();
      const double h = entropy(pa);
      const TokenId tentative = s.draw(pa);
      const DecisionLabel d = s.classify(classifier, tentative);
      if (s.is_aligned_stop(tentative)) {
        // STOP from the aligned model ends generation regardless of d.
        s.accept(tentative, ModelRole::Aligned, d, true, h);
        break;
      }
      if (d == DecisionLabel::Yes) {
        const auto [token, source] = critical_token(pa);
        s.accept(token, source, d, true, h);
      } else {
        s.accept(tentative, ModelRole::Aligned, d, true, h);
      }
    }
  } else {
    while (!s.done()) {
      const DecisionLabel d = s.classify(classifier, std::nullopt);
      if (d == DecisionLabel::Yes) {
        const auto [token, source] = critical_token(std::nullopt);
        s.accept(token, source, d, true, kNotEvaluated);
      } else {
        const TokenDistribution pa = s.aligned_next();
        s.accept(s.draw(pa), ModelRole::Aligned, d, true, entropy(pa));
      }
    }
  }
  return s.finish();
}

}  // namespace

GenerationResult generate(const LanguageModel& model, const TokenSequence& prefix, const StrategyConfig& config,
                          const StepObserver& observer) {
  switch (config.strategy) {
    case Strategy::AlignedSampling:
      return single_model(model, prefix, config, ModelRole::Aligned, Pick::Sample, observer);
    case Strategy::AlignedGreedy:
      return single_model(model, prefix, config, ModelRole::Aligned, Pick::Greedy, observer);
    case Strategy::PretrainedSampling:
      return single_model(model, prefix, config, ModelRole::Pretrained, Pick::Sample, observer);
    case Strategy::PretrainedGreedy:
      return single_model(model, prefix, config, ModelRole::Pretrained, Pick::Greedy, observer);
    default:
      throw std::invalid_argument("generate: " + std::string(to_string(config.strategy)) +
                                  " is not a single-model strategy");
  }
}

GenerationResult model_cds(const LanguageModel& pretrained, const LanguageModel& aligned,
                           const CriticalTokenClassifier& classifier, PrefixTriple prefixes,
                           const StrategyConfig& config, const StepObserver& observer) {
  return routed(pretrained, aligned, classifier, std::move(prefixes), config, observer, std::nullopt);
}

GenerationResult soft_mixing_cds(const LanguageModel& pretrained, const LanguageModel& aligned,
                                 const CriticalTokenClassifier& router, PrefixTriple prefixes,
                                 const StrategyConfig& config, const StepObserver& observer) {
  config.validate();
  return routed(pretrained, aligned, router, std::move(prefixes), config, observer, config.lambda_mix);
}

GenerationResult entropy_cds(const LanguageModel& pretrained, const LanguageModel& aligned, PrefixTriple prefixes,
                             const StrategyConfig& config, const StepObserver& observer) {
  if (!config.gamma) throw std::invalid_argument("entropy_cds: gamma is required");
  TwoModelSession s(pretrained, aligned, std::move(prefixes), config, observer, false);
  const double gamma = *config.gamma;
  while (!s.done()) {
    const TokenDistribution pa = s.aligned_next();
    const double h = entropy(pa);
    if (h > gamma) {
      s.accept(argmax(s.pretrained_next()), ModelRole::Pretrained, DecisionLabel::Yes, false, h);
    } else {
      s.accept(s.draw(pa), ModelRole::Aligned, DecisionLabel::No, false, h);
    }
  }
  return s.finish();
}

GenerationResult self_cds(const LanguageModel& aligned, const TokenSequence& prefix, const StrategyConfig& config,
                          const StepObserver& observer) {
  if (!config.gamma) throw std::invalid_argument("self_cds: gamma is required");
  return single_model(aligned, prefix, config, ModelRole::Aligned, Pick::EntropySwitch, observer);
}

}  // namespace cds
