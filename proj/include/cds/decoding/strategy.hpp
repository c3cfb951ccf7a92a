#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cds/core/vocabulary.hpp"

namespace cds {

enum class Strategy {
  AlignedSampling,
  AlignedGreedy,
  PretrainedSampling,
  PretrainedGreedy,
  ModelCDS,
  EntropyCDS,
  SelfCDS,
  SoftMixingCDS,
};

inline constexpr Strategy kAllStrategies[] = {
    Strategy::AlignedSampling, Strategy::AlignedGreedy, Strategy::PretrainedSampling, Strategy::PretrainedGreedy,
    Strategy::ModelCDS,        Strategy::EntropyCDS,    Strategy::SelfCDS,            Strategy::SoftMixingCDS,
};

std::string_view to_string(Strategy strategy);
// Accepts the enumerator names, case-insensitively.
Strategy parse_strategy(std::string_view name);

bool uses_pretrained(Strategy strategy);
bool uses_aligned(Strategy strategy);
bool uses_classifier(Strategy strategy);

// Entropy thresholds (nats) per model family.
inline constexpr double kGammaLlama2 = 0.9;
inline constexpr double kGammaMistral = 1.3;
inline constexpr double kDefaultMixingRatio = 0.5;
inline constexpr std::size_t kDefaultMaxTokens = 256;
inline constexpr std::size_t kDefaultPretrainedShots = 5;

struct StrategyConfig {
  Strategy strategy = Strategy::AlignedSampling;
  double temperature = 1.0;
  // Required by EntropyCDS and SelfCDS.
  std::optional<double> gamma;
  // Weight of the pretrained distribution in SoftMixingCDS.
  double lambda_mix = kDefaultMixingRatio;
  std::size_t max_tokens = kDefaultMaxTokens;
  // Over the leading model's vocabulary; empty means its own stop set.
  std::vector<TokenId> stop_ids;
  std::uint64_t seed = 0;
  // Few-shot examples in the pretrained model's prefix (0..5).
  std::size_t shots = kDefaultPretrainedShots;
  // Experimental: move tokens between differing vocabularies by string.
  bool allow_vocabulary_bridge = false;

  // Throws std::invalid_argument for out-of-range or missing fields.
  void validate() const;
};

}  // namespace cds
