#include "cds/decoding/strategy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cds/core/text.hpp"

namespace cds {

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::AlignedSampling:
      return "AlignedSampling";
    case Strategy::AlignedGreedy:
      return "AlignedGreedy";
    case Strategy::PretrainedSampling:
      return "PretrainedSampling";
    case Strategy::PretrainedGreedy:
      return "PretrainedGreedy";
    case Strategy::ModelCDS:
      return "ModelCDS";
    case Strategy::EntropyCDS:
      return "EntropyCDS";
    case Strategy::SelfCDS:
      return "SelfCDS";
    case Strategy::SoftMixingCDS:
      return "SoftMixingCDS";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  const std::string wanted = ascii_lower(name);
  for (Strategy s : kAllStrategies) {
    if (ascii_lower(to_string(s)) == wanted) return s;
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

bool uses_pretrained(Strategy s) {
  return s == Strategy::PretrainedSampling || s == Strategy::PretrainedGreedy || s == Strategy::ModelCDS ||
         s == Strategy::EntropyCDS || s == Strategy::SoftMixingCDS;
}

bool uses_aligned(Strategy s) { return s != Strategy::PretrainedSampling && s != Strategy::PretrainedGreedy; }

bool uses_classifier(Strategy s) { return s == Strategy::ModelCDS || s == Strategy::SoftMixingCDS; }

void StrategyConfig::validate() const {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("strategy config: temperature must be a positive finite number");
  }
  if ((strategy == Strategy::EntropyCDS || strategy == Strategy::SelfCDS) && !gamma) {
    throw std::invalid_argument("strategy config: " + std::string(to_string(strategy)) + " requires gamma");
  }
  if (gamma && std::isnan(*gamma)) throw std::invalid_argument("strategy config: gamma is NaN");
  if (!(lambda_mix >= 0.0 && lambda_mix <= 1.0)) {
    throw std::invalid_argument("strategy config: lambda_mix must lie in [0, 1]");
  }
  if (max_tokens == 0) throw std::invalid_argument("strategy config: max_tokens must be >= 1");
  if (shots > kDefaultPretrainedShots) throw std::invalid_argument("strategy config: shots must be in 0..5");
}

}  // namespace cds
