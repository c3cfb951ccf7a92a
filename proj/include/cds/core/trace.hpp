#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cds/core/vocabulary.hpp"

namespace cds {

enum class DecisionLabel : std::uint8_t { No = 0, Yes = 1 };

inline std::string_view to_string(DecisionLabel label) {
  return label == DecisionLabel::Yes ? "Yes" : "No";
}

// Which model produced an accepted token. Mixture marks tokens chosen from an
// interpolated distribution.
enum class ModelRole : std::uint8_t { Aligned, Pretrained, Mixture };

std::string_view to_string(ModelRole role);

// The three synchronized contexts of collaborative decoding. `classifier`
// holds the response tokens seen by the router (over the aligned vocabulary);
// `question` is the frame the router sees them in.
struct PrefixTriple {
  TokenSequence pretrained;
  TokenSequence aligned;
  TokenSequence classifier;
  std::string question;
};

struct TraceStep {
  std::size_t position = 0;
  DecisionLabel decision = DecisionLabel::No;
  // False when the step's routing did not involve a classifier call.
  bool classified = false;
  ModelRole source = ModelRole::Aligned;
  // Entropy (nats) of the leading model's distribution; NaN when the leading
  // model was not evaluated at this step.
  double aligned_entropy = 0.0;
  TokenId accepted_token = 0;
};

struct TraceCounters {
  std::size_t aligned_tokens = 0;
  std::size_t pretrained_tokens = 0;
  std::size_t mixture_tokens = 0;
  std::size_t classifier_calls = 0;
  std::size_t pretrained_context_charges = 0;
  // Forward passes per model.
  std::size_t aligned_calls = 0;
  std::size_t pretrained_calls = 0;
  std::uint64_t rng_draws = 0;
};

struct GenerationTrace {
  std::vector<TraceStep> steps;
  TraceCounters counters;

  std::size_t yes_decisions() const;
};

}  // namespace cds
