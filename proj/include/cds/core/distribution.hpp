#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cds/core/rng.hpp"
#include "cds/core/vocabulary.hpp"

namespace cds {

// Probability vector over a vocabulary. Entries are non-negative and sum to
// one within kSumTolerance; every constructor enforces this.
class TokenDistribution {
 public:
  static constexpr double kSumTolerance = 1e-9;

  explicit TokenDistribution(std::vector<double> probs);

  // Scales non-negative weights to sum to one.
  static TokenDistribution normalized(std::vector<double> weights);
  static TokenDistribution one_hot(std::size_t size, TokenId id);
  static TokenDistribution uniform(std::size_t size);

  std::size_t size() const { return probs_.size(); }
  double operator[](TokenId id) const { return probs_[id]; }
  std::span<const double> probs() const { return probs_; }

  friend bool operator==(const TokenDistribution&, const TokenDistribution&) = default;

 private:
  std::vector<double> probs_;
};

// Normalized per-model weights for a mixture.
class MixtureWeights {
 public:
  explicit MixtureWeights(std::vector<double> weights);
  static MixtureWeights normalized(std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t k) const { return weights_[k]; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// exp(logit / T) normalized. Throws std::invalid_argument on non-finite
// logits, T <= 0 or an empty vector.
TokenDistribution softmax_with_temperature(std::span<const double> logits, double temperature);

// Re-tempers a distribution: p_i^(1/T) renormalized. Zero entries stay zero.
// T == 1 returns the input unchanged.
TokenDistribution apply_temperature(const TokenDistribution& dist, double temperature);

// Shannon entropy in nats, 0 ln 0 = 0.
double entropy(const TokenDistribution& dist);

// Pointwise sum_k weights[k] * dists[k].
TokenDistribution mix(std::span<const TokenDistribution> dists, const MixtureWeights& weights);

// Inverse-CDF draw; consumes exactly one uniform from rng.
TokenId sample(const TokenDistribution& dist, Rng& rng);

// Highest-probability token, lowest id on ties.
TokenId argmax(const TokenDistribution& dist);

}  // namespace cds
