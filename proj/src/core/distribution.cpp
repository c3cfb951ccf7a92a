#include "cds/core/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cds {
namespace {

void check_probabilities(std::span<const double> values, const char* what) {
  if (values.empty()) throw std::invalid_argument(std::string(what) + ": empty");
  double sum = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument(std::string(what) + ": entries must be finite and non-negative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > TokenDistribution::kSumTolerance) {
    throw std::invalid_argument(std::string(what) + ": entries sum to " + std::to_string(sum) + ", not 1");
  }
}

std::vector<double> scale_to_unit(std::vector<double> weights, const char* what) {
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument(std::string(what) + ": weights must be finite and non-negative");
    }
    sum += w;
  }
  if (!(sum > 0.0)) throw std::invalid_argument(std::string(what) + ": weights sum to zero");
  for (double& w : weights) w /= sum;
  return weights;
}

}  // namespace

TokenDistribution::TokenDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  check_probabilities(probs_, "distribution");
}

TokenDistribution TokenDistribution::normalized(std::vector<double> weights) {
  return TokenDistribution(scale_to_unit(std::move(weights), "distribution"));
}

TokenDistribution TokenDistribution::one_hot(std::size_t size, TokenId id) {
  if (id >= size) throw std::invalid_argument("one_hot: id out of range");
  std::vector<double> p(size, 0.0);
  p[id] = 1.0;
  return TokenDistribution(std::move(p));
}

TokenDistribution TokenDistribution::uniform(std::size_t size) {
  if (size == 0) throw std::invalid_argument("uniform: empty vocabulary");
  return TokenDistribution(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

MixtureWeights::MixtureWeights(std::vector<double> weights) : weights_(std::move(weights)) {
  check_probabilities(weights_, "mixture weights");
}

MixtureWeights MixtureWeights::normalized(std::vector<double> weights) {
  return MixtureWeights(scale_to_unit(std::move(weights), "mixture weights"));
}

TokenDistribution softmax_with_temperature(std::span<const double> logits, double temperature) {
  if (logits.empty()) throw std::invalid_argument("softmax: empty logits");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("softmax: temperature must be positive");
  }
  for (double l : logits) {
    if (!std::isfinite(l)) throw std::invalid_argument("softmax: non-finite logit");
  }
  const double max_logit = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp((logits[i] - max_logit) / temperature);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return TokenDistribution(std::move(p));
}

TokenDistribution apply_temperature(const TokenDistribution& dist, double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("temperature must be positive");
  }
  if (temperature == 1.0) return dist;
  auto probs = dist.probs();
  double max_log = -INFINITY;
  for (double p : probs) {
    if (p > 0.0) max_log = std::max(max_log, std::log(p));
  }
  std::vector<double> out(probs.size(), 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) {
      out[i] = std::exp((std::log(probs[i]) - max_log) / temperature);
      sum += out[i];
    }
  }
  for (double& v : out) v /= sum;
  return TokenDistribution(std::move(out));
}

double entropy(const TokenDistribution& dist) {
  double h = 0.0;
  for (double p : dist.probs()) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return std::max(h, 0.0);
}

TokenDistribution mix(std::span<const TokenDistribution> dists, const MixtureWeights& weights) {
  if (dists.size() != weights.size()) {
    throw std::invalid_argument("mix: " + std::to_string(dists.size()) + " distributions but " +
                                std::to_string(weights.size()) + " weights");
  }
  const std::size_t v = dists.front().size();
  for (const auto& d : dists) {
    if (d.size() != v) throw std::invalid_argument("mix: distributions over different vocabulary sizes");
  }
  std::vector<double> out(v, 0.0);
  for (std::size_t k = 0; k < dists.size(); ++k) {
    const double w = weights[k];
    auto p = dists[k].probs();
    for (std::size_t i = 0; i < v; ++i) out[i] += w * p[i];
  }
  return TokenDistribution(std::move(out));
}

TokenId sample(const TokenDistribution& dist, Rng& rng) {
  const double u = rng.uniform();
  auto probs = dist.probs();
  double cumulative = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last_nonzero = i;
    cumulative += probs[i];
    if (u < cumulative) return static_cast<TokenId>(i);
  }
  // Rounding left u above the accumulated mass.
  return static_cast<TokenId>(last_nonzero);
}

TokenId argmax(const TokenDistribution& dist) {
  auto probs = dist.probs();
  std::size_t best = 0;
  for (std::size_t i = 1; i < probs.size(); ++i) {
    if (probs[i] > probs[best]) best = i;
  }
  return static_cast<TokenId>(best);
}

}  // namespace cds
