#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "cds/classifier/classifier.hpp"
#include "cds/classifier/labels.hpp"

namespace cds {

struct FeatureTrainingConfig {
  ClassifierMode mode = ClassifierMode::CT;
  // Number of left-neighbour tokens featurized.
  std::size_t window = 1;
  double learning_rate = 1.0;
  std::size_t epochs = 200;
  std::uint64_t seed = 0;
};

// Binary log-linear model over sparse per-position features: token identity,
// casing, digit presence, sentence position, left neighbours and the previous
// label. Training uses gold previous labels; at inference the classifier's
// own previous predictions are fed back, left to right.
class FeatureClassifier final : public CriticalTokenClassifier {
 public:
  FeatureClassifier(ClassifierMode mode, std::size_t window, std::unordered_map<std::string, double> weights,
                    double bias);

  DecisionLabel decide(std::string_view question, std::span<const std::string> partial_response) const override;
  ClassifierMode mode() const override { return mode_; }

  // P(Yes) for the position decide() would judge.
  double probability_yes(std::span<const std::string> partial_response) const;

  std::size_t window() const { return window_; }
  const std::unordered_map<std::string, double>& weights() const { return weights_; }
  double bias() const { return bias_; }

  // Feature names for the label at `position` of `tokens`, given the label
  // of position-1. CT mode sees tokens[0..position], NT mode only
  // tokens[0..position).
  static std::vector<std::string> features(ClassifierMode mode, std::size_t window,
                                           std::span<const std::string> tokens, std::size_t position,
                                           DecisionLabel previous_label);

 private:
  double score(const std::vector<std::string>& feats) const;

  ClassifierMode mode_;
  std::size_t window_;
  std::unordered_map<std::string, double> weights_;
  double bias_;
};

struct TrainedClassifier {
  FeatureClassifier classifier;
  // Mean negative log-likelihood before training, then after each epoch.
  std::vector<double> losses;
};

// Minimizes the mean of -log p(label_n | prefix_n) over every labelled
// position by full-batch gradient descent with step halving, so the loss
// never increases between epochs. Throws std::invalid_argument for an empty
// set or when every label is the same.
TrainedClassifier train_feature_classifier(std::span<const CriticalTokenInstance> train,
                                           const FeatureTrainingConfig& config);

}  // namespace cds
