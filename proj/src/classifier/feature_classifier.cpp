#include "cds/classifier/feature_classifier.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "cds/classifier/heuristic.hpp"
#include "cds/core/rng.hpp"
#include "cds/core/text.hpp"

namespace cds {
namespace {

std::string shape(std::string_view token) {
  std::string out;
  for (char c : token) {
    const auto u = static_cast<unsigned char>(c);
    char cls = c;
    if (std::isupper(u)) {
      cls = 'X';
    } else if (std::islower(u)) {
      cls = 'x';
    } else if (std::isdigit(u)) {
      cls = 'd';
    }
    if (out.empty() || out.back() != cls) out += cls;
  }
  return out;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// -log p(y | z) for a logistic model.
double nll(double z, bool yes) {
  const double softplus = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
  return softplus - (yes ? z : 0.0);
}

struct Example {
  std::vector<std::size_t> features;
  bool yes = false;
};

double mean_loss(const std::vector<Example>& examples, const std::vector<double>& w, double b) {
  double total = 0.0;
  for (const auto& ex : examples) {
    double z = b;
    for (std::size_t f : ex.features) z += w[f];
    total += nll(z, ex.yes);
  }
  return total / static_cast<double>(examples.size());
}

}  // namespace

FeatureClassifier::FeatureClassifier(ClassifierMode mode, std::size_t window,
                                     std::unordered_map<std::string, double> weights, double bias)
    : mode_(mode), window_(window), weights_(std::move(weights)), bias_(bias) {}

std::vector<std::string> FeatureClassifier::features(ClassifierMode mode, std::size_t window,
                                                     std::span<const std::string> tokens, std::size_t position,
                                                     DecisionLabel previous_label) {
  std::vector<std::string> out;
  const bool sentence_start = position == 0 || ends_sentence(tokens[position - 1]);
  if (mode == ClassifierMode::CT) {
    const std::string& token = tokens[position];
    out.push_back("w=" + ascii_lower(token));
    out.push_back("shape=" + shape(token));
    if (has_digit(token)) out.emplace_back("digit");
    if (is_capitalized(token)) out.emplace_back(sentence_start ? "cap_start" : "cap_mid");
  }
  if (sentence_start) out.emplace_back("start");
  for (std::size_t j = 1; j <= window; ++j) {
    const std::string tag = "-" + std::to_string(j);
    if (position < j) {
      out.push_back("w" + tag + "=<s>");
      continue;
    }
    const std::string& left = tokens[position - j];
    out.push_back("w" + tag + "=" + ascii_lower(left));
    out.push_back("shape" + tag + "=" + shape(left));
  }
  out.push_back(std::string("prev=") + std::string(to_string(previous_label)));
  return out;
}

double FeatureClassifier::score(const std::vector<std::string>& feats) const {
  double z = bias_;
  for (const auto& f : feats) {
    if (auto it = weights_.find(f); it != weights_.end()) z += it->second;
  }
  return z;
}

double FeatureClassifier::probability_yes(std::span<const std::string> partial_response) const {
  // CT judges the last token; NT judges the position after the last token.
  if (mode_ == ClassifierMode::CT && partial_response.empty()) return 0.0;
  const std::size_t target = mode_ == ClassifierMode::CT ? partial_response.size() - 1 : partial_response.size();
  DecisionLabel previous = DecisionLabel::No;
  double p = 0.0;
  for (std::size_t i = 0; i <= target; ++i) {
    p = sigmoid(score(features(mode_, window_, partial_response, i, previous)));
    previous = p >= 0.5 ? DecisionLabel::Yes : DecisionLabel::No;
  }
  return p;
}

DecisionLabel FeatureClassifier::decide(std::string_view /*question*/,
                                        std::span<const std::string> partial_response) const {
  if (mode_ == ClassifierMode::CT && partial_response.empty()) return DecisionLabel::No;
  return probability_yes(partial_response) >= 0.5 ? DecisionLabel::Yes : DecisionLabel::No;
}

TrainedClassifier train_feature_classifier(std::span<const CriticalTokenInstance> train,
                                           const FeatureTrainingConfig& config) {
  if (train.empty()) throw std::invalid_argument("train_feature_classifier: empty training set");
  if (!(config.learning_rate > 0.0)) throw std::invalid_argument("train_feature_classifier: learning rate must be > 0");

  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::string> names;
  std::vector<Example> examples;
  std::size_t yes = 0;
  for (const auto& inst : train) {
    inst.validate();
    for (std::size_t i = 0; i < inst.tokens.size(); ++i) {
      const DecisionLabel previous = i == 0 ? DecisionLabel::No : inst.labels[i - 1];
      Example ex;
      ex.yes = inst.labels[i] == DecisionLabel::Yes;
      for (auto& f : FeatureClassifier::features(config.mode, config.window, inst.tokens, i, previous)) {
        auto [it, inserted] = index.emplace(f, names.size());
        if (inserted) names.push_back(std::move(f));
        ex.features.push_back(it->second);
      }
      yes += ex.yes ? 1 : 0;
      examples.push_back(std::move(ex));
    }
  }
  if (examples.empty()) throw std::invalid_argument("train_feature_classifier: no labelled tokens");
  if (yes == 0 || yes == examples.size()) {
    throw std::invalid_argument("train_feature_classifier: training labels are all one class");
  }

  Rng rng(config.seed);
  std::vector<double> w(names.size());
  for (double& v : w) v = (rng.uniform() - 0.5) * 0.02;
  double b = 0.0;

  const double n = static_cast<double>(examples.size());
  std::vector<double> losses{mean_loss(examples, w, b)};
  std::vector<double> grad(w.size());
  std::vector<double> candidate(w.size());
  double step = config.learning_rate;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (const auto& ex : examples) {
      double z = b;
      for (std::size_t f : ex.features) z += w[f];
      const double residual = sigmoid(z) - (ex.yes ? 1.0 : 0.0);
      grad_b += residual;
      for (std::size_t f : ex.features) grad[f] += residual;
    }
    const double current = losses.back();
    double next = current;
    for (int halving = 0; halving < 40; ++halving) {
      for (std::size_t f = 0; f < w.size(); ++f) candidate[f] = w[f] - step * grad[f] / n;
      const double candidate_b = b - step * grad_b / n;
      const double loss = mean_loss(examples, candidate, candidate_b);
      if (loss <= current) {
        w.swap(candidate);
        b = candidate_b;
        next = loss;
        break;
      }
      step *= 0.5;
    }
    losses.push_back(next);
  }

  std::unordered_map<std::string, double> weights;
  for (std::size_t f = 0; f < names.size(); ++f) weights.emplace(names[f], w[f]);
  return {FeatureClassifier(config.mode, config.window, std::move(weights), b), std::move(losses)};
}

}  // namespace cds
